use std::io::Write;

use serde::Serialize;
use warpgeo_core::model::ProfileTable;

use super::{build_model, emit, model::finish_csv, ToleranceConfig, WarpConfig};
use crate::args::{Format, ProfileArgs};
use crate::error::{usage, CliError};
use crate::geometry::parse_radius;
use crate::output::{fmt_f64, to_json};

pub const CSV_HEADER: [&str; 6] = [
    "v",
    "rad",
    "i_lower",
    "iso_ratio",
    "lambda1_lower",
    "iso_ratio_monotone_flag",
];

#[derive(Serialize)]
struct Config {
    #[serde(flatten)]
    warp: WarpConfig,
    vmax: f64,
    samples: usize,
    tolerance: ToleranceConfig,
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'static str,
    config: Config,
    table: &'a ProfileTable,
}

pub fn run(args: &ProfileArgs, stdout: &mut dyn Write) -> Result<bool, CliError> {
    let (model, warp_cfg, tol) = build_model(&args.warp, &args.tol)?;
    let vmax = parse_radius(&args.vmax)?;
    if !vmax.is_finite() {
        return Err(usage("--vmax must be finite"));
    }
    let table = model.profile_table(vmax, args.samples)?;
    let text = match args.out.format.unwrap_or(Format::Csv) {
        Format::Csv => render_csv(&table)?,
        Format::Json => to_json(&Report {
            command: "profile",
            config: Config {
                warp: warp_cfg,
                vmax,
                samples: args.samples,
                tolerance: tol,
            },
            table: &table,
        })?,
        Format::Text => {
            let mut s = render_csv(&table)?.replace(',', "  ");
            s += &format!("iso_ratio non-increasing: {}\n", table.iso_ratio_monotone);
            s
        }
    };
    emit(&args.out, &text, stdout)?;
    Ok(true)
}

fn render_csv(table: &ProfileTable) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    let flag = if table.iso_ratio_monotone { "true" } else { "false" };
    for p in &table.points {
        w.write_record([
            fmt_f64(p.v),
            fmt_f64(p.rad),
            fmt_f64(p.i_lower),
            fmt_f64(p.iso_ratio),
            fmt_f64(p.lambda1_lower),
            flag.to_string(),
        ])?;
    }
    finish_csv(w)
}
