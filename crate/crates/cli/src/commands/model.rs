use std::fmt::Write as _;
use std::io::Write;

use serde::Serialize;
use warpgeo_core::model::{Condition, ConditionReport};
use warpgeo_core::RadialGrid;

use super::{build_model, emit, ToleranceConfig, WarpConfig};
use crate::args::{Format, ModelCheckArgs};
use crate::error::{usage, CliError};
use crate::output::{fmt_f64, to_json};

#[derive(Serialize)]
struct GridConfig {
    spec: Option<String>,
    count: usize,
    min: f64,
    max: f64,
}

#[derive(Serialize)]
struct Config {
    #[serde(flatten)]
    warp: WarpConfig,
    strict: bool,
    grid: GridConfig,
    smoothness_epsilon: f64,
    smoothness_tolerance: f64,
    tolerance: ToleranceConfig,
}

#[derive(Serialize)]
struct ConditionSummary<'a> {
    condition: Condition,
    overall: bool,
    failures: usize,
    min_margin: Option<f64>,
    min_margin_at: Option<f64>,
    samples: &'a [warpgeo_core::model::ConditionSample],
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'static str,
    config: Config,
    conditions: Vec<ConditionSummary<'a>>,
    pass: bool,
}

fn summarise(r: &ConditionReport) -> ConditionSummary<'_> {
    let min = r.min_margin();
    ConditionSummary {
        condition: r.condition,
        overall: r.overall,
        failures: r.failures(),
        min_margin: min.map(|m| m.0),
        min_margin_at: min.map(|m| m.1),
        samples: &r.samples,
    }
}

pub fn run(args: &ModelCheckArgs, stdout: &mut dyn Write) -> Result<bool, CliError> {
    let (model, warp_cfg, tol) = build_model(&args.warp, &args.tol)?;
    let grid = match &args.grid {
        Some(spec) => spec.parse::<RadialGrid>()?,
        None => RadialGrid::default_for_radius(model.radius()),
    };
    if grid.is_empty() {
        return Err(usage("the radial grid is empty"));
    }
    let (gmin, gmax) = grid
        .points()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &r| (a.min(r), b.max(r)));
    if !(gmin > 0.0 && gmax < model.radius()) {
        return Err(usage(format!(
            "grid [{gmin}, {gmax}] must lie inside (0, {})",
            model.radius()
        )));
    }
    let mut reports = vec![
        model.check_positivity(&grid)?,
        model.check_w_prime_positive(&grid)?,
        model.check_smoothness(args.smooth_eps, args.smooth_tol)?,
        model.check_fiber_vs_radial(&grid)?,
        model.check_aleksandrov(&grid, false)?,
        model.check_dk_sign(&grid, false)?,
    ];
    if args.strict {
        reports.push(model.check_aleksandrov(&grid, true)?);
        reports.push(model.check_dk_sign(&grid, true)?);
    }
    let pass = reports.iter().all(|r| r.overall);
    let report = Report {
        command: "model check",
        config: Config {
            warp: warp_cfg,
            strict: args.strict,
            grid: GridConfig {
                spec: args.grid.clone(),
                count: grid.len(),
                min: gmin,
                max: gmax,
            },
            smoothness_epsilon: args.smooth_eps,
            smoothness_tolerance: args.smooth_tol,
            tolerance: tol,
        },
        conditions: reports.iter().map(summarise).collect(),
        pass,
    };
    let text = match args.out.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&report)?,
        Format::Text => render_text(&report),
        Format::Csv => render_csv(&reports)?,
    };
    emit(&args.out, &text, stdout)?;
    Ok(pass)
}

fn render_text(r: &Report<'_>) -> String {
    let mut s = String::new();
    let c = &r.config;
    let _ = writeln!(
        s,
        "model check: w(r) = {}, n = {}, radius = {}, grid {} points in [{}, {}]",
        c.warp.warp,
        c.warp.dim,
        c.warp.radius,
        c.grid.count,
        fmt_f64(c.grid.min),
        fmt_f64(c.grid.max)
    );
    for cond in &r.conditions {
        let margin = match (cond.min_margin, cond.min_margin_at) {
            (Some(m), Some(at)) => format!("min margin {} at r = {}", fmt_f64(m), fmt_f64(at)),
            _ => "no samples".into(),
        };
        let _ = writeln!(
            s,
            "{:<24} {}  {}  ({} of {} samples fail)",
            cond.condition.name(),
            if cond.overall { "PASS" } else { "FAIL" },
            margin,
            cond.failures,
            cond.samples.len()
        );
    }
    let _ = writeln!(s, "overall: {}", if r.pass { "PASS" } else { "FAIL" });
    s
}

fn render_csv(reports: &[ConditionReport]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["condition", "r", "margin", "pass"])?;
    for rep in reports {
        for s in &rep.samples {
            w.write_record([
                rep.condition.name(),
                &fmt_f64(s.r),
                &fmt_f64(s.margin),
                if s.pass { "true" } else { "false" },
            ])?;
        }
    }
    finish_csv(w)
}

pub(crate) fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Write(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 fields"))
}
