use std::fs;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use warpgeo_core::immersion::{
    cmc_check, extrinsic_exhaustion_monotonicity, hk_functional, jellett_residual, minimal_isoperimetric_check,
    radius_isoperimetric_check, unuacol_check, AmbientModel, Expected, FramePoint, Hypersurface, Immersed,
    RadialGraphDomain, Resolution,
};
use warpgeo_core::{Preset, RadialGrid};

use super::emit;
use super::model::finish_csv;
use crate::args::{Check, Format, VerifyArgs};
use crate::cases::{Case, CaseOptions, Subject, Target};
use crate::error::{usage, CliError};
use crate::geometry::{GeometryFile, Object};
use crate::output::{fmt_f64, to_json, to_text};

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub check: &'static str,
    pub case: Option<String>,
    pub geometry: Option<GeometryFile>,
    #[serde(rename = "R")]
    pub r: f64,
    pub preset: String,
    pub dim: Option<usize>,
    pub seed: u64,
    pub count: usize,
    pub k: f64,
    pub expected: Option<String>,
    pub grid: Option<String>,
    pub boundary: usize,
    pub radial: usize,
}

/// Result of one check on one subject.
#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub subject: crate::cases::SubjectInfo,
    pub pass: bool,
    pub report: Value,
    #[serde(skip)]
    pub frames: Vec<FramePoint>,
    #[serde(skip)]
    pub k_rad: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub command: &'static str,
    pub config: VerifyConfig,
    pub items: Vec<Item>,
    pub pass: bool,
}

pub fn load_subjects(args: &VerifyArgs) -> Result<(Vec<Subject>, Option<GeometryFile>), CliError> {
    let resolution = Resolution {
        boundary: args.boundary,
        radial: args.radial,
    };
    if let Some(path) = &args.geometry {
        let text = fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.clone(),
            source,
        })?;
        let file = GeometryFile::from_json(&text)?;
        let g = file.build()?;
        let target = match g.object {
            Object::Domain(d) => Target::Domain(d),
            Object::Curve(c) => Target::Curve(c),
            Object::Surface(s) => Target::Surface(s),
        };
        let label = path
            .file_stem()
            .map_or_else(|| "geometry".to_string(), |s| s.to_string_lossy().into_owned());
        let mut subject = Subject::new(label, g.ambient, target);
        if let crate::geometry::Data::Expr(e) = &file.data {
            subject.info.rho = e.rho.clone();
        }
        return Ok((vec![subject], Some(file)));
    }
    let name = args.case.as_deref().ok_or_else(|| usage("pass --case or --geometry"))?;
    let case: Case = name.parse()?;
    let opts = CaseOptions {
        r: args.r,
        dim: args.dim,
        preset: Preset::from_spec(&args.preset)?,
        seed: args.seed,
        count: args.count,
        resolution,
    };
    Ok((case.subjects(&opts)?, None))
}

fn unsupported(check: Check, target: &Target) -> CliError {
    CliError::Unsupported {
        check: check.name(),
        what: target.describe().into(),
    }
}

fn domain_range(d: &RadialGraphDomain) -> Result<(f64, f64), CliError> {
    let (_, hi) = d.radial_range()?;
    Ok((1e-3 * hi, hi))
}

fn derive_expected(amb: &AmbientModel, range: (f64, f64)) -> Result<Expected, CliError> {
    let rel = amb.curvature_relation(range.0, range.1)?;
    Ok(Expected::from_relation(rel).unwrap_or(Expected::Equal))
}

fn frames_of(s: &dyn Hypersurface, amb: &AmbientModel) -> Result<(Vec<FramePoint>, Vec<f64>), CliError> {
    let frames = s.sample_frames(amb)?;
    let k = frames
        .iter()
        .map(|f| amb.model().radial_curvature(f.r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((frames, k))
}

/// Runs `check` on one subject.
pub fn run_item(check: Check, subject: &Subject, args: &VerifyArgs) -> Result<Item, CliError> {
    let amb = &subject.ambient;
    let expected: Option<Expected> = args.expected.as_deref().map(str::parse).transpose()?;
    let mut hyper_frames = None;
    let (pass, report) = match (check, &subject.target) {
        (Check::Jellett, Target::Domain(d)) => {
            let e = match expected {
                Some(e) => e,
                None => derive_expected(amb, domain_range(d)?)?,
            };
            let r = jellett_residual(Immersed::Domain(d), amb, e)?;
            (
                r.verdict == warpgeo_core::immersion::Verdict::Pass,
                serde_json::to_value(&r)?,
            )
        }
        (Check::Jellett | Check::Minkowski, t) => {
            let boundary;
            let s: &dyn Hypersurface = match t {
                Target::Domain(d) | Target::Bounded(d) => {
                    boundary = d.boundary()?;
                    boundary.as_hypersurface()
                }
                Target::Curve(c) => c,
                Target::Surface(s) => s,
                Target::Plane(_) => return Err(unsupported(check, t)),
            };
            s.validate(amb)?;
            let e = match expected {
                Some(e) => e,
                None => derive_expected(amb, s.radial_range(amb)?)?,
            };
            let r = jellett_residual(Immersed::Closed(s), amb, e)?;
            hyper_frames = Some(frames_of(s, amb)?);
            (
                r.verdict == warpgeo_core::immersion::Verdict::Pass,
                serde_json::to_value(&r)?,
            )
        }
        (Check::Cmc | Check::Hk, t) => {
            let boundary;
            let (s, dom): (&dyn Hypersurface, Option<&RadialGraphDomain>) = match t {
                Target::Domain(d) | Target::Bounded(d) => {
                    boundary = d.boundary()?;
                    (boundary.as_hypersurface(), Some(d))
                }
                Target::Curve(c) => (c, None),
                Target::Surface(s) => (s, None),
                Target::Plane(_) => return Err(unsupported(check, t)),
            };
            let out = if check == Check::Cmc {
                let r = cmc_check(s, dom, amb)?;
                (r.pass(), serde_json::to_value(&r)?)
            } else {
                let dom = dom.ok_or_else(|| unsupported(check, t))?;
                let r = hk_functional(s, dom, amb)?;
                (
                    r.verdict == warpgeo_core::immersion::Verdict::Pass,
                    serde_json::to_value(&r)?,
                )
            };
            hyper_frames = Some(frames_of(s, amb)?);
            out
        }
        (Check::Kiso | Check::Radius, Target::Domain(d) | Target::Bounded(d)) => {
            if check == Check::Kiso {
                let r = unuacol_check(d, amb, args.k)?;
                (
                    r.verdict == warpgeo_core::immersion::Verdict::Pass,
                    serde_json::to_value(&r)?,
                )
            } else {
                let r = radius_isoperimetric_check(d, amb)?;
                (r.pass, serde_json::to_value(&r)?)
            }
        }
        (Check::Monotonicity, Target::Plane(p)) => {
            let grid = match &args.grid {
                Some(g) => g.parse::<RadialGrid>()?,
                None => RadialGrid::linear(args.r / 20.0, args.r, 20),
            };
            let r = extrinsic_exhaustion_monotonicity(p, &grid)?;
            (r.nondecreasing && r.floor_ok, serde_json::to_value(&r)?)
        }
        (Check::Minimal, Target::Plane(p)) => {
            let r = minimal_isoperimetric_check(p, args.r)?;
            (r.pass, serde_json::to_value(&r)?)
        }
        (_, t) => return Err(unsupported(check, t)),
    };
    let (frames, k_rad) = hyper_frames.unwrap_or_default();
    Ok(Item {
        subject: subject.info.clone(),
        pass,
        report,
        frames,
        k_rad,
    })
}

pub fn verify(args: &VerifyArgs) -> Result<VerifyReport, CliError> {
    let (subjects, geometry) = load_subjects(args)?;
    let results: Vec<Result<Item, CliError>> = subjects.par_iter().map(|s| run_item(args.check, s, args)).collect();
    let items = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let pass = items.iter().all(|i| i.pass);
    Ok(VerifyReport {
        command: "verify",
        config: VerifyConfig {
            check: args.check.name(),
            case: args.case.clone(),
            geometry,
            r: args.r,
            preset: args.preset.clone(),
            dim: args.dim,
            seed: args.seed,
            count: args.count,
            k: args.k,
            expected: args.expected.clone(),
            grid: args.grid.clone(),
            boundary: args.boundary,
            radial: args.radial,
        },
        items,
        pass,
    })
}

pub fn frames_csv(report: &VerifyReport) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "item",
        "param",
        "r",
        "h",
        "h_norm",
        "tau_dot_h",
        "tau_dot_nu",
        "weight",
        "k_rad",
    ])?;
    for item in &report.items {
        for (f, k) in item.frames.iter().zip(&item.k_rad) {
            w.write_record([
                item.subject.label.clone(),
                fmt_f64(f.param),
                fmt_f64(f.r),
                fmt_f64(f.h),
                fmt_f64(f.h_norm),
                fmt_f64(f.tau_dot_h),
                fmt_f64(f.tau_dot_nu),
                fmt_f64(f.weight),
                fmt_f64(*k),
            ])?;
        }
    }
    finish_csv(w)
}

pub fn run(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<bool, CliError> {
    let report = verify(args)?;
    if let Some(path) = &args.csv {
        fs::write(path, frames_csv(&report)?)?;
    }
    let text = match args.out.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&report)?,
        Format::Csv => frames_csv(&report)?,
        Format::Text => {
            let mut s = format!(
                "verify {}: {}\n",
                report.config.check,
                if report.pass { "PASS" } else { "FAIL" }
            );
            for item in &report.items {
                s += &format!(
                    "\n[{}] {}\n",
                    item.subject.label,
                    if item.pass { "PASS" } else { "FAIL" }
                );
                s += &to_text(&json!({ "subject": item.subject, "report": item.report }), 16);
            }
            s
        }
    };
    emit(&args.out, &text, stdout)?;
    Ok(report.pass)
}
