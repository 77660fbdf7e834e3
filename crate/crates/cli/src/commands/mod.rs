pub mod model;
pub mod profile;
pub mod verify;

use std::fs;
use std::io::Write;

use serde::Serialize;
use warpgeo_core::{ModelSpace, Tolerance, WarpFunction};

use crate::args::{OutputArgs, ToleranceArgs, WarpArgs};
use crate::error::CliError;
use crate::geometry::parse_radius;
use crate::output::fmt_f64;

/// Sends a rendered report to `--output` or to `stdout`.
pub(crate) fn emit(out: &OutputArgs, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &out.output {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct WarpConfig {
    pub warp: String,
    pub dim: usize,
    pub radius: String,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ToleranceConfig {
    pub rel: f64,
    pub abs: f64,
    pub max_subdivisions: usize,
}

impl From<Tolerance> for ToleranceConfig {
    fn from(t: Tolerance) -> Self {
        ToleranceConfig {
            rel: t.rel,
            abs: t.abs,
            max_subdivisions: t.max_subdivisions,
        }
    }
}

pub(crate) fn build_model(
    w: &WarpArgs,
    t: &ToleranceArgs,
) -> Result<(ModelSpace, WarpConfig, ToleranceConfig), CliError> {
    let radius = parse_radius(&w.radius)?;
    let warp = WarpFunction::parse(&w.warp, radius)?;
    let base = Tolerance::fine();
    let tol = Tolerance::new(
        t.rel_tol.unwrap_or(base.rel),
        t.abs_tol.unwrap_or(base.abs),
        base.max_subdivisions,
    )
    .map_err(warpgeo_core::Error::from)?;
    let model = ModelSpace::new(w.dim, warp)?.with_tolerance(tol);
    let cfg = WarpConfig {
        warp: w.warp.clone(),
        dim: w.dim,
        radius: fmt_f64(radius),
    };
    Ok((model, cfg, tol.into()))
}
