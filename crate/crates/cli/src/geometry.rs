//! Geometry files: a JSON description of an ambient and one object in it.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use warpgeo_core::expr::parse_in;
use warpgeo_core::immersion::{AmbientModel, ClosedCurve, ParamFn, RadialGraphDomain, Resolution, RevolutionSurface};
use warpgeo_core::interp::TrigSeries;
use warpgeo_core::{Error, ModelSpace, WarpFunction};

use crate::error::{usage, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    #[serde(rename = "radial_graph_2d")]
    RadialGraph2d,
    #[serde(rename = "radial_graph_3d_axisym")]
    RadialGraph3dAxisym,
    #[serde(rename = "closed_curve_2d")]
    ClosedCurve2d,
    RevolutionSurface,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RadiusSpec {
    Number(f64),
    Text(String),
}

impl Default for RadiusSpec {
    fn default() -> Self {
        RadiusSpec::Text("inf".into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WarpSpec {
    pub warp: String,
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default)]
    pub radius: RadiusSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Data {
    Expr(ExprData),
    Samples(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExprData {
    #[serde(default)]
    pub rho: Option<String>,
    #[serde(default)]
    pub r: Option<String>,
    #[serde(default)]
    pub theta: Option<String>,
    #[serde(default)]
    pub phi: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionSpec {
    #[serde(default = "default_boundary")]
    pub boundary: usize,
    #[serde(default = "default_radial")]
    pub radial: usize,
}

fn default_boundary() -> usize {
    Resolution::default().boundary
}

fn default_radial() -> usize {
    Resolution::default().radial
}

impl Default for ResolutionSpec {
    fn default() -> Self {
        ResolutionSpec {
            boundary: default_boundary(),
            radial: default_radial(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryFile {
    pub kind: Kind,
    pub ambient: WarpSpec,
    #[serde(default)]
    pub comparison: Option<WarpSpec>,
    pub data: Data,
    #[serde(default)]
    pub resolution: ResolutionSpec,
}

/// The object a geometry file describes.
#[derive(Debug, Clone)]
pub enum Object {
    Domain(RadialGraphDomain),
    Curve(ClosedCurve),
    Surface(RevolutionSurface),
}

#[derive(Debug, Clone)]
pub struct Geometry {
    pub ambient: AmbientModel,
    pub object: Object,
}

/// `"inf"`, or a constant expression such as `pi` or `3.5`.
pub fn parse_radius(text: &str) -> Result<f64, CliError> {
    let t = text.trim();
    if matches!(t, "inf" | "infinity" | "+inf") {
        return Ok(f64::INFINITY);
    }
    let e = parse_in(t, "r").map_err(Error::from)?;
    e.constant_value()
        .ok_or_else(|| usage(format!("radius {text:?} must be a constant or \"inf\"")))
}

fn radius_of(spec: &RadiusSpec) -> Result<f64, CliError> {
    match spec {
        RadiusSpec::Number(x) => Ok(*x),
        RadiusSpec::Text(t) => parse_radius(t),
    }
}

fn missing(what: &str, kind: Kind) -> CliError {
    usage(format!("data.expr needs {what} for {kind:?}"))
}

fn parse_fn(text: &str, vars: &[&str]) -> Result<ParamFn, CliError> {
    let mut last = None;
    for v in vars {
        match ParamFn::parse(text, v) {
            Ok(f) => return Ok(f),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one variable").into())
}

/// Checks that a sample column is uniformly spaced and returns its step.
fn uniform_step(ts: &[f64]) -> Result<f64, CliError> {
    if ts.len() < 8 {
        return Err(Error::Geometry(format!("need at least 8 samples, got {}", ts.len())).into());
    }
    let h = (ts[ts.len() - 1] - ts[0]) / (ts.len() - 1) as f64;
    let uniform = ts
        .windows(2)
        .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs().max(1.0));
    if h.is_nan() || h <= 0.0 || !uniform {
        return Err(Error::Geometry("samples must be increasing and uniformly spaced".into()).into());
    }
    Ok(h)
}

fn columns(rows: &[Vec<f64>], width: usize) -> Result<Vec<Vec<f64>>, CliError> {
    if let Some(bad) = rows.iter().position(|r| r.len() != width) {
        return Err(usage(format!(
            "sample row {bad} has {} entries, expected {width}",
            rows[bad].len()
        )));
    }
    Ok((0..width).map(|c| rows.iter().map(|r| r[c]).collect()).collect())
}

impl GeometryFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    fn dim(&self) -> usize {
        match self.kind {
            Kind::RadialGraph2d | Kind::ClosedCurve2d => 2,
            Kind::RadialGraph3dAxisym | Kind::RevolutionSurface => 3,
        }
    }

    pub fn build(&self) -> Result<Geometry, CliError> {
        let dim = self.dim();
        if let Some(d) = self.ambient.dim {
            if d != dim {
                return Err(Error::Geometry(format!(
                    "{:?} lives in dimension {dim}, but ambient.dim is {d}",
                    self.kind
                ))
                .into());
            }
        }
        let warp = WarpFunction::parse(&self.ambient.warp, radius_of(&self.ambient.radius)?)?;
        let mut ambient = AmbientModel::new(ModelSpace::new(dim, warp)?);
        if let Some(c) = &self.comparison {
            if c.dim.is_some_and(|d| d != dim) {
                return Err(Error::Geometry("comparison.dim differs from the ambient dimension".into()).into());
            }
            ambient = ambient.with_comparison(WarpFunction::parse(&c.warp, radius_of(&c.radius)?)?);
        }
        let res = Resolution {
            boundary: self.resolution.boundary,
            radial: self.resolution.radial,
        };
        let object = match &self.data {
            Data::Expr(e) => self.object_from_expr(e, res)?,
            Data::Samples(rows) => self.object_from_samples(rows, res)?,
        };
        Ok(Geometry { ambient, object })
    }

    fn object_from_expr(&self, e: &ExprData, res: Resolution) -> Result<Object, CliError> {
        let kind = self.kind;
        Ok(match kind {
            Kind::RadialGraph2d => {
                let rho = parse_fn(e.rho.as_deref().ok_or_else(|| missing("rho", kind))?, &["theta"])?;
                Object::Domain(RadialGraphDomain::new(2, rho, res)?)
            }
            Kind::RadialGraph3dAxisym => {
                let rho = parse_fn(e.rho.as_deref().ok_or_else(|| missing("rho", kind))?, &["phi"])?;
                Object::Domain(RadialGraphDomain::new(3, rho, res)?)
            }
            Kind::ClosedCurve2d => match (&e.rho, &e.r, &e.theta) {
                (Some(rho), None, None) => Object::Curve(ClosedCurve::radial_graph(
                    parse_fn(rho, &["t", "theta"])?,
                    res.boundary,
                )?),
                (None, Some(r), Some(th)) => Object::Curve(ClosedCurve::new(
                    parse_fn(r, &["t"])?,
                    parse_fn(th, &["t"])?,
                    0.0,
                    2.0 * PI,
                    res.boundary,
                )?),
                _ => return Err(missing("either rho or both r and theta", kind)),
            },
            Kind::RevolutionSurface => match (&e.rho, &e.r, &e.phi) {
                (Some(rho), None, None) => Object::Surface(RevolutionSurface::radial_graph(
                    parse_fn(rho, &["phi", "s"])?,
                    res.boundary,
                )?),
                (None, Some(r), Some(phi)) => Object::Surface(RevolutionSurface::closed(
                    parse_fn(r, &["s"])?,
                    parse_fn(phi, &["s"])?,
                    0.0,
                    2.0 * PI,
                    res.boundary,
                )?),
                _ => return Err(missing("either rho or both r and phi", kind)),
            },
        })
    }

    fn object_from_samples(&self, rows: &[Vec<f64>], res: Resolution) -> Result<Object, CliError> {
        let width = rows.first().map_or(0, Vec::len);
        Ok(match self.kind {
            Kind::RadialGraph2d | Kind::RadialGraph3dAxisym => {
                // Rows are (angle, ρ) or (t, r, angle) with t unused.
                let cols = columns(rows, width)?;
                let (angle, rho) = match width {
                    2 => (&cols[0], &cols[1]),
                    3 => (&cols[2], &cols[1]),
                    _ => return Err(usage("radial-graph samples need 2 or 3 columns")),
                };
                let h = uniform_step(angle)?;
                let dim = self.dim();
                let series = if dim == 2 {
                    let period = h * angle.len() as f64;
                    if (period - 2.0 * PI).abs() > 1e-9 {
                        return Err(Error::Geometry("2-d boundary samples must cover [0, 2π) uniformly".into()).into());
                    }
                    TrigSeries::from_samples(rho, angle[0], period)
                } else {
                    if angle[0].abs() > 1e-12 || (angle[angle.len() - 1] - PI).abs() > 1e-9 {
                        return Err(Error::Geometry(
                            "axisymmetric samples must span φ ∈ [0, π] including both poles".into(),
                        )
                        .into());
                    }
                    TrigSeries::even_on_half_period(rho)
                };
                Object::Domain(RadialGraphDomain::new(dim, ParamFn::Series(series), res)?)
            }
            Kind::ClosedCurve2d => {
                let cols = columns(rows, 3)?;
                let h = uniform_step(&cols[0])?;
                let period = h * cols[0].len() as f64;
                let t0 = cols[0][0];
                let r = TrigSeries::from_samples(&cols[1], t0, period);
                let (theta, _) = TrigSeries::from_angle_samples(&cols[2], t0, period);
                Object::Curve(ClosedCurve::new(
                    ParamFn::Series(r),
                    ParamFn::Series(theta),
                    t0,
                    period,
                    res.boundary,
                )?)
            }
            Kind::RevolutionSurface => {
                let cols = columns(rows, 3)?;
                let h = uniform_step(&cols[0])?;
                let period = h * cols[0].len() as f64;
                let t0 = cols[0][0];
                let touches_axis = cols[2].iter().any(|&p| p <= 1e-9 || p >= PI - 1e-9);
                if touches_axis {
                    return Err(Error::Geometry(
                        "sampled revolution profiles must be closed and avoid the axis".into(),
                    )
                    .into());
                }
                Object::Surface(RevolutionSurface::closed(
                    ParamFn::Series(TrigSeries::from_samples(&cols[1], t0, period)),
                    ParamFn::Series(TrigSeries::from_samples(&cols[2], t0, period)),
                    t0,
                    period,
                    res.boundary,
                )?)
            }
        })
    }
}
