//! The builtin catalogue of verification cases.

use std::str::FromStr;

use serde::Serialize;
use warpgeo_core::immersion::{
    AmbientModel, ClosedCurve, ParamFn, RadialGraphDomain, RadialPlane, Resolution, RevolutionSurface,
};
use warpgeo_core::{ModelSpace, Preset};

use crate::error::{usage, CliError};
use crate::random::Perturbation;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Case {
    /// Geodesic ball `B_R` as a full-dimensional domain.
    Ball(Preset),
    /// Distance sphere `S_R`, bounding `B_R`.
    Sphere(Preset),
    /// Disk of radius `R` in the hyperbolic plane weighted by the flat warp.
    CrossModelDisk,
    /// Flat round torus, tube radius `R` about a circle of radius `2R`.
    EuclideanTorus,
    /// Seeded random radial graphs of mean radius `R`.
    PerturbedGraph,
    /// Totally geodesic plane through the pole.
    RadialPlane,
}

pub const CATALOGUE: &[&str] = &[
    "euclidean-ball",
    "hyperbolic-ball",
    "spherical-ball",
    "paraboloid-ball",
    "euclidean-sphere",
    "hyperbolic-sphere",
    "spherical-sphere",
    "paraboloid-sphere",
    "cross-model-disk",
    "euclidean-torus",
    "perturbed-graph",
    "radial-plane",
];

impl FromStr for Case {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let fixed = match s {
            "cross-model-disk" => Some(Case::CrossModelDisk),
            "euclidean-torus" => Some(Case::EuclideanTorus),
            "perturbed-graph" => Some(Case::PerturbedGraph),
            "radial-plane" => Some(Case::RadialPlane),
            _ => None,
        };
        if let Some(c) = fixed {
            return Ok(c);
        }
        let unknown = || usage(format!("unknown case {s:?}; known cases: {}", CATALOGUE.join(", ")));
        let (preset, shape) = s.rsplit_once('-').ok_or_else(unknown)?;
        let preset = Preset::from_spec(preset).map_err(|_| unknown())?;
        match shape {
            "ball" => Ok(Case::Ball(preset)),
            "sphere" => Ok(Case::Sphere(preset)),
            _ => Err(unknown()),
        }
    }
}

/// What a verifier runs on.
#[derive(Debug, Clone)]
pub enum Target {
    Domain(RadialGraphDomain),
    /// The boundary hypersurface of the domain is the object of interest.
    Bounded(RadialGraphDomain),
    Curve(ClosedCurve),
    Surface(RevolutionSurface),
    Plane(RadialPlane),
}

impl Target {
    pub fn describe(&self) -> &'static str {
        match self {
            Target::Domain(_) => "a radial-graph domain",
            Target::Bounded(_) => "a domain boundary",
            Target::Curve(_) => "a closed curve",
            Target::Surface(_) => "a revolution surface",
            Target::Plane(_) => "a radial plane",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SubjectInfo {
    pub label: String,
    pub warp: String,
    pub dim: usize,
    pub comparison: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<Perturbation>,
}

#[derive(Debug, Clone)]
pub struct Subject {
    pub info: SubjectInfo,
    pub ambient: AmbientModel,
    pub target: Target,
}

impl Subject {
    pub fn new(label: impl Into<String>, ambient: AmbientModel, target: Target) -> Self {
        let info = SubjectInfo {
            label: label.into(),
            warp: ambient.model().warp().source(),
            dim: ambient.dim(),
            comparison: ambient
                .has_distinct_comparison()
                .then(|| ambient.comparison_warp().source()),
            rho: None,
            perturbation: None,
        };
        Subject { info, ambient, target }
    }
}

#[derive(Debug, Clone)]
pub struct CaseOptions {
    pub r: f64,
    pub dim: Option<usize>,
    pub preset: Preset,
    pub seed: u64,
    pub count: usize,
    pub resolution: Resolution,
}

fn model(dim: usize, p: Preset) -> Result<AmbientModel, CliError> {
    Ok(AmbientModel::new(ModelSpace::new(dim, p.warp()?)?))
}

fn check_dim(dim: usize) -> Result<usize, CliError> {
    if dim == 2 || dim == 3 {
        Ok(dim)
    } else {
        Err(usage(format!(
            "immersed geometry is supported for n = 2 and n = 3, not {dim}"
        )))
    }
}

impl Case {
    pub fn subjects(&self, o: &CaseOptions) -> Result<Vec<Subject>, CliError> {
        let ball = |dim: usize| RadialGraphDomain::ball(dim, o.r).map(|d| d.with_resolution(o.resolution));
        Ok(match *self {
            Case::Ball(p) | Case::Sphere(p) => {
                let dim = check_dim(o.dim.unwrap_or(3))?;
                let d = ball(dim)?;
                let (kind, target) = match self {
                    Case::Ball(_) => ("ball", Target::Domain(d)),
                    _ => ("sphere", Target::Bounded(d)),
                };
                vec![Subject::new(format!("{}-{kind}", p.name()), model(dim, p)?, target)]
            }
            Case::CrossModelDisk => {
                let dim = check_dim(o.dim.unwrap_or(2))?;
                let amb = model(dim, Preset::Hyperbolic(-1.0))?.with_comparison(Preset::Euclidean.warp()?);
                vec![Subject::new("cross-model-disk", amb, Target::Domain(ball(dim)?))]
            }
            Case::EuclideanTorus => {
                let t = RevolutionSurface::euclidean_torus(2.0 * o.r, o.r, o.resolution.boundary)?;
                vec![Subject::new(
                    "euclidean-torus",
                    model(3, Preset::Euclidean)?,
                    Target::Surface(t),
                )]
            }
            Case::RadialPlane => {
                let dim = o.dim.unwrap_or(3);
                let amb = model(dim, o.preset)?;
                let plane = RadialPlane::new(amb.model())?;
                vec![Subject::new(
                    format!("{}-radial-plane", o.preset.name()),
                    amb,
                    Target::Plane(plane),
                )]
            }
            Case::PerturbedGraph => {
                let dim = check_dim(o.dim.unwrap_or(2))?;
                if o.count == 0 {
                    return Err(usage("--count must be at least 1"));
                }
                let amb = model(dim, o.preset)?;
                (0..o.count as u64)
                    .map(|i| {
                        let mut p = Perturbation::draw(o.seed, i);
                        let var = if dim == 2 {
                            "theta"
                        } else {
                            p = p.axisymmetric();
                            "phi"
                        };
                        let text = p.rho_text(o.r, var);
                        let d = RadialGraphDomain::new(dim, ParamFn::parse(&text, var)?, o.resolution)?;
                        let mut s = Subject::new(
                            format!("{}-perturbed-graph-{i}", o.preset.name()),
                            amb.clone(),
                            Target::Domain(d),
                        );
                        s.info.rho = Some(text);
                        s.info.perturbation = Some(p);
                        Ok(s)
                    })
                    .collect::<Result<_, CliError>>()?
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_names_parse() {
        for name in CATALOGUE {
            name.parse::<Case>().unwrap();
        }
        assert_eq!(
            "hyperbolic-ball".parse::<Case>().unwrap(),
            Case::Ball(Preset::Hyperbolic(-1.0))
        );
        assert!("hyperbolic-cube".parse::<Case>().is_err());
        assert!("torus".parse::<Case>().is_err());
    }
}
