//! Intrinsic geometry of a `w`-model space `M_w^n`.
//!
//! The metric is `dr² + w(r)² dΘ²` on `(0, Λ) × S^{n-1}`. Radial planes have
//! sectional curvature `-w''/w`, planes tangent to the distance spheres have
//! `(1 - w'²)/w²`, and each distance sphere `S_R` is umbilic with principal
//! curvatures `w'(R)/w(R)`.

mod conditions;
mod grid;
mod profile;

pub use conditions::{
    AleksandrovTerms, Condition, ConditionReport, ConditionSample, DEFAULT_SMOOTHNESS_EPSILON, DEFAULT_SMOOTHNESS_TOL,
};
pub use grid::RadialGrid;
pub use profile::{ProfilePoint, ProfileTable};

use alloc::format;

use crate::error::{Error, Result};
use crate::expr::{EvalError, Jet3, WarpFunction};
use crate::math;
use crate::numerics::{self, integrate_from_center, with_fallible, Tolerance, CENTER_EPSILON};
use crate::special;

/// A model space: dimension `n ≥ 2` and its warping function.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpace {
    dim: usize,
    warp: WarpFunction,
    tol: Tolerance,
}

/// Pointwise curvature data at distance `r` from the centre.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CurvatureSample {
    pub r: f64,
    pub k_rad: f64,
    pub k_fiber: f64,
    pub dk_rad_dr: f64,
    pub eta: f64,
}

impl ModelSpace {
    pub fn new(dim: usize, warp: WarpFunction) -> Result<Self> {
        if dim < 2 {
            return Err(Error::OutOfRange {
                what: "model dimension",
                value: dim as f64,
                range: "n >= 2".into(),
            });
        }
        Ok(ModelSpace {
            dim,
            warp,
            tol: Tolerance::fine(),
        })
    }

    /// Quadrature tolerance for volumes and areas.
    pub fn with_tolerance(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn warp(&self) -> &WarpFunction {
        &self.warp
    }

    pub fn radius(&self) -> f64 {
        self.warp.radius()
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    /// `ω_{n-1}`, the area of the unit `(n-1)`-sphere.
    pub fn omega(&self) -> f64 {
        special::unit_sphere_area(self.dim - 1)
    }

    pub fn jet(&self, r: f64) -> Result<Jet3, EvalError> {
        self.warp.eval_jet(r)
    }

    /// Radial sectional curvature `K_w(r) = -w''/w`.
    pub fn radial_curvature(&self, r: f64) -> Result<f64> {
        let j = self.jet(r)?;
        Ok(-j.v2 / j.v0)
    }

    /// Sectional curvature of planes tangent to the distance sphere,
    /// `(1 - w'²)/w²`.
    pub fn fiber_curvature(&self, r: f64) -> Result<f64> {
        let j = self.jet(r)?;
        Ok((1.0 - j.v1 * j.v1) / (j.v0 * j.v0))
    }

    /// `dK_w/dr` in the product form `(w'/w)(-w'''/w' + w''/w)`.
    pub fn radial_curvature_derivative(&self, r: f64) -> Result<f64> {
        let j = self.jet(r)?;
        Ok(dk_product_form(&j))
    }

    /// Mean-curvature function of distance spheres, `η_w = w'/w`.
    pub fn eta(&self, r: f64) -> Result<f64> {
        let j = self.jet(r)?;
        Ok(j.v1 / j.v0)
    }

    pub fn curvature_sample(&self, r: f64) -> Result<CurvatureSample> {
        let j = self.jet(r)?;
        Ok(CurvatureSample {
            r,
            k_rad: -j.v2 / j.v0,
            k_fiber: (1.0 - j.v1 * j.v1) / (j.v0 * j.v0),
            dk_rad_dr: dk_product_form(&j),
            eta: j.v1 / j.v0,
        })
    }

    /// Area of the distance sphere `S_R`, `ω_{n-1} w(R)^{n-1}`.
    pub fn sphere_area(&self, radius: f64) -> Result<f64> {
        let w = self.warp.value(radius)?;
        Ok(self.omega() * math::powi(w, self.dim as i32 - 1))
    }

    fn check_ball_radius(&self, radius: f64) -> Result<()> {
        if !(radius > 0.0 && radius <= self.radius()) || !radius.is_finite() {
            return Err(Error::OutOfRange {
                what: "ball radius",
                value: radius,
                range: format!("(0, {}]", self.radius()),
            });
        }
        Ok(())
    }

    /// `ω_{n-1} ∫_0^R f(t) dt` for an integrand built from the warp jet.
    fn radial_integral(&self, radius: f64, f: impl Fn(&Jet3) -> f64) -> Result<f64> {
        self.check_ball_radius(radius)?;
        if radius <= CENTER_EPSILON {
            return Ok(0.0);
        }
        let q = with_fallible(
            |t| self.warp.eval_jet(t).map(|j| f(&j)),
            |g| integrate_from_center(g, radius, &self.tol),
        )?;
        Ok(self.omega() * q.value)
    }

    /// Volume of the geodesic ball `B_R`, `ω_{n-1} ∫_0^R w^{n-1}`.
    pub fn ball_volume(&self, radius: f64) -> Result<f64> {
        let k = self.dim as i32 - 1;
        self.radial_integral(radius, |j| math::powi(j.v0, k))
    }

    /// `w`-weighted volume of `B_R`, `ω_{n-1} ∫_0^R w' w^{n-1}`.
    pub fn weighted_ball_volume(&self, radius: f64) -> Result<f64> {
        let k = self.dim as i32 - 1;
        self.radial_integral(radius, |j| j.v1 * math::powi(j.v0, k))
    }

    /// `F(t) = ∫_0^t w(s) ds`.
    pub fn warp_primitive(&self, t: f64) -> Result<f64> {
        self.check_ball_radius(t)?;
        if t <= CENTER_EPSILON {
            return Ok(0.0);
        }
        let q = with_fallible(|s| self.warp.value(s), |g| integrate_from_center(g, t, &self.tol))?;
        Ok(q.value)
    }

    /// `Rad(v)`: the radius of the geodesic ball of volume `v`.
    pub fn rad_of_volume(&self, volume: f64) -> Result<f64> {
        let lambda = self.radius();
        let hi = if lambda.is_finite() {
            let total = self.ball_volume(lambda)?;
            if !(volume > 0.0 && volume < total) {
                return Err(Error::OutOfRange {
                    what: "volume",
                    value: volume,
                    range: format!("(0, {total})"),
                });
            }
            lambda
        } else {
            if !(volume > 0.0) || !volume.is_finite() {
                return Err(Error::OutOfRange {
                    what: "volume",
                    value: volume,
                    range: "(0, inf)".into(),
                });
            }
            let mut hi = 1.0;
            let mut doublings = 0;
            while self.ball_volume(hi)? < volume {
                hi *= 2.0;
                doublings += 1;
                if doublings > 64 {
                    return Err(Error::OutOfRange {
                        what: "volume",
                        value: volume,
                        range: "reachable by a finite ball".into(),
                    });
                }
            }
            hi
        };
        let tol = Tolerance {
            rel: 1e-12,
            abs: 0.0,
            max_subdivisions: 500,
        };
        let mut first: Option<Error> = None;
        let r = numerics::find_root_increasing(
            |r| {
                if r <= CENTER_EPSILON {
                    return 0.0;
                }
                match self.ball_volume(r) {
                    Ok(v) => v,
                    Err(e) => {
                        first.get_or_insert(e);
                        f64::NAN
                    }
                }
            },
            volume,
            0.0,
            hi,
            &tol,
        );
        if let Some(e) = first {
            return Err(e);
        }
        Ok(r?)
    }
}

pub(crate) fn dk_product_form(j: &Jet3) -> f64 {
    if j.v1 != 0.0 {
        (j.v1 / j.v0) * (-j.v3 / j.v1 + j.v2 / j.v0)
    } else {
        -j.v3 / j.v0
    }
}
