use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::model::{ModelSpace, RadialGrid};
use crate::numerics::CENTER_EPSILON;
use crate::special::unit_ball_volume;

const SLACK: f64 = 1e-8;
const INF_SAMPLES: usize = 1024;

/// The totally geodesic plane through the pole of a model of dimension at
/// least 3. Its extrinsic balls are the intrinsic disks of the slice, a
/// 2-dimensional model with the same warp.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialPlane {
    slice: ModelSpace,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MonotonicitySample {
    pub radius: f64,
    pub mu_w: f64,
    pub f: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MonotonicityReport {
    pub m: usize,
    pub v_m: f64,
    /// `inf w'` over the sampled range.
    pub c: f64,
    pub samples: Vec<MonotonicitySample>,
    pub nondecreasing: bool,
    pub floor_ok: bool,
    pub floor_strict: bool,
    /// `max |f(R) − V_m|`.
    pub max_deviation_from_v_m: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MinimalIsoReport {
    pub m: usize,
    pub radius: f64,
    pub c: f64,
    pub mu_w: f64,
    pub boundary_area: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
    pub equality: bool,
}

impl RadialPlane {
    pub fn new(ambient: &ModelSpace) -> Result<Self> {
        if ambient.dim() < 3 {
            return Err(Error::geometry(format!(
                "a radial plane needs an ambient of dimension at least 3, got {}",
                ambient.dim()
            )));
        }
        let slice = ModelSpace::new(2, ambient.warp().clone())?.with_tolerance(*ambient.tolerance());
        Ok(RadialPlane { slice })
    }

    pub fn dim(&self) -> usize {
        2
    }

    pub fn slice(&self) -> &ModelSpace {
        &self.slice
    }

    fn check_radius(&self, radius: f64) -> Result<()> {
        if radius > CENTER_EPSILON && radius < self.slice.radius() && radius.is_finite() {
            Ok(())
        } else {
            Err(Error::geometry(format!(
                "extrinsic radius {radius} must lie in ({CENTER_EPSILON}, {})",
                self.slice.radius()
            )))
        }
    }

    /// `inf w'` over `(0, radius]`, sampled.
    pub fn inf_w_prime(&self, radius: f64) -> Result<f64> {
        self.check_radius(radius)?;
        let mut c = self.slice.jet(CENTER_EPSILON)?.v1;
        for i in 1..=INF_SAMPLES {
            let r = radius * i as f64 / INF_SAMPLES as f64;
            c = c.min(self.slice.jet(r)?.v1);
        }
        if !(c > 0.0) {
            return Err(Error::hypothesis(format!(
                "w' is not bounded below by a positive constant on (0, {radius}] (inf = {c})"
            )));
        }
        Ok(c)
    }

    /// `μ_w(D_R)`.
    pub fn disk_weighted_volume(&self, radius: f64) -> Result<f64> {
        self.check_radius(radius)?;
        self.slice.weighted_ball_volume(radius)
    }

    /// Length of `∂D_R`.
    pub fn boundary_area(&self, radius: f64) -> Result<f64> {
        self.check_radius(radius)?;
        self.slice.sphere_area(radius)
    }
}

/// Samples `f(R) = μ_w(D_R)/w(R)^m` on `grid` and checks that it is
/// nondecreasing and bounded below by `c·V_m`.
pub fn extrinsic_exhaustion_monotonicity(plane: &RadialPlane, grid: &RadialGrid) -> Result<MonotonicityReport> {
    let m = plane.dim();
    let v_m = unit_ball_volume(m);
    let points = grid.points();
    let r_max = points.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let c = plane.inf_w_prime(r_max)?;
    let mut samples = Vec::with_capacity(points.len());
    for &radius in points {
        let mu_w = plane.disk_weighted_volume(radius)?;
        let w = plane.slice.warp().value(radius)?;
        samples.push(MonotonicitySample {
            radius,
            mu_w,
            f: mu_w / math::powi(w, m as i32),
        });
    }
    let mut ordered = samples.clone();
    ordered.sort_by(|a, b| a.radius.total_cmp(&b.radius));
    let nondecreasing = ordered
        .windows(2)
        .all(|p| p[1].f >= p[0].f - SLACK * (1.0 + p[0].f.abs()));
    let floor = c * v_m;
    let min_f = samples.iter().map(|s| s.f).fold(f64::INFINITY, f64::min);
    let max_dev = samples.iter().map(|s| (s.f - v_m).abs()).fold(0.0, f64::max);
    Ok(MonotonicityReport {
        m,
        v_m,
        c,
        samples,
        nondecreasing,
        floor_ok: min_f >= floor - SLACK,
        floor_strict: min_f > floor + SLACK,
        max_deviation_from_v_m: max_dev,
    })
}

/// `c·m^m·V_m·μ_w(D_R)^{m−1}` against `A(∂D_R)^m`.
pub fn minimal_isoperimetric_check(plane: &RadialPlane, radius: f64) -> Result<MinimalIsoReport> {
    let m = plane.dim();
    let c = plane.inf_w_prime(radius)?;
    let mu_w = plane.disk_weighted_volume(radius)?;
    let boundary_area = plane.boundary_area(radius)?;
    let mi = m as i32;
    let lhs = c * math::powi(m as f64, mi) * unit_ball_volume(m) * math::powi(mu_w, mi - 1);
    let rhs = math::powi(boundary_area, mi);
    Ok(MinimalIsoReport {
        m,
        radius,
        c,
        mu_w,
        boundary_area,
        lhs,
        rhs,
        pass: lhs <= rhs * (1.0 + SLACK),
        equality: (lhs - rhs).abs() <= SLACK * rhs,
    })
}
