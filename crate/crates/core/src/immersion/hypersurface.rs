use alloc::vec::Vec;

use super::ambient::AmbientModel;
use crate::error::Result;

/// Geometry of a hypersurface at one parameter value.
///
/// Vector fields are given by their coordinate components in `(∂r, ∂θ)`
/// for curves and `(∂r, ∂φ, ∂θ)` for revolution surfaces.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FramePoint {
    pub param: f64,
    pub r: f64,
    /// Mean curvature vector `H`.
    pub mean_curvature: [f64; 3],
    /// Outward unit normal `ν`.
    pub normal: [f64; 3],
    /// Inward mean curvature `h = −⟨H, ν⟩`.
    pub h: f64,
    /// `|H|` in the ambient metric.
    pub h_norm: f64,
    pub tau_dot_h: f64,
    pub tau_dot_nu: f64,
    /// `|τ_w| = w/w'`.
    pub tau_norm: f64,
    /// Comparison weight `w'(r)`.
    pub weight: f64,
    /// Riemannian measure per unit parameter; for revolution surfaces the
    /// rotation angle is already integrated out.
    pub density: f64,
}

/// A closed hypersurface of a 2- or 3-dimensional model ambient.
pub trait Hypersurface {
    fn ambient_dim(&self) -> usize;

    fn dim(&self) -> usize {
        self.ambient_dim() - 1
    }

    /// Rejects the object if it leaves `(0, Λ)` or degenerates.
    fn validate(&self, amb: &AmbientModel) -> Result<()>;

    fn frame(&self, amb: &AmbientModel, param: f64) -> Result<FramePoint>;

    /// Frames at the uniform sample points of the parametrisation.
    fn sample_frames(&self, amb: &AmbientModel) -> Result<Vec<FramePoint>>;

    /// `∫ f dA` over the hypersurface in the ambient metric.
    fn integrate(&self, amb: &AmbientModel, f: &mut dyn FnMut(&FramePoint) -> Result<f64>) -> Result<f64>;

    /// `μ_w` of the hypersurface, `∫ w' dA`.
    fn weighted_measure(&self, amb: &AmbientModel) -> Result<f64> {
        self.integrate(amb, &mut |p| Ok(p.weight))
    }

    /// Smallest and largest sampled radius.
    fn radial_range(&self, amb: &AmbientModel) -> Result<(f64, f64)> {
        let frames = self.sample_frames(amb)?;
        Ok(frames.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.r), hi.max(p.r))
        }))
    }
}

/// Periodic trapezoid rule over `count` frames.
pub(crate) fn periodic_integral(
    frames: impl Iterator<Item = Result<FramePoint>>,
    period: f64,
    f: &mut dyn FnMut(&FramePoint) -> Result<f64>,
) -> Result<f64> {
    let mut values = Vec::new();
    for p in frames {
        let p = p?;
        values.push(f(&p)? * p.density);
    }
    Ok(crate::numerics::integrate_periodic(&values, period)?)
}
