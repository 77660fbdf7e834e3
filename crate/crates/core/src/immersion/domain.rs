use alloc::format;
use alloc::vec::Vec;

use super::ambient::AmbientModel;
use super::curve::ClosedCurve;
use super::hypersurface::{FramePoint, Hypersurface};
use super::metric::DiagMetric;
use super::param::{ParamFn, Resolution};
use super::surface::RevolutionSurface;
use crate::error::{Error, Result};
use crate::math::{self, PI};
use crate::numerics::{integrate, integrate_from_center, integrate_periodic, with_fallible, Tolerance, CENTER_EPSILON};

/// A domain star-shaped about the pole, `{r < ρ(angle)}`.
///
/// In two dimensions `ρ` is a `2π`-periodic function of `θ`; in three it is
/// a function of the polar angle `φ ∈ [0, π]`, rotationally symmetric
/// about the axis.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGraphDomain {
    dim: usize,
    rho: ParamFn,
    resolution: Resolution,
}

/// The boundary of a domain at one angle.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundaryPoint {
    pub angle: f64,
    pub rho: f64,
    /// Outward unit normal in `(∂r, ∂angle)` components.
    pub normal: [f64; 2],
    pub tau_dot_nu: f64,
    /// `w/w'` at `ρ`.
    pub tau_norm: f64,
    /// Comparison weight `w'(ρ)`.
    pub weight: f64,
    /// Boundary measure per unit angle, rotation already integrated out.
    pub density: f64,
}

/// Boundary hypersurface of a [`RadialGraphDomain`].
#[derive(Debug, Clone, PartialEq)]
pub enum Boundary {
    Curve(ClosedCurve),
    Surface(RevolutionSurface),
}

impl Boundary {
    pub fn as_hypersurface(&self) -> &dyn Hypersurface {
        match self {
            Boundary::Curve(c) => c,
            Boundary::Surface(s) => s,
        }
    }
}

impl RadialGraphDomain {
    pub fn new(dim: usize, rho: ParamFn, resolution: Resolution) -> Result<Self> {
        if !(dim == 2 || dim == 3) {
            return Err(Error::geometry(format!(
                "radial-graph domains exist for n = 2 and n = 3, not n = {dim}"
            )));
        }
        if resolution.boundary < 8 || resolution.radial == 0 {
            return Err(Error::geometry(format!(
                "resolution too coarse: {} boundary samples, {} radial panels",
                resolution.boundary, resolution.radial
            )));
        }
        Ok(RadialGraphDomain { dim, rho, resolution })
    }

    /// The geodesic ball of radius `radius`.
    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        Self::new(dim, ParamFn::constant(radius), Resolution::default())
    }

    pub fn with_resolution(mut self, resolution: Resolution) -> Self {
        self.resolution = resolution;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self) -> &ParamFn {
        &self.rho
    }

    pub fn resolution(&self) -> Resolution {
        self.resolution
    }

    /// The angles where the boundary is sampled.
    pub fn sample_angles(&self) -> Vec<f64> {
        let n = self.resolution.boundary;
        match self.dim {
            2 => (0..n).map(|i| 2.0 * PI * i as f64 / n as f64).collect(),
            _ => (0..=n).map(|i| PI * i as f64 / n as f64).collect(),
        }
    }

    pub fn validate(&self, amb: &AmbientModel) -> Result<()> {
        if amb.dim() != self.dim {
            return Err(Error::geometry(format!(
                "domain of dimension {} in an ambient of dimension {}",
                self.dim,
                amb.dim()
            )));
        }
        for a in self.sample_angles() {
            let j = self.rho.jet(a)?;
            if !j.is_finite() {
                return Err(Error::geometry(format!("ρ is not finite at angle {a}")));
            }
            amb.check_radius(j.v0, "boundary radius ρ")?;
        }
        let tol = |x: f64| 1e-9 * (1.0 + x.abs());
        if self.dim == 2 {
            let a = self.rho.jet(0.0)?;
            let b = self.rho.jet(2.0 * PI)?;
            if (a.v0 - b.v0).abs() > tol(a.v0) || (a.v1 - b.v1).abs() > tol(a.v1) {
                return Err(Error::geometry("ρ(θ) is not 2π-periodic"));
            }
        } else {
            for pole in [0.0, PI] {
                let j = self.rho.jet(pole)?;
                if j.v1.abs() > tol(j.v0) {
                    return Err(Error::geometry(format!(
                        "ρ'(φ) = {} at the pole φ = {pole}; the boundary would have a cone point",
                        j.v1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Smallest and largest sampled value of `ρ`.
    pub fn radial_range(&self) -> Result<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for a in self.sample_angles() {
            let r = self.rho.jet(a)?.v0;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        Ok((lo, hi))
    }

    /// `∫_0^R w'(r) w̃(r)^{n-1} dr`.
    fn radial_weight_integral(&self, amb: &AmbientModel, radius: f64) -> Result<f64> {
        if radius <= CENTER_EPSILON {
            return Ok(0.0);
        }
        let k = self.dim as i32 - 1;
        let tol = Tolerance::fine().with_max_subdivisions(self.resolution.radial);
        let q = with_fallible(
            |r| amb.warps(r).map(|p| p.comparison.v1 * math::powi(p.ambient.v0, k)),
            |g| integrate_from_center(g, radius, &tol),
        )?;
        Ok(q.value)
    }

    /// Integrates `f(angle)` against the angular measure: over `[0, 2π)` in
    /// two dimensions, and `2π ∫_0^π … dφ` in three.
    fn angular_integral(&self, mut f: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
        if self.dim == 2 {
            let mut values = Vec::with_capacity(self.resolution.boundary);
            for a in self.sample_angles() {
                values.push(f(a)?);
            }
            Ok(integrate_periodic(&values, 2.0 * PI)?)
        } else {
            let q = with_fallible(f, |g| integrate(g, 0.0, PI, &Tolerance::fine()))?;
            Ok(2.0 * PI * q.value)
        }
    }

    /// `μ_w(Ω) = ∫_Ω w'(r) dV` for the ambient volume element.
    pub fn weighted_volume(&self, amb: &AmbientModel) -> Result<f64> {
        self.validate(amb)?;
        self.angular_integral(|a| {
            let rho = self.rho.jet(a)?.v0;
            let inner = self.radial_weight_integral(amb, rho)?;
            Ok(if self.dim == 2 { inner } else { inner * math::sin(a) })
        })
    }

    /// Outward normal, `τ_w` pairing and boundary density at one angle.
    pub fn boundary_point(&self, amb: &AmbientModel, angle: f64) -> Result<BoundaryPoint> {
        let j = self.rho.jet(angle)?;
        let rho = j.v0;
        amb.check_radius(rho, "boundary radius ρ")?;
        let p = amb.warps(rho)?;
        let wa = p.ambient.v0;
        let g = if self.dim == 2 {
            DiagMetric::polar(wa)
        } else {
            DiagMetric::spherical(wa, angle)
        };
        // Tangent along the angle and the conormal that annihilates it.
        let tangent = [j.v1, 1.0, 0.0];
        let conormal = [1.0, -j.v1, 0.0];
        let raised = g.raise(&conormal);
        if !(g.norm(&raised) > 0.0) {
            return Err(Error::geometry(format!("degenerate boundary tangent at angle {angle}")));
        }
        let normal = g.unit(&raised);
        let line = g.norm(&tangent);
        let density = if self.dim == 2 {
            line
        } else {
            let rot = math::sqrt(g.component(2));
            2.0 * PI * line * rot
        };
        let (w, dw) = (p.comparison.v0, p.comparison.v1);
        let tau = [w / dw, 0.0, 0.0];
        Ok(BoundaryPoint {
            angle,
            rho,
            normal: [normal[0], normal[1]],
            tau_dot_nu: g.dot(&tau, &normal),
            tau_norm: (w / dw).abs(),
            weight: dw,
            density,
        })
    }

    fn boundary_integral(&self, amb: &AmbientModel, mut f: impl FnMut(&BoundaryPoint) -> f64) -> Result<f64> {
        self.validate(amb)?;
        if self.dim == 2 {
            self.angular_integral(|a| {
                let b = self.boundary_point(amb, a)?;
                Ok(f(&b) * b.density)
            })
        } else {
            // `density` already carries the 2π of the rotation.
            let v = self.angular_integral(|a| {
                let b = self.boundary_point(amb, a)?;
                Ok(f(&b) * b.density)
            })?;
            Ok(v / (2.0 * PI))
        }
    }

    /// `∫_∂Ω ⟨τ_w, ν⟩ dσ_w`.
    pub fn tau_pairing_boundary(&self, amb: &AmbientModel) -> Result<f64> {
        self.boundary_integral(amb, |b| b.tau_dot_nu * b.weight)
    }

    /// `σ_w(∂Ω) = ∫_∂Ω w' dA`.
    pub fn boundary_weighted_area(&self, amb: &AmbientModel) -> Result<f64> {
        self.boundary_integral(amb, |b| b.weight)
    }

    /// Largest `w/w'` over `0 < r ≤ max ρ`, with the radius attaining it.
    pub fn sup_tau(&self, amb: &AmbientModel) -> Result<(f64, f64)> {
        const COUNT: usize = 256;
        let (_, hi) = self.radial_range()?;
        let mut best = (0.0, 0.0);
        for i in 1..=COUNT {
            let r = hi * i as f64 / COUNT as f64;
            let t = tau_norm(amb, r)?;
            if t > best.0 {
                best = (t, r);
            }
        }
        Ok(best)
    }

    /// Largest `w/w'` over the sampled boundary, with the radius attaining it.
    pub fn boundary_sup_tau(&self, amb: &AmbientModel) -> Result<(f64, f64)> {
        let mut best = (0.0, 0.0);
        for a in self.sample_angles() {
            let r = self.rho.jet(a)?.v0;
            let t = tau_norm(amb, r)?;
            if t > best.0 {
                best = (t, r);
            }
        }
        Ok(best)
    }

    /// The boundary as a closed hypersurface, with one profile sample per
    /// boundary sample.
    pub fn boundary(&self) -> Result<Boundary> {
        let n = self.resolution.boundary;
        Ok(match self.dim {
            2 => Boundary::Curve(ClosedCurve::radial_graph(self.rho.clone(), n)?),
            _ => Boundary::Surface(RevolutionSurface::radial_graph(self.rho.clone(), n)?),
        })
    }

    /// Boundary frames at the sample angles, for reporting.
    pub fn boundary_frames(&self, amb: &AmbientModel) -> Result<Vec<FramePoint>> {
        self.boundary()?.as_hypersurface().sample_frames(amb)
    }
}

fn tau_norm(amb: &AmbientModel, r: f64) -> Result<f64> {
    let p = amb.warps(r)?;
    if !(p.comparison.v1 > 0.0) {
        return Err(Error::hypothesis(format!(
            "w'({r}) = {} is not positive, so τ_w is unbounded",
            p.comparison.v1
        )));
    }
    Ok(p.comparison.v0 / p.comparison.v1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{Preset, WarpFunction};
    use crate::model::ModelSpace;

    fn ambient(dim: usize, p: Preset) -> AmbientModel {
        AmbientModel::new(ModelSpace::new(dim, p.warp().unwrap()).unwrap())
    }

    #[test]
    fn unit_disk() {
        let amb = ambient(2, Preset::Euclidean);
        let d = RadialGraphDomain::ball(2, 1.0).unwrap();
        assert!((d.weighted_volume(&amb).unwrap() - PI).abs() < 1e-12);
        assert!((d.tau_pairing_boundary(&amb).unwrap() - 2.0 * PI).abs() < 1e-12);
        assert!((d.boundary_weighted_area(&amb).unwrap() - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn off_centre_polar_area() {
        let amb = ambient(2, Preset::Euclidean);
        let rho = ParamFn::parse("1 + 0.3*cos(theta)", "theta").unwrap();
        let d = RadialGraphDomain::new(2, rho, Resolution::default()).unwrap();
        let expected = PI * (1.0 + 0.3 * 0.3 / 2.0);
        assert!((d.weighted_volume(&amb).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn hyperbolic_ball_in_three_dimensions() {
        let amb = ambient(3, Preset::Hyperbolic(-1.0));
        let d = RadialGraphDomain::ball(3, 1.2).unwrap();
        let s = math::sinh(1.2);
        let expected = 4.0 * PI * s * s * s / 3.0;
        let mu = d.weighted_volume(&amb).unwrap();
        assert!((mu - expected).abs() < 1e-11 * expected);
        let model = amb.model().weighted_ball_volume(1.2).unwrap();
        assert!((mu - model).abs() < 1e-11 * expected);
        let boundary = d.tau_pairing_boundary(&amb).unwrap();
        assert!((boundary - 3.0 * expected).abs() < 1e-10 * expected);
    }

    #[test]
    fn geodesic_disk_pairing_is_twice_the_weighted_area() {
        for p in [
            Preset::Euclidean,
            Preset::Hyperbolic(-1.0),
            Preset::Spherical(1.0),
            Preset::Paraboloid,
        ] {
            let amb = ambient(2, p);
            let d = RadialGraphDomain::ball(2, 0.9).unwrap();
            let mu = d.weighted_volume(&amb).unwrap();
            let b = d.tau_pairing_boundary(&amb).unwrap();
            assert!((b - 2.0 * mu).abs() < 1e-11 * b, "{p:?}");
        }
    }

    #[test]
    fn boundary_integrals_agree_with_the_boundary_hypersurface() {
        let amb = ambient(3, Preset::Hyperbolic(-1.0));
        let rho = ParamFn::parse("1 + 0.2*cos(2*phi)", "phi").unwrap();
        let d = RadialGraphDomain::new(3, rho, Resolution::default()).unwrap();
        let direct = d.tau_pairing_boundary(&amb).unwrap();
        let b = d.boundary().unwrap();
        let via = b
            .as_hypersurface()
            .integrate(&amb, &mut |p| Ok(p.tau_dot_nu * p.weight))
            .unwrap();
        assert!((direct - via).abs() < 1e-10 * direct.abs());
    }

    #[test]
    fn rejects_boundary_outside_the_model() {
        let amb = AmbientModel::new(ModelSpace::new(2, WarpFunction::parse("sin(r)", PI).unwrap()).unwrap());
        let d = RadialGraphDomain::ball(2, 3.2).unwrap();
        assert!(matches!(d.weighted_volume(&amb), Err(Error::Geometry(_))));
        let cone =
            RadialGraphDomain::new(3, ParamFn::parse("1 + 0.1*phi", "phi").unwrap(), Resolution::default()).unwrap();
        assert!(matches!(
            cone.validate(&ambient(3, Preset::Euclidean)),
            Err(Error::Geometry(_))
        ));
    }
}
