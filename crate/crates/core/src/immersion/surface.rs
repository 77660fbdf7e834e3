use alloc::format;
use alloc::vec::Vec;

use super::ambient::AmbientModel;
use super::hypersurface::{periodic_integral, FramePoint, Hypersurface};
use super::metric::DiagMetric;
use super::param::ParamFn;
use crate::error::{Error, Result};
use crate::math::{self, PI};
use crate::numerics::{integrate, with_fallible, Tolerance};

const AXIS_THRESHOLD: f64 = 1e-12;

/// How the profile of a [`RevolutionSurface`] closes up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ProfileKind {
    /// Periodic profile away from the axis, giving a torus.
    Closed,
    /// Profile running from one pole of the axis to the other.
    Capped,
}

/// Surface swept by rotating the profile `s ↦ (r(s), φ(s))` about the axis
/// of a 3-dimensional model.
#[derive(Debug, Clone, PartialEq)]
pub struct RevolutionSurface {
    r: ParamFn,
    phi: ParamFn,
    s0: f64,
    s1: f64,
    kind: ProfileKind,
    samples: usize,
    orientation: f64,
}

impl RevolutionSurface {
    /// A periodic profile on `[s0, s0 + period)`.
    pub fn closed(r: ParamFn, phi: ParamFn, s0: f64, period: f64, samples: usize) -> Result<Self> {
        if !(period > 0.0 && period.is_finite()) || samples < 8 {
            return Err(Error::geometry(format!(
                "closed profile needs a positive period and at least 8 samples (period {period}, samples {samples})"
            )));
        }
        let mut s = RevolutionSurface {
            r,
            phi,
            s0,
            s1: s0 + period,
            kind: ProfileKind::Closed,
            samples,
            orientation: 1.0,
        };
        let mut area = Vec::with_capacity(samples);
        for t in s.sample_params() {
            let r = s.r.jet(t)?;
            let p = s.phi.jet(t)?;
            area.push(0.5 * (r.v0 * p.v1 - p.v0 * r.v1));
        }
        let signed = crate::numerics::integrate_periodic(&area, period)?;
        if !(signed.abs() > 0.0) {
            return Err(Error::geometry("closed profile encloses no area"));
        }
        s.orientation = signed.signum();
        Ok(s)
    }

    /// A profile from `s0` to `s1` whose ends lie on the axis.
    pub fn capped(r: ParamFn, phi: ParamFn, s0: f64, s1: f64, samples: usize) -> Result<Self> {
        if !(s1 > s0) || samples < 2 {
            return Err(Error::geometry(format!(
                "capped profile needs s0 < s1 (got {s0}, {s1})"
            )));
        }
        let a = phi.jet(s0)?.v0;
        let b = phi.jet(s1)?.v0;
        let on_axis = |x: f64| x.abs() < 1e-9 || (x - PI).abs() < 1e-9;
        if !on_axis(a) || !on_axis(b) || (a - b).abs() < 1.0 {
            return Err(Error::geometry(format!(
                "capped profile must run between the poles φ = 0 and φ = π (got φ = {a} and {b})"
            )));
        }
        Ok(RevolutionSurface {
            r,
            phi,
            s0,
            s1,
            kind: ProfileKind::Capped,
            samples,
            orientation: if a < b { 1.0 } else { -1.0 },
        })
    }

    /// The distance sphere of radius `radius` about the pole.
    pub fn sphere(radius: f64, samples: usize) -> Result<Self> {
        Self::radial_graph(ParamFn::constant(radius), samples)
    }

    /// The surface `φ ↦ (ρ(φ), φ)` revolved about the axis.
    pub fn radial_graph(rho: ParamFn, samples: usize) -> Result<Self> {
        Self::capped(rho, ParamFn::identity(), 0.0, PI, samples)
    }

    /// Round torus of the flat model: tube radius `b` about a circle of
    /// radius `a` in the equatorial plane.
    pub fn euclidean_torus(a: f64, b: f64, samples: usize) -> Result<Self> {
        if !(a > b && b > 0.0) {
            return Err(Error::geometry(format!("torus needs a > b > 0 (got a = {a}, b = {b})")));
        }
        let r = ParamFn::parse(&format!("sqrt(({a:?} + {b:?}*cos(s))^2 + ({b:?}*sin(s))^2)"), "s")?;
        let phi = ParamFn::parse(&format!("pi/2 - atan({b:?}*sin(s)/({a:?} + {b:?}*cos(s)))"), "s")?;
        Self::closed(r, phi, 0.0, 2.0 * PI, samples)
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples.max(8);
        self
    }

    pub fn parameter_range(&self) -> (f64, f64) {
        (self.s0, self.s1)
    }

    fn sample_params(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.samples;
        let (s0, len) = (self.s0, self.s1 - self.s0);
        let capped = self.kind == ProfileKind::Capped;
        (0..n).map(move |i| {
            if capped {
                s0 + len * (i as f64 + 0.5) / n as f64
            } else {
                s0 + len * i as f64 / n as f64
            }
        })
    }

    fn check_closed(&self) -> Result<()> {
        let (a, b) = (self.s0, self.s1);
        for f in [&self.r, &self.phi] {
            let ja = f.jet(a)?;
            let jb = f.jet(b)?;
            if (ja.v0 - jb.v0).abs() > 1e-9 * (1.0 + ja.v0.abs()) || (ja.v1 - jb.v1).abs() > 1e-9 * (1.0 + ja.v1.abs())
            {
                return Err(Error::geometry("profile does not close up over one period"));
            }
        }
        Ok(())
    }
}

impl Hypersurface for RevolutionSurface {
    fn ambient_dim(&self) -> usize {
        3
    }

    fn validate(&self, amb: &AmbientModel) -> Result<()> {
        if amb.dim() != 3 {
            return Err(Error::geometry(format!(
                "revolution surfaces need a 3-dimensional ambient, got n = {}",
                amb.dim()
            )));
        }
        if self.kind == ProfileKind::Closed {
            self.check_closed()?;
        } else {
            for s in [self.s0, self.s1] {
                amb.check_radius(self.r.jet(s)?.v0, "surface pole")?;
            }
        }
        for s in self.sample_params() {
            self.frame(amb, s)?;
        }
        Ok(())
    }

    fn frame(&self, amb: &AmbientModel, s: f64) -> Result<FramePoint> {
        let rj = self.r.jet(s)?;
        let pj = self.phi.jet(s)?;
        let (r, phi) = (rj.v0, pj.v0);
        amb.check_radius(r, "revolution surface")?;
        let (sin_phi, cos_phi) = (math::sin(phi), math::cos(phi));
        if !(sin_phi > AXIS_THRESHOLD) {
            return Err(Error::geometry(format!(
                "profile reaches the axis at s = {s} (φ = {phi})"
            )));
        }
        let p = amb.warps(r)?;
        let (wa, dwa) = (p.ambient.v0, p.ambient.v1);
        let g = DiagMetric::spherical(wa, phi);

        let xs = [rj.v1, pj.v1, 0.0];
        let gss = g.dot(&xs, &xs);
        let len = math::sqrt(gss);
        if !(len > 1e-14 * (1.0 + r)) {
            return Err(Error::geometry(format!("profile is singular at s = {s}")));
        }
        let sg = self.orientation / len;
        let normal = [sg * wa * pj.v1, -sg * rj.v1 / wa, 0.0];

        let acc_s = [
            rj.v2 - wa * dwa * pj.v1 * pj.v1,
            pj.v2 + 2.0 * (dwa / wa) * rj.v1 * pj.v1,
            0.0,
        ];
        let acc_theta = [-wa * dwa * sin_phi * sin_phi, -sin_phi * cos_phi, 0.0];
        let kappa = g.dot(&acc_s, &normal) / gss + g.dot(&acc_theta, &normal) / g.component(2);
        let mean_curvature = [kappa * normal[0], kappa * normal[1], 0.0];

        let (w, dw) = (p.comparison.v0, p.comparison.v1);
        let tau = [w / dw, 0.0, 0.0];
        Ok(FramePoint {
            param: s,
            r,
            mean_curvature,
            normal,
            h: -kappa,
            h_norm: kappa.abs(),
            tau_dot_h: g.dot(&tau, &mean_curvature),
            tau_dot_nu: g.dot(&tau, &normal),
            tau_norm: (w / dw).abs(),
            weight: dw,
            density: 2.0 * PI * len * wa * sin_phi,
        })
    }

    fn sample_frames(&self, amb: &AmbientModel) -> Result<Vec<FramePoint>> {
        self.sample_params().map(|s| self.frame(amb, s)).collect()
    }

    fn integrate(&self, amb: &AmbientModel, f: &mut dyn FnMut(&FramePoint) -> Result<f64>) -> Result<f64> {
        match self.kind {
            ProfileKind::Closed => {
                periodic_integral(self.sample_params().map(|s| self.frame(amb, s)), self.s1 - self.s0, f)
            }
            ProfileKind::Capped => {
                let q = with_fallible(
                    |s| {
                        let p = self.frame(amb, s)?;
                        Ok::<f64, Error>(f(&p)? * p.density)
                    },
                    |g| integrate(g, self.s0, self.s1, &Tolerance::fine()),
                )?;
                Ok(q.value)
            }
        }
    }
}
