use alloc::format;
use alloc::vec::Vec;

use super::ambient::AmbientModel;
use super::hypersurface::{periodic_integral, FramePoint, Hypersurface};
use super::metric::DiagMetric;
use super::param::ParamFn;
use crate::error::{Error, Result};
use crate::math::{self, PI};

/// A closed curve `t ↦ (r(t), θ(t))` in a 2-dimensional model.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedCurve {
    r: ParamFn,
    theta: ParamFn,
    t0: f64,
    period: f64,
    samples: usize,
    orientation: f64,
}

impl ClosedCurve {
    /// Builds the curve and fixes its orientation from the signed area it
    /// encloses in geodesic polar coordinates.
    pub fn new(r: ParamFn, theta: ParamFn, t0: f64, period: f64, samples: usize) -> Result<Self> {
        if !(period > 0.0 && period.is_finite()) {
            return Err(Error::geometry(format!("curve period {period} must be positive")));
        }
        if samples < 8 {
            return Err(Error::geometry(format!(
                "a closed curve needs at least 8 samples, got {samples}"
            )));
        }
        let mut curve = ClosedCurve {
            r,
            theta,
            t0,
            period,
            samples,
            orientation: 1.0,
        };
        let mut area = Vec::with_capacity(samples);
        for t in curve.sample_params() {
            let r = curve.r.jet(t)?;
            let th = curve.theta.jet(t)?;
            area.push(0.5 * r.v0 * r.v0 * th.v1);
        }
        let signed = crate::numerics::integrate_periodic(&area, period)?;
        if !(signed.abs() > 0.0) {
            return Err(Error::geometry("closed curve encloses no area"));
        }
        curve.orientation = signed.signum();
        Ok(curve)
    }

    /// The distance circle of radius `radius` about the pole.
    pub fn circle(radius: f64, samples: usize) -> Result<Self> {
        Self::radial_graph(ParamFn::constant(radius), samples)
    }

    /// The curve `θ ↦ (ρ(θ), θ)`.
    pub fn radial_graph(rho: ParamFn, samples: usize) -> Result<Self> {
        Self::new(rho, ParamFn::identity(), 0.0, 2.0 * PI, samples)
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples.max(8);
        self
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// `+1` when the curve runs counter-clockwise around what it bounds.
    pub fn orientation(&self) -> f64 {
        self.orientation
    }

    fn sample_params(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.samples;
        (0..n).map(move |i| self.t0 + self.period * i as f64 / n as f64)
    }

    fn check_closed(&self) -> Result<()> {
        let a = self.r.jet(self.t0)?;
        let b = self.r.jet(self.t0 + self.period)?;
        let ta = self.theta.jet(self.t0)?;
        let tb = self.theta.jet(self.t0 + self.period)?;
        let turns = (tb.v0 - ta.v0) / (2.0 * PI);
        let tol = 1e-9;
        if (a.v0 - b.v0).abs() > tol * (1.0 + a.v0.abs())
            || (a.v1 - b.v1).abs() > tol * (1.0 + a.v1.abs())
            || (turns - math::round(turns)).abs() > tol
        {
            return Err(Error::geometry("curve does not close up over one period"));
        }
        Ok(())
    }
}

impl Hypersurface for ClosedCurve {
    fn ambient_dim(&self) -> usize {
        2
    }

    fn validate(&self, amb: &AmbientModel) -> Result<()> {
        if amb.dim() != 2 {
            return Err(Error::geometry(format!(
                "closed curves need a 2-dimensional ambient, got n = {}",
                amb.dim()
            )));
        }
        self.check_closed()?;
        for t in self.sample_params() {
            self.frame(amb, t)?;
        }
        Ok(())
    }

    fn frame(&self, amb: &AmbientModel, t: f64) -> Result<FramePoint> {
        let rj = self.r.jet(t)?;
        let th = self.theta.jet(t)?;
        let r = rj.v0;
        amb.check_radius(r, "closed curve")?;
        let p = amb.warps(r)?;
        let (wa, dwa) = (p.ambient.v0, p.ambient.v1);
        let g = DiagMetric::polar(wa);

        let v = [rj.v1, th.v1, 0.0];
        let speed2 = g.dot(&v, &v);
        let speed = math::sqrt(speed2);
        if !(speed > 1e-14 * (1.0 + r)) {
            return Err(Error::geometry(format!(
                "closed curve has a singular parametrisation at t = {t}"
            )));
        }
        let acc = [
            rj.v2 - wa * dwa * th.v1 * th.v1,
            th.v2 + 2.0 * (dwa / wa) * rj.v1 * th.v1,
            0.0,
        ];
        let along = g.dot(&acc, &v) / speed2;
        let mean_curvature = [(acc[0] - along * v[0]) / speed2, (acc[1] - along * v[1]) / speed2, 0.0];
        let s = self.orientation / speed;
        let normal = [s * wa * th.v1, -s * rj.v1 / wa, 0.0];

        let (w, dw) = (p.comparison.v0, p.comparison.v1);
        let tau = [w / dw, 0.0, 0.0];
        Ok(FramePoint {
            param: t,
            r,
            mean_curvature,
            normal,
            h: -g.dot(&mean_curvature, &normal),
            h_norm: g.norm(&mean_curvature),
            tau_dot_h: g.dot(&tau, &mean_curvature),
            tau_dot_nu: g.dot(&tau, &normal),
            tau_norm: (w / dw).abs(),
            weight: dw,
            density: speed,
        })
    }

    fn sample_frames(&self, amb: &AmbientModel) -> Result<Vec<FramePoint>> {
        self.sample_params().map(|t| self.frame(amb, t)).collect()
    }

    fn integrate(&self, amb: &AmbientModel, f: &mut dyn FnMut(&FramePoint) -> Result<f64>) -> Result<f64> {
        periodic_integral(self.sample_params().map(|t| self.frame(amb, t)), self.period, f)
    }
}
