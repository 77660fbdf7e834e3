use alloc::format;

use crate::error::{Error, Result};
use crate::expr::{Jet3, WarpFunction};
use crate::model::ModelSpace;

/// Ambient model `N = M_{w̃}^n` together with the comparison warp `w` that
/// defines `τ_w` and the weighted densities. Without an explicit
/// comparison the ambient warp is used, which is the equality regime.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientModel {
    model: ModelSpace,
    comparison: Option<WarpFunction>,
}

/// How the ambient radial curvature compares with the comparison model's
/// on a range of radii.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CurvatureRelation {
    /// Same warp: ambient and comparison coincide.
    Identical,
    /// `K_N ≤ K_w` everywhere sampled.
    AmbientBelow,
    /// `K_N ≥ K_w` everywhere sampled.
    AmbientAbove,
    Mixed,
}

/// Warp jets of the ambient (`w̃`) and comparison (`w`) models at one radius.
#[derive(Debug, Clone, Copy)]
pub struct WarpPair {
    pub ambient: Jet3,
    pub comparison: Jet3,
}

const RELATION_SAMPLES: usize = 64;

impl AmbientModel {
    pub fn new(model: ModelSpace) -> Self {
        AmbientModel {
            model,
            comparison: None,
        }
    }

    pub fn with_comparison(mut self, comparison: WarpFunction) -> Self {
        self.comparison = Some(comparison);
        self
    }

    pub fn model(&self) -> &ModelSpace {
        &self.model
    }

    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    pub fn comparison_warp(&self) -> &WarpFunction {
        self.comparison.as_ref().unwrap_or(self.model.warp())
    }

    pub fn has_distinct_comparison(&self) -> bool {
        self.comparison.as_ref().is_some_and(|c| c != self.model.warp())
    }

    /// The comparison warp as a model of the ambient's dimension.
    pub fn comparison_model(&self) -> Result<ModelSpace> {
        Ok(ModelSpace::new(self.dim(), self.comparison_warp().clone())?.with_tolerance(*self.model.tolerance()))
    }

    /// Largest radius where both warps are defined.
    pub fn max_radius(&self) -> f64 {
        self.model.radius().min(self.comparison_warp().radius())
    }

    pub fn warps(&self, r: f64) -> Result<WarpPair> {
        let ambient = self.model.jet(r)?;
        let comparison = match &self.comparison {
            Some(c) => c.eval_jet(r)?,
            None => ambient,
        };
        Ok(WarpPair { ambient, comparison })
    }

    pub(crate) fn check_radius(&self, r: f64, what: &str) -> Result<()> {
        if r > 0.0 && r < self.max_radius() && r.is_finite() {
            Ok(())
        } else {
            Err(Error::geometry(format!(
                "{what}: r = {r} leaves the open interval (0, {})",
                self.max_radius()
            )))
        }
    }

    /// Samples the two radial curvatures on `[r_lo, r_hi]`.
    pub fn curvature_relation(&self, r_lo: f64, r_hi: f64) -> Result<CurvatureRelation> {
        if !self.has_distinct_comparison() {
            return Ok(CurvatureRelation::Identical);
        }
        let (mut below, mut above, mut same_warp) = (true, true, true);
        for i in 0..RELATION_SAMPLES {
            let r = r_lo + (r_hi - r_lo) * i as f64 / (RELATION_SAMPLES - 1) as f64;
            let p = self.warps(r)?;
            let k_amb = -p.ambient.v2 / p.ambient.v0;
            let k_cmp = -p.comparison.v2 / p.comparison.v0;
            let floor = 1e-12 * (1.0 + k_amb.abs() + k_cmp.abs());
            below &= k_amb <= k_cmp + floor;
            above &= k_amb >= k_cmp - floor;
            let scale = 1.0 + p.ambient.v0.abs();
            same_warp &= (p.ambient.v0 - p.comparison.v0).abs() <= 1e-12 * scale
                && (p.ambient.v1 - p.comparison.v1).abs() <= 1e-12 * (1.0 + p.ambient.v1.abs());
        }
        Ok(match (same_warp, below, above) {
            (true, _, _) => CurvatureRelation::Identical,
            (false, true, _) => CurvatureRelation::AmbientBelow,
            (false, false, true) => CurvatureRelation::AmbientAbove,
            _ => CurvatureRelation::Mixed,
        })
    }
}
