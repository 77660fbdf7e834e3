//! Grid-sampled checks of the pointwise hypotheses placed on a warp.

use alloc::vec::Vec;

use super::{dk_product_form, ModelSpace, RadialGrid};
use crate::error::Result;

pub const DEFAULT_SMOOTHNESS_EPSILON: f64 = 1e-4;
pub const DEFAULT_SMOOTHNESS_TOL: f64 = 1e-6;

const SLACK_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Condition {
    Positivity,
    WPrimePositive,
    SmoothnessAtZero,
    FiberGeRadial,
    AleksandrovWeak,
    AleksandrovStrict,
    #[cfg_attr(feature = "serde", serde(rename = "dK_nonincreasing"))]
    DkNonincreasing,
    #[cfg_attr(feature = "serde", serde(rename = "dK_strictly_decreasing"))]
    DkStrictlyDecreasing,
    IsoRatioNonincreasing,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Positivity => "positivity",
            Condition::WPrimePositive => "w_prime_positive",
            Condition::SmoothnessAtZero => "smoothness_at_zero",
            Condition::FiberGeRadial => "fiber_ge_radial",
            Condition::AleksandrovWeak => "aleksandrov_weak",
            Condition::AleksandrovStrict => "aleksandrov_strict",
            Condition::DkNonincreasing => "dK_nonincreasing",
            Condition::DkStrictlyDecreasing => "dK_strictly_decreasing",
            Condition::IsoRatioNonincreasing => "iso_ratio_nonincreasing",
        }
    }
}

/// One grid point of a condition check. `margin` is the signed slack after
/// the round-off floor: non-negative (positive, for strict checks) passes.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConditionSample {
    pub r: f64,
    pub margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConditionReport {
    pub condition: Condition,
    pub samples: Vec<ConditionSample>,
    pub overall: bool,
}

impl ConditionReport {
    pub fn new(condition: Condition, samples: Vec<ConditionSample>) -> Self {
        let overall = samples.iter().all(|s| s.pass);
        ConditionReport {
            condition,
            samples,
            overall,
        }
    }

    /// Smallest margin and the `r` where it occurs.
    pub fn min_margin(&self) -> Option<(f64, f64)> {
        self.samples
            .iter()
            .filter(|s| !s.margin.is_nan())
            .fold(None, |acc: Option<(f64, f64)>, s| match acc {
                Some((m, _)) if m <= s.margin => acc,
                _ => Some((s.margin, s.r)),
            })
    }

    pub fn failures(&self) -> usize {
        self.samples.iter().filter(|s| !s.pass).count()
    }
}

/// The three quantities compared by the Aleksandrov-type hypothesis
/// `1/w² - (w'/w)² ≥ -w''/w ≥ -w'''/w'` and their slacks.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AleksandrovTerms {
    pub r: f64,
    pub fiber_term: f64,
    pub radial_term: f64,
    pub third_term: f64,
    /// `fiber_term - radial_term`.
    pub slack_first: f64,
    /// `radial_term - third_term`.
    pub slack_second: f64,
    pub floor_first: f64,
    pub floor_second: f64,
}

impl ModelSpace {
    fn sample_each(
        &self,
        condition: Condition,
        grid: &RadialGrid,
        mut f: impl FnMut(f64) -> Result<(f64, bool)>,
    ) -> Result<ConditionReport> {
        let samples = grid
            .points()
            .iter()
            .map(|&r| f(r).map(|(margin, pass)| ConditionSample { r, margin, pass }))
            .collect::<Result<Vec<_>>>()?;
        Ok(ConditionReport::new(condition, samples))
    }

    pub fn check_positivity(&self, grid: &RadialGrid) -> Result<ConditionReport> {
        self.sample_each(Condition::Positivity, grid, |r| {
            let w = self.warp().value(r)?;
            Ok((w, w > 0.0))
        })
    }

    pub fn check_w_prime_positive(&self, grid: &RadialGrid) -> Result<ConditionReport> {
        self.sample_each(Condition::WPrimePositive, grid, |r| {
            let j = self.jet(r)?;
            Ok((j.v1, j.v1 > 0.0))
        })
    }

    /// Checks `w(0) = 0`, `w'(0) = 1`, `w''(0) = 0` by linear extrapolation
    /// of the jets at `ε` and `2ε`. The three samples are reported at `r = 0`.
    pub fn check_smoothness(&self, eps: f64, tol: f64) -> Result<ConditionReport> {
        let a = self.jet(eps)?;
        let b = self.jet(2.0 * eps)?;
        let at_zero = |x: f64, y: f64| 2.0 * x - y;
        let devs = [
            at_zero(a.v0, b.v0).abs(),
            (at_zero(a.v1, b.v1) - 1.0).abs(),
            at_zero(a.v2, b.v2).abs(),
        ];
        let samples = devs
            .iter()
            .map(|&d| ConditionSample {
                r: 0.0,
                margin: tol - d,
                pass: d <= tol,
            })
            .collect();
        Ok(ConditionReport::new(Condition::SmoothnessAtZero, samples))
    }

    pub fn aleksandrov_terms(&self, r: f64) -> Result<AleksandrovTerms> {
        let j = self.jet(r)?;
        let inv_w2 = 1.0 / (j.v0 * j.v0);
        let eta = j.v1 / j.v0;
        let fiber_term = inv_w2 - eta * eta;
        let radial_term = -j.v2 / j.v0;
        let third_term = -j.v3 / j.v1;
        Ok(AleksandrovTerms {
            r,
            fiber_term,
            radial_term,
            third_term,
            slack_first: fiber_term - radial_term,
            slack_second: radial_term - third_term,
            floor_first: SLACK_FLOOR * (1.0 + inv_w2 + eta * eta + radial_term.abs()),
            floor_second: SLACK_FLOOR * (1.0 + radial_term.abs() + third_term.abs()),
        })
    }

    /// Weak form: both inequalities hold up to the floor. Strict form: the
    /// second must hold with margin above the floor. Grid points with
    /// `w' ≤ 0` fail with margin `w'`.
    pub fn check_aleksandrov(&self, grid: &RadialGrid, strict: bool) -> Result<ConditionReport> {
        let condition = if strict {
            Condition::AleksandrovStrict
        } else {
            Condition::AleksandrovWeak
        };
        self.sample_each(condition, grid, |r| {
            let j = self.jet(r)?;
            if !(j.v1 > 0.0) {
                return Ok((j.v1, false));
            }
            let t = self.aleksandrov_terms(r)?;
            let first = t.slack_first + t.floor_first;
            if strict {
                let second = t.slack_second - t.floor_second;
                Ok((first.min(second), first >= 0.0 && second > 0.0))
            } else {
                let second = t.slack_second + t.floor_second;
                Ok((first.min(second), first >= 0.0 && second >= 0.0))
            }
        })
    }

    pub fn check_fiber_vs_radial(&self, grid: &RadialGrid) -> Result<ConditionReport> {
        self.sample_each(Condition::FiberGeRadial, grid, |r| {
            let j = self.jet(r)?;
            let inv_w2 = 1.0 / (j.v0 * j.v0);
            let fiber = (1.0 - j.v1 * j.v1) * inv_w2;
            let radial = -j.v2 / j.v0;
            let eta = j.v1 / j.v0;
            let floor = SLACK_FLOOR * (1.0 + inv_w2 + eta * eta + radial.abs());
            let margin = fiber - radial + floor;
            Ok((margin, margin >= 0.0))
        })
    }

    /// Sign of `dK_w/dr` from the product form. Points with `w' ≤ 0` fail.
    pub fn check_dk_sign(&self, grid: &RadialGrid, strict: bool) -> Result<ConditionReport> {
        let condition = if strict {
            Condition::DkStrictlyDecreasing
        } else {
            Condition::DkNonincreasing
        };
        self.sample_each(condition, grid, |r| {
            let j = self.jet(r)?;
            if !(j.v1 > 0.0) {
                return Ok((j.v1, false));
            }
            let dk = dk_product_form(&j);
            let eta = j.v1 / j.v0;
            let floor = SLACK_FLOOR * (1.0 + eta.abs() * ((j.v3 / j.v1).abs() + (j.v2 / j.v0).abs()));
            if strict {
                let m = -dk - floor;
                Ok((m, m > 0.0))
            } else {
                let m = floor - dk;
                Ok((m, m >= 0.0))
            }
        })
    }

    /// The standard battery: positivity, `w' > 0`, smoothness at the centre,
    /// fiber ≥ radial curvature, weak Aleksandrov and non-increasing `K_w`;
    /// with `strict`, also the strict Aleksandrov and strictly decreasing
    /// `K_w` checks.
    pub fn check_all(&self, grid: &RadialGrid, strict: bool) -> Result<Vec<ConditionReport>> {
        let mut out = alloc::vec![
            self.check_positivity(grid)?,
            self.check_w_prime_positive(grid)?,
            self.check_smoothness(DEFAULT_SMOOTHNESS_EPSILON, DEFAULT_SMOOTHNESS_TOL)?,
            self.check_fiber_vs_radial(grid)?,
            self.check_aleksandrov(grid, false)?,
            self.check_dk_sign(grid, false)?,
        ];
        if strict {
            out.push(self.check_aleksandrov(grid, true)?);
            out.push(self.check_dk_sign(grid, true)?);
        }
        Ok(out)
    }
}
