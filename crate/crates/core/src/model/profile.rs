//! Isoperimetric profile bounds from geodesic balls.

use alloc::vec::Vec;

use super::{Condition, ConditionReport, ConditionSample, ModelSpace};
use crate::error::{Error, Result};

/// One row of the profile table at volume `v`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ProfilePoint {
    pub v: f64,
    /// Radius of the geodesic ball of volume `v`.
    pub rad: f64,
    /// `ω_{n-1} w(Rad(v))^{n-1}`, a lower bound for the boundary area of
    /// any region of volume `v` under the model's isoperimetric hypotheses.
    pub i_lower: f64,
    /// `i_lower / v`.
    pub iso_ratio: f64,
    /// `iso_ratio² / 4`, the Cheeger-type lower bound for `λ₁`.
    pub lambda1_lower: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ProfileTable {
    pub points: Vec<ProfilePoint>,
    /// Whether `iso_ratio` is non-increasing across the sampled volumes. The
    /// `λ₁` bound is only valid when this holds.
    pub iso_ratio_monotone: bool,
}

const MONOTONE_REL_SLACK: f64 = 1e-12;

impl ProfileTable {
    /// The monotonicity of `iso_ratio` as a condition report over `Rad(v)`.
    pub fn monotonicity_report(&self) -> ConditionReport {
        let samples = self
            .points
            .windows(2)
            .map(|w| {
                let margin = w[0].iso_ratio * (1.0 + MONOTONE_REL_SLACK) - w[1].iso_ratio;
                ConditionSample {
                    r: w[1].rad,
                    margin,
                    pass: margin >= 0.0,
                }
            })
            .collect();
        ConditionReport::new(Condition::IsoRatioNonincreasing, samples)
    }
}

impl ModelSpace {
    pub fn profile_point(&self, v: f64) -> Result<ProfilePoint> {
        let rad = self.rad_of_volume(v)?;
        let i_lower = self.sphere_area(rad)?;
        let iso_ratio = i_lower / v;
        Ok(ProfilePoint {
            v,
            rad,
            i_lower,
            iso_ratio,
            lambda1_lower: 0.25 * iso_ratio * iso_ratio,
        })
    }

    /// Profile rows at the volumes `v_max · i / samples`, `i = 1..=samples`.
    pub fn profile_table(&self, v_max: f64, samples: usize) -> Result<ProfileTable> {
        if samples < 2 {
            return Err(Error::OutOfRange {
                what: "profile samples",
                value: samples as f64,
                range: ">= 2".into(),
            });
        }
        let points = (1..=samples)
            .map(|i| self.profile_point(v_max * i as f64 / samples as f64))
            .collect::<Result<Vec<_>>>()?;
        let mut table = ProfileTable {
            points,
            iso_ratio_monotone: false,
        };
        table.iso_ratio_monotone = table.monotonicity_report().overall;
        Ok(table)
    }
}
