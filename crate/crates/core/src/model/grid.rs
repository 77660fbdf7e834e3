use alloc::format;
use alloc::vec::Vec;
use core::str::FromStr;

use crate::error::Error;
use crate::math;

/// Sample points in `r` at which pointwise hypotheses are checked.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RadialGrid {
    points: Vec<f64>,
}

impl RadialGrid {
    pub fn from_points(points: Vec<f64>) -> Self {
        RadialGrid { points }
    }

    /// `count` equally spaced points from `a` to `b` inclusive.
    pub fn linear(a: f64, b: f64, count: usize) -> Self {
        let points = match count {
            0 => Vec::new(),
            1 => alloc::vec![a],
            _ => (0..count)
                .map(|i| a + (b - a) * i as f64 / (count - 1) as f64)
                .collect(),
        };
        RadialGrid { points }
    }

    /// `count` logarithmically spaced points from `a` to `b` inclusive.
    pub fn logarithmic(a: f64, b: f64, count: usize) -> Self {
        let (la, lb) = (math::ln(a), math::ln(b));
        let mut g = RadialGrid::linear(la, lb, count);
        for p in &mut g.points {
            *p = math::exp(*p);
        }
        if let Some(first) = g.points.first_mut() {
            *first = a;
        }
        if count > 1 {
            if let Some(last) = g.points.last_mut() {
                *last = b;
            }
        }
        g
    }

    /// 256 logarithmic points in `[1e-3, min(Λ - 1e-3, 10)]`.
    pub fn default_for_radius(radius: f64) -> Self {
        let hi = if radius.is_finite() {
            (radius - 1e-3).min(10.0)
        } else {
            10.0
        };
        RadialGrid::logarithmic(1e-3, hi, 256)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl FromStr for RadialGrid {
    type Err = Error;

    /// `a:b:count` for a linear grid, `a:b:count:log` for a logarithmic one.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::OutOfRange {
            what: "grid spec",
            value: f64::NAN,
            range: format!("a:b:count[:log] with 0 < a < b and count >= 2, got {s:?}"),
        };
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(bad());
        }
        let a: f64 = parts[0].parse().map_err(|_| bad())?;
        let b: f64 = parts[1].parse().map_err(|_| bad())?;
        let count: usize = parts[2].parse().map_err(|_| bad())?;
        if !(a > 0.0 && a < b && b.is_finite()) || count < 2 {
            return Err(bad());
        }
        match parts.get(3) {
            None | Some(&"lin") => Ok(RadialGrid::linear(a, b, count)),
            Some(&"log") => Ok(RadialGrid::logarithmic(a, b, count)),
            Some(_) => Err(bad()),
        }
    }
}
