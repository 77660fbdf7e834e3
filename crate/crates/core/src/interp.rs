//! Trigonometric interpolation of periodic samples.
//!
//! Sampled boundaries and profiles are turned into smooth functions with
//! exact derivatives by interpolating with a truncated Fourier series.

use alloc::vec::Vec;

use crate::expr::Jet3;
use crate::math::{self, PI};

/// Fourier interpolant of equally spaced samples over one period, plus an
/// optional linear drift (used for unwrapped angles).
#[derive(Debug, Clone, PartialEq)]
pub struct TrigSeries {
    /// `a_k` for `k = 0..=K`; `a_0` enters halved.
    cos: Vec<f64>,
    /// `b_k` for `k = 0..=K`; `b_0` is unused.
    sin: Vec<f64>,
    t0: f64,
    period: f64,
    slope: f64,
}

impl TrigSeries {
    /// Interpolates `values[j]` taken at `t0 + j·period/N`.
    pub fn from_samples(values: &[f64], t0: f64, period: f64) -> TrigSeries {
        let n = values.len();
        let cos_table: Vec<f64> = (0..n).map(|j| math::cos(2.0 * PI * j as f64 / n as f64)).collect();
        let sin_table: Vec<f64> = (0..n).map(|j| math::sin(2.0 * PI * j as f64 / n as f64)).collect();
        let kmax = n / 2;
        let mut cos = Vec::with_capacity(kmax + 1);
        let mut sin = Vec::with_capacity(kmax + 1);
        for k in 0..=kmax {
            let (mut a, mut b) = (0.0, 0.0);
            for (j, &y) in values.iter().enumerate() {
                let idx = (k * j) % n;
                a += y * cos_table[idx];
                b += y * sin_table[idx];
            }
            let mut scale = 2.0 / n as f64;
            if n.is_multiple_of(2) && k == kmax {
                // Nyquist mode: cosine only, counted once.
                scale /= 2.0;
                b = 0.0;
            }
            cos.push(a * scale);
            sin.push(b * scale);
        }
        TrigSeries {
            cos,
            sin,
            t0,
            period,
            slope: 0.0,
        }
    }

    /// Interpolant of an angle sampled with `2π` jumps: the samples are
    /// unwrapped, the net winding is removed as a linear drift and the
    /// periodic remainder is interpolated.
    pub fn from_angle_samples(values: &[f64], t0: f64, period: f64) -> (TrigSeries, i64) {
        let n = values.len();
        let mut unwrapped = Vec::with_capacity(n);
        let mut offset = 0.0;
        let mut prev = values.first().copied().unwrap_or(0.0);
        for &v in values {
            let mut x = v + offset;
            while x - prev > PI {
                x -= 2.0 * PI;
                offset -= 2.0 * PI;
            }
            while x - prev < -PI {
                x += 2.0 * PI;
                offset += 2.0 * PI;
            }
            unwrapped.push(x);
            prev = x;
        }
        // Closing step from the last sample back to the first.
        let mut close = values.first().copied().unwrap_or(0.0) + offset;
        while close - prev > PI {
            close -= 2.0 * PI;
        }
        while close - prev < -PI {
            close += 2.0 * PI;
        }
        let total = close - values.first().copied().unwrap_or(0.0);
        let winding = math::round(total / (2.0 * PI)) as i64;
        let slope = 2.0 * PI * winding as f64 / period;
        let residual: Vec<f64> = unwrapped
            .iter()
            .enumerate()
            .map(|(j, &x)| x - slope * (period * j as f64 / n as f64))
            .collect();
        let mut series = TrigSeries::from_samples(&residual, t0, period);
        series.slope = slope;
        (series, winding)
    }

    /// Samples on `[0, π]` including both endpoints, extended evenly about
    /// `0` and `π` to a `2π`-periodic function.
    pub fn even_on_half_period(values: &[f64]) -> TrigSeries {
        let m = values.len();
        let mut ext = Vec::with_capacity(2 * m.saturating_sub(1));
        ext.extend_from_slice(values);
        ext.extend(values[1..m.saturating_sub(1)].iter().rev());
        TrigSeries::from_samples(&ext, 0.0, 2.0 * PI)
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn eval_jet(&self, t: f64) -> Jet3 {
        let omega = 2.0 * PI / self.period;
        let tau = t - self.t0;
        let x = omega * tau;
        let (s1, c1) = (math::sin(x), math::cos(x));
        let (mut ck, mut sk) = (1.0, 0.0);
        let mut j = Jet3::new(0.5 * self.cos[0] + self.slope * tau, self.slope, 0.0, 0.0);
        for k in 1..self.cos.len() {
            let next_c = ck * c1 - sk * s1;
            sk = sk * c1 + ck * s1;
            ck = next_c;
            let (a, b) = (self.cos[k], self.sin[k]);
            let kw = k as f64 * omega;
            let (kw2, kw3) = (kw * kw, kw * kw * kw);
            j.v0 += a * ck + b * sk;
            j.v1 += kw * (b * ck - a * sk);
            j.v2 -= kw2 * (a * ck + b * sk);
            j.v3 -= kw3 * (b * ck - a * sk);
        }
        j
    }
}
