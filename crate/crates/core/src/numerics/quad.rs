use alloc::vec::Vec;

use super::{NumericsError, Tolerance};

/// Lower limit used in place of the model centre `r = 0`.
pub const CENTER_EPSILON: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct QuadResult {
    pub value: f64,
    /// Absolute error estimate, always non-negative.
    pub error_estimate: f64,
    pub evaluations: usize,
}

// Gauss–Kronrod 7/15 abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> Result<Panel, NumericsError> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut eval = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(NumericsError::NonFinite { x })
        }
    };
    let fc = eval(c)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_sum = WGK[7] * fc.abs();
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = h * x;
        let (f1, f2) = (eval(c - dx)?, eval(c + dx)?);
        kronrod += wk * (f1 + f2);
        abs_sum += wk * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * h,
        error: ((kronrod - gauss) * h).abs(),
        abs_value: abs_sum * h.abs(),
    })
}

/// Adaptive Gauss–Kronrod (7/15) quadrature of `f` over `[a, b]`.
///
/// The panel with the largest embedded error estimate is bisected until the
/// summed estimate meets the tolerance, or the error is at the round-off
/// floor of the integrand. Running out of panels is an error carrying the
/// partial result.
pub fn integrate(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: &Tolerance) -> Result<QuadResult, NumericsError> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(NumericsError::BadInterval { a, b });
    }
    let mut panels: Vec<Panel> = Vec::with_capacity(16);
    panels.push(gk15(&mut f, a, b)?);
    let mut evaluations = 15;
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let abs_value: f64 = panels.iter().map(|p| p.abs_value).sum();
        let roundoff = 50.0 * f64::EPSILON * abs_value;
        let result = QuadResult {
            value,
            error_estimate: error,
            evaluations,
        };
        if error <= tol.bound(value).max(roundoff) {
            return Ok(result);
        }
        if panels.len() >= tol.max_subdivisions {
            return Err(NumericsError::BudgetExhausted { partial: result });
        }
        let (worst, _) =
            panels.iter().enumerate().fold(
                (0, f64::NEG_INFINITY),
                |acc, (i, p)| {
                    if p.error > acc.1 {
                        (i, p.error)
                    } else {
                        acc
                    }
                },
            );
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) {
            return Err(NumericsError::BudgetExhausted { partial: result });
        }
        panels.push(gk15(&mut f, p.a, mid)?);
        panels.push(gk15(&mut f, mid, p.b)?);
        evaluations += 30;
    }
}

/// Integral over `(0, upper]` of an integrand that vanishes at the centre.
///
/// Integrates from [`CENTER_EPSILON`] and adds `ε·|f(ε)|` to the error
/// estimate as a bound on the omitted piece.
pub fn integrate_from_center(
    mut f: impl FnMut(f64) -> f64,
    upper: f64,
    tol: &Tolerance,
) -> Result<QuadResult, NumericsError> {
    if upper <= CENTER_EPSILON {
        return Err(NumericsError::BadInterval {
            a: CENTER_EPSILON,
            b: upper,
        });
    }
    let tail = f(CENTER_EPSILON);
    if !tail.is_finite() {
        return Err(NumericsError::NonFinite { x: CENTER_EPSILON });
    }
    let mut q = integrate(&mut f, CENTER_EPSILON, upper, tol)?;
    q.error_estimate += CENTER_EPSILON * tail.abs();
    q.evaluations += 1;
    Ok(q)
}

/// Trapezoid rule over one period of equally spaced samples.
pub fn integrate_periodic(samples: &[f64], period: f64) -> Result<f64, NumericsError> {
    const MIN_SAMPLES: usize = 8;
    if samples.len() < MIN_SAMPLES {
        return Err(NumericsError::TooFewSamples {
            needed: MIN_SAMPLES,
            got: samples.len(),
        });
    }
    let mut sum = 0.0;
    for (i, &s) in samples.iter().enumerate() {
        if !s.is_finite() {
            return Err(NumericsError::NonFinite {
                x: period * i as f64 / samples.len() as f64,
            });
        }
        sum += s;
    }
    Ok(sum * period / samples.len() as f64)
}
