//! One-dimensional quadrature and bracketed root finding.

mod quad;
mod root;

pub use quad::{integrate, integrate_from_center, integrate_periodic, QuadResult, CENTER_EPSILON};
pub use root::find_root_increasing;

/// Accuracy contract shared by the quadrature and root-finding kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_subdivisions: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-9,
            abs: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64, max_subdivisions: usize) -> Result<Self, NumericsError> {
        if !(rel > 0.0) || !(abs >= 0.0) || max_subdivisions == 0 {
            return Err(NumericsError::InvalidTolerance { rel, abs });
        }
        Ok(Tolerance {
            rel,
            abs,
            max_subdivisions,
        })
    }

    /// Tight setting used by the geometry integrals.
    pub fn fine() -> Self {
        Tolerance {
            rel: 1e-12,
            abs: 1e-15,
            max_subdivisions: 2000,
        }
    }

    pub fn with_max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n.max(1);
        self
    }

    pub(crate) fn bound(&self, scale: f64) -> f64 {
        self.abs.max(self.rel * scale.abs())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericsError {
    #[error("tolerance needs rel > 0 and abs >= 0 (got rel={rel}, abs={abs})")]
    InvalidTolerance { rel: f64, abs: f64 },
    #[error("integration interval [{a}, {b}] is empty or not finite")]
    BadInterval { a: f64, b: f64 },
    #[error("integrand is not finite at {x}")]
    NonFinite { x: f64 },
    /// The subdivision budget ran out before the tolerance was met. The
    /// partial estimate is attached so callers can decide what to do.
    #[error("subdivision budget exhausted: value {} with error estimate {}", partial.value, partial.error_estimate)]
    BudgetExhausted { partial: QuadResult },
    #[error("need at least {needed} periodic samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("target {target} is not bracketed by f(lo)={f_lo}, f(hi)={f_hi}")]
    NotBracketed { target: f64, f_lo: f64, f_hi: f64 },
    #[error("function is not increasing on the bracket (f({x}) = {fx} escapes [{f_lo}, {f_hi}])")]
    NonMonotone { x: f64, fx: f64, f_lo: f64, f_hi: f64 },
    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
}

/// Runs a quadrature routine over an integrand that can fail, reporting the
/// first integrand error instead of the resulting non-finite sample.
pub(crate) fn with_fallible<T, E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    run: impl FnOnce(&mut dyn FnMut(f64) -> f64) -> Result<T, NumericsError>,
) -> Result<T, crate::Error>
where
    E: Into<crate::Error>,
{
    let mut first: Option<E> = None;
    let result = run(&mut |x| match f(x) {
        Ok(v) => v,
        Err(e) => {
            first.get_or_insert(e);
            f64::NAN
        }
    });
    if let Some(e) = first {
        return Err(e.into());
    }
    result.map_err(crate::Error::from)
}
