use alloc::format;
use alloc::string::String;

use super::ast::{BinOp, EvalError, Expr, Func};
use super::jet::Jet3;
use super::parse::{parse, ParseError};
use crate::error::{Error, Result};
use crate::math;

/// A positive warping function `w` on `(0, Λ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WarpFunction {
    expr: Expr,
    label: String,
    radius: f64,
}

impl WarpFunction {
    /// `radius` is `Λ`; pass `f64::INFINITY` for an unbounded model.
    pub fn new(expr: Expr, label: impl Into<String>, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::OutOfRange {
                what: "model radius",
                value: radius,
                range: "(0, inf]".into(),
            });
        }
        Ok(WarpFunction {
            expr,
            label: label.into(),
            radius,
        })
    }

    pub fn parse(text: &str, radius: f64) -> Result<Self> {
        let expr = parse(text).map_err(|e: ParseError| Error::Parse(e))?;
        WarpFunction::new(expr, text, radius)
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The model radius `Λ` (possibly infinite).
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Canonical source text of the expression in `r`.
    pub fn source(&self) -> String {
        format!("{}", self.expr.display("r"))
    }

    /// `(w, w', w'', w''')` at `r ∈ (0, Λ)`.
    pub fn eval_jet(&self, r: f64) -> Result<Jet3, EvalError> {
        if !(r > 0.0 && r < self.radius) {
            return Err(EvalError::Domain {
                x: r,
                lo: 0.0,
                hi: self.radius,
            });
        }
        self.expr.eval_jet(r)
    }

    /// Jet without the domain check; used for one-sided probes near `r = 0`
    /// and for evaluating slices of the model at its boundary.
    pub fn eval_jet_unchecked(&self, r: f64) -> Result<Jet3, EvalError> {
        self.expr.eval_jet(r)
    }

    pub fn value(&self, r: f64) -> Result<f64, EvalError> {
        self.eval_jet(r).map(|j| j.v0)
    }

    /// Compares the jet derivatives with fourth-order central differences
    /// of the value channel using step `h`.
    pub fn check_derivatives(&self, r: f64, h: f64) -> Result<DerivativeCheck> {
        if !(h > 0.0) || r - 3.0 * h <= 0.0 || r + 3.0 * h >= self.radius {
            return Err(Error::OutOfRange {
                what: "finite-difference stencil centre",
                value: r,
                range: format!("(3h, Λ-3h) with h = {h}"),
            });
        }
        let jet = self.eval_jet(r)?;
        let f = |k: f64| self.value(r + k * h);
        let (fm3, fm2, fm1, f0) = (f(-3.0)?, f(-2.0)?, f(-1.0)?, f(0.0)?);
        let (fp1, fp2, fp3) = (f(1.0)?, f(2.0)?, f(3.0)?);
        let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
        let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
        let d3 = (fm3 - 8.0 * fm2 + 13.0 * fm1 - 13.0 * fp1 + 8.0 * fp2 - fp3) / (8.0 * h * h * h);
        let scale = 1.0_f64.max(jet.v0.abs());
        let dev = |a: f64, b: f64| (a - b).abs() / scale.max(a.abs());
        let deviations = [dev(jet.v1, d1), dev(jet.v2, d2), dev(jet.v3, d3)];
        Ok(DerivativeCheck {
            r,
            h,
            jet,
            finite_differences: [d1, d2, d3],
            deviations,
            max_deviation: deviations.iter().copied().fold(0.0, f64::max),
        })
    }
}

/// Outcome of [`WarpFunction::check_derivatives`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DerivativeCheck {
    pub r: f64,
    pub h: f64,
    pub jet: Jet3,
    pub finite_differences: [f64; 3],
    /// Per-order deviation, normalised by `max(1, |w|, |jet derivative|)`.
    pub deviations: [f64; 3],
    pub max_deviation: f64,
}

/// Named warps: the constant-curvature space forms and the generalized
/// paraboloid `w(r) = asinh(2r)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Preset {
    Euclidean,
    /// Curvature `b < 0`.
    Hyperbolic(f64),
    /// Curvature `b > 0`.
    Spherical(f64),
    Paraboloid,
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::Euclidean => "euclidean",
            Preset::Hyperbolic(_) => "hyperbolic",
            Preset::Spherical(_) => "spherical",
            Preset::Paraboloid => "paraboloid",
        }
    }

    /// Parses `euclidean`, `hyperbolic`, `spherical`, `paraboloid`, with
    /// an optional `:b` suffix for the curvature (defaults `∓1`).
    pub fn from_spec(spec: &str) -> Result<Preset> {
        let (name, b) = match spec.split_once(':') {
            Some((n, b)) => {
                let b: f64 = b.trim().parse().map_err(|_| Error::OutOfRange {
                    what: "preset curvature",
                    value: f64::NAN,
                    range: format!("a number, got {b:?}"),
                })?;
                (n.trim(), Some(b))
            }
            None => (spec.trim(), None),
        };
        let preset = match name {
            "euclidean" => Preset::Euclidean,
            "hyperbolic" => Preset::Hyperbolic(b.unwrap_or(-1.0)),
            "spherical" => Preset::Spherical(b.unwrap_or(1.0)),
            "paraboloid" => Preset::Paraboloid,
            _ => {
                return Err(Error::OutOfRange {
                    what: "preset",
                    value: f64::NAN,
                    range: format!("one of euclidean|hyperbolic|spherical|paraboloid, got {name:?}"),
                })
            }
        };
        Ok(preset)
    }

    /// Constant sectional curvature, if the preset is a space form.
    pub fn curvature(&self) -> Option<f64> {
        match *self {
            Preset::Euclidean => Some(0.0),
            Preset::Hyperbolic(b) | Preset::Spherical(b) => Some(b),
            Preset::Paraboloid => None,
        }
    }

    pub fn warp(&self) -> Result<WarpFunction> {
        let scaled = |func: Func, k: f64| {
            if k == 1.0 {
                Expr::call(func, Expr::Var)
            } else {
                Expr::binary(
                    BinOp::Mul,
                    Expr::num(1.0 / k),
                    Expr::call(func, Expr::binary(BinOp::Mul, Expr::num(k), Expr::Var)),
                )
            }
        };
        let (expr, radius) = match *self {
            Preset::Euclidean => (Expr::Var, f64::INFINITY),
            Preset::Hyperbolic(b) => {
                if !(b < 0.0) {
                    return Err(wrong_sign(b, "b < 0"));
                }
                (scaled(Func::Sinh, math::sqrt(-b)), f64::INFINITY)
            }
            Preset::Spherical(b) => {
                if !(b > 0.0) {
                    return Err(wrong_sign(b, "b > 0"));
                }
                let k = math::sqrt(b);
                (scaled(Func::Sin, k), math::PI / k)
            }
            Preset::Paraboloid => (
                Expr::binary(
                    BinOp::Mul,
                    Expr::num(0.5),
                    Expr::call(Func::Asinh, Expr::binary(BinOp::Mul, Expr::num(2.0), Expr::Var)),
                ),
                f64::INFINITY,
            ),
        };
        let label = format!("{}", expr.display("r"));
        WarpFunction::new(expr, label, radius)
    }
}

fn wrong_sign(b: f64, range: &str) -> Error {
    Error::OutOfRange {
        what: "space-form curvature",
        value: b,
        range: range.into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn identity_warp_jet() {
        let w = WarpFunction::parse("r", f64::INFINITY).unwrap();
        assert_eq!(w.eval_jet(2.0).unwrap().to_array(), [2.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn sinh_jet_at_one() {
        let w = WarpFunction::parse("sinh(r)", f64::INFINITY).unwrap();
        let j = w.eval_jet(1.0).unwrap();
        let (s, c) = (1.1752011936438014, 1.5430806348152437);
        for (got, want) in j.to_array().into_iter().zip([s, c, s, c]) {
            assert!(close(got, want, 1e-15), "{got} vs {want}");
        }
    }

    #[test]
    fn sine_extremum() {
        let w = Preset::Spherical(1.0).warp().unwrap();
        let j = w.eval_jet(core::f64::consts::FRAC_PI_2).unwrap();
        assert!(close(j.v0, 1.0, 1e-15));
        assert!(close(j.v1, 0.0, 1e-15));
        assert!(close(j.v2, -1.0, 1e-15));
        assert!(close(j.v3, 0.0, 1e-15));
    }

    #[test]
    fn domain_errors() {
        let w = Preset::Spherical(1.0).warp().unwrap();
        assert!(matches!(w.eval_jet(0.0), Err(EvalError::Domain { .. })));
        assert!(matches!(w.eval_jet(-1.0), Err(EvalError::Domain { .. })));
        assert!(matches!(w.eval_jet(math::PI), Err(EvalError::Domain { .. })));
        let w = WarpFunction::parse("log(r-1)", f64::INFINITY).unwrap();
        assert!(matches!(w.eval_jet(0.5), Err(EvalError::NonFinite { op: "log", .. })));
        let w = WarpFunction::parse("(r-1)^0.5", f64::INFINITY).unwrap();
        assert!(matches!(w.eval_jet(0.5), Err(EvalError::NegativeBase { .. })));
        let w = WarpFunction::parse("(r-1)^2", f64::INFINITY).unwrap();
        assert!(close(w.value(0.5).unwrap(), 0.25, 1e-15));
    }

    #[test]
    fn preset_sources() {
        let e = Preset::Euclidean.warp().unwrap();
        assert_eq!(e.source(), "r");
        assert_eq!(e.radius(), f64::INFINITY);
        let s = Preset::Spherical(1.0).warp().unwrap();
        assert_eq!(s.source(), "sin(r)");
        assert!(close(s.radius(), math::PI, 0.0));
        let h = Preset::Hyperbolic(-1.0).warp().unwrap();
        assert_eq!(h.source(), "sinh(r)");
        assert_eq!(h.radius(), f64::INFINITY);
        let p = Preset::Paraboloid.warp().unwrap();
        assert_eq!(p.source(), "0.5*asinh(2.0*r)");
        let s4 = Preset::Spherical(4.0).warp().unwrap();
        assert!(close(s4.radius(), math::PI / 2.0, 1e-15));
        assert!(close(s4.value(0.3).unwrap(), math::sin(0.6) / 2.0, 1e-15));
    }

    #[test]
    fn wrong_sign_rejected() {
        assert!(Preset::Hyperbolic(1.0).warp().is_err());
        assert!(Preset::Spherical(-1.0).warp().is_err());
        assert!(Preset::Spherical(0.0).warp().is_err());
    }

    #[test]
    fn finite_difference_cross_check() {
        let w = WarpFunction::parse("sinh(r)", f64::INFINITY).unwrap();
        assert!(w.check_derivatives(1.0, 1e-3).unwrap().max_deviation < 1e-6);
        let w = WarpFunction::parse("0.5*asinh(2*r)", f64::INFINITY).unwrap();
        assert!(w.check_derivatives(0.5, 1e-3).unwrap().max_deviation < 1e-5);
        let w = WarpFunction::parse("r", f64::INFINITY).unwrap();
        let c = w.check_derivatives(0.75, 0.0078125).unwrap();
        assert_eq!(c.deviations[0], 0.0);
        assert!(w.check_derivatives(0.002, 1e-3).is_err());
    }
}
