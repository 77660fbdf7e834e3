use crate::error::Result;
use crate::expr::{parse_in, Expr, Jet3};
use crate::interp::TrigSeries;

/// A scalar function of a curve or profile parameter with jet access.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamFn {
    Expr(Expr),
    Series(TrigSeries),
}

impl ParamFn {
    pub fn parse(text: &str, var: &str) -> Result<ParamFn> {
        Ok(ParamFn::Expr(parse_in(text, var)?))
    }

    pub fn constant(c: f64) -> ParamFn {
        ParamFn::Expr(Expr::num(c))
    }

    /// The parameter itself.
    pub fn identity() -> ParamFn {
        ParamFn::Expr(Expr::Var)
    }

    pub fn jet(&self, t: f64) -> Result<Jet3> {
        match self {
            ParamFn::Expr(e) => Ok(e.eval_jet(t)?),
            ParamFn::Series(s) => Ok(s.eval_jet(t)),
        }
    }
}

/// Number of discretisation points used for boundaries and profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Resolution {
    /// Samples along periodic boundaries and profiles.
    pub boundary: usize,
    /// Panel budget of each adaptive radial integral.
    pub radial: usize,
}

impl Default for Resolution {
    fn default() -> Self {
        Resolution {
            boundary: 1024,
            radial: 512,
        }
    }
}
