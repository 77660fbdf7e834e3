use alloc::string::String;

use crate::expr::{EvalError, ParseError};
use crate::numerics::NumericsError;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Every failure the kernel can report.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    /// A geometry object failed validation before any integral ran.
    #[error("invalid geometry: {0}")]
    Geometry(String),
    /// A hypothesis a verifier relies on does not hold for the input.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    /// A scalar argument is outside its admissible range.
    #[error("{what} = {value} is out of range ({range})")]
    OutOfRange {
        what: &'static str,
        value: f64,
        range: String,
    },
}

impl Error {
    pub(crate) fn geometry(msg: impl Into<String>) -> Self {
        Error::Geometry(msg.into())
    }

    pub(crate) fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }
}
