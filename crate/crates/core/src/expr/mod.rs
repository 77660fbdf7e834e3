//! The warp expression language and its jet evaluation.

mod ast;
mod jet;
mod parse;
mod warp;

pub use ast::{BinOp, Display, EvalError, Expr, Func};
pub use jet::Jet3;
pub use parse::{parse, parse_in, ParseError, ParseErrorKind};
pub use warp::{DerivativeCheck, Preset, WarpFunction};
