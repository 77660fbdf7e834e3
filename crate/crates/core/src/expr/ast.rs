use alloc::boxed::Box;
use core::fmt;

use super::jet::Jet3;
use crate::math;

/// Builtin unary functions of the expression language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
    Asinh,
    Atan,
}

impl Func {
    pub const ALL: [Func; 11] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Exp,
        Func::Log,
        Func::Sqrt,
        Func::Asinh,
        Func::Atan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Asinh => "asinh",
            Func::Atan => "atan",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    fn apply(self, u: Jet3) -> Result<Jet3, EvalError> {
        let x = u.v0;
        match self {
            Func::Log if x <= 0.0 => Err(EvalError::NonFinite { op: "log", at: x }),
            Func::Sqrt if x <= 0.0 => Err(EvalError::NonFinite { op: "sqrt", at: x }),
            Func::Sin => Ok(u.sin()),
            Func::Cos => Ok(u.cos()),
            Func::Tan => Ok(u.tan()),
            Func::Sinh => Ok(u.sinh()),
            Func::Cosh => Ok(u.cosh()),
            Func::Tanh => Ok(u.tanh()),
            Func::Exp => Ok(u.exp()),
            Func::Log => Ok(u.ln()),
            Func::Sqrt => Ok(u.sqrt()),
            Func::Asinh => Ok(u.asinh()),
            Func::Atan => Ok(u.atan()),
        }
    }

    fn apply_scalar(self, x: f64) -> f64 {
        match self {
            Func::Sin => math::sin(x),
            Func::Cos => math::cos(x),
            Func::Tan => math::tan(x),
            Func::Sinh => math::sinh(x),
            Func::Cosh => math::cosh(x),
            Func::Tanh => math::tanh(x),
            Func::Exp => math::exp(x),
            Func::Log => math::ln(x),
            Func::Sqrt => math::sqrt(x),
            Func::Asinh => math::asinh(x),
            Func::Atan => math::atan(x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }
}

/// Expression tree over a single free variable.
///
/// Leaves are numeric constants, `pi`, or the variable. Exponents of `^`
/// never contain the variable; the parser enforces this.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Pi,
    Var,
    Neg(Box<Expr>),
    Binary { op: BinOp, lhs: Box<Expr>, rhs: Box<Expr> },
    Call { func: Func, arg: Box<Expr> },
}

/// Evaluation failures of an otherwise well-formed expression.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("argument {x} outside the open interval ({lo}, {hi})")]
    Domain { x: f64, lo: f64, hi: f64 },
    #[error("non-finite result in {op} at argument {at}")]
    NonFinite { op: &'static str, at: f64 },
    #[error("real exponent {exponent} needs a positive base, got {base}")]
    NegativeBase { base: f64, exponent: f64 },
}

const MAX_INTEGER_EXPONENT: f64 = 1024.0;

impl Expr {
    /// A numeric leaf; negative values become `Neg(Num(|x|))` so the tree
    /// matches what the parser would produce from the printed form.
    pub fn num(x: f64) -> Expr {
        if x < 0.0 {
            Expr::Neg(Box::new(Expr::Num(-x)))
        } else {
            Expr::Num(x)
        }
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn call(func: Func, arg: Expr) -> Expr {
        Expr::Call {
            func,
            arg: Box::new(arg),
        }
    }

    pub fn contains_var(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::Pi => false,
            Expr::Var => true,
            Expr::Neg(e) => e.contains_var(),
            Expr::Binary { lhs, rhs, .. } => lhs.contains_var() || rhs.contains_var(),
            Expr::Call { arg, .. } => arg.contains_var(),
        }
    }

    /// Plain value of a variable-free subtree.
    pub fn constant_value(&self) -> Option<f64> {
        if self.contains_var() {
            return None;
        }
        Some(self.eval_scalar(0.0))
    }

    fn eval_scalar(&self, x: f64) -> f64 {
        match self {
            Expr::Num(c) => *c,
            Expr::Pi => math::PI,
            Expr::Var => x,
            Expr::Neg(e) => -e.eval_scalar(x),
            Expr::Binary { op, lhs, rhs } => {
                let (a, b) = (lhs.eval_scalar(x), rhs.eval_scalar(x));
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                    BinOp::Pow => match integer_exponent(b) {
                        Some(k) => math::powi(a, k),
                        None => math::powf(a, b),
                    },
                }
            }
            Expr::Call { func, arg } => func.apply_scalar(arg.eval_scalar(x)),
        }
    }

    /// Value and first three derivatives with respect to the variable at `x`.
    pub fn eval_jet(&self, x: f64) -> Result<Jet3, EvalError> {
        let j = match self {
            Expr::Num(c) => return Ok(Jet3::constant(*c)),
            Expr::Pi => return Ok(Jet3::constant(math::PI)),
            Expr::Var => return Ok(Jet3::variable(x)),
            Expr::Neg(e) => -e.eval_jet(x)?,
            Expr::Binary { op, lhs, rhs } => {
                let a = lhs.eval_jet(x)?;
                match op {
                    BinOp::Add => a + rhs.eval_jet(x)?,
                    BinOp::Sub => a - rhs.eval_jet(x)?,
                    BinOp::Mul => a * rhs.eval_jet(x)?,
                    BinOp::Div => {
                        let b = rhs.eval_jet(x)?;
                        if b.v0 == 0.0 {
                            return Err(EvalError::NonFinite { op: "division", at: x });
                        }
                        a / b
                    }
                    BinOp::Pow => {
                        let p = rhs.eval_scalar(x);
                        match integer_exponent(p) {
                            Some(k) if k < 0 && a.v0 == 0.0 => return Err(EvalError::NonFinite { op: "power", at: x }),
                            Some(k) => a.powi(k),
                            None if a.v0 <= 0.0 => {
                                return Err(EvalError::NegativeBase {
                                    base: a.v0,
                                    exponent: p,
                                })
                            }
                            None => a.powf(p),
                        }
                    }
                }
            }
            Expr::Call { func, arg } => func.apply(arg.eval_jet(x)?)?,
        };
        if j.is_finite() {
            Ok(j)
        } else {
            Err(EvalError::NonFinite {
                op: self.op_name(),
                at: x,
            })
        }
    }

    /// Plain value at `x`; fails on the same inputs as [`Expr::eval_jet`].
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        self.eval_jet(x).map(|j| j.v0)
    }

    fn op_name(&self) -> &'static str {
        match self {
            Expr::Num(_) | Expr::Pi | Expr::Var => "leaf",
            Expr::Neg(_) => "negation",
            Expr::Binary { op, .. } => match op {
                BinOp::Add => "addition",
                BinOp::Sub => "subtraction",
                BinOp::Mul => "multiplication",
                BinOp::Div => "division",
                BinOp::Pow => "power",
            },
            Expr::Call { func, .. } => func.name(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary { op, .. } => op.precedence(),
            Expr::Neg(_) => 3,
            _ => 5,
        }
    }

    /// Source text using `var` as the variable name. Reparsing it with the
    /// same variable yields a structurally equal tree.
    pub fn display<'a>(&'a self, var: &'a str) -> Display<'a> {
        Display { expr: self, var }
    }
}

fn integer_exponent(p: f64) -> Option<i32> {
    if p == math::round(p) && p.abs() <= MAX_INTEGER_EXPONENT {
        Some(p as i32)
    } else {
        None
    }
}

pub struct Display<'a> {
    expr: &'a Expr,
    var: &'a str,
}

impl Display<'_> {
    fn child<'b>(&'b self, e: &'b Expr) -> Display<'b> {
        Display { expr: e, var: self.var }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({})", self.child(e))
        } else {
            write!(f, "{}", self.child(e))
        }
    }
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.expr {
            Expr::Num(c) => write!(f, "{c:?}"),
            Expr::Pi => f.write_str("pi"),
            Expr::Var => f.write_str(self.var),
            Expr::Neg(e) => {
                f.write_str("-")?;
                self.write_child(f, e, e.precedence() < 3)
            }
            Expr::Binary { op, lhs, rhs } => {
                let p = op.precedence();
                let (lp, rp) = if *op == BinOp::Pow {
                    (lhs.precedence() <= p, rhs.precedence() < 3)
                } else {
                    (lhs.precedence() < p, rhs.precedence() <= p)
                };
                self.write_child(f, lhs, lp)?;
                write!(f, "{}", op.symbol())?;
                self.write_child(f, rhs, rp)
            }
            Expr::Call { func, arg } => {
                write!(f, "{}(", func.name())?;
                self.write_child(f, arg, false)?;
                f.write_str(")")
            }
        }
    }
}
