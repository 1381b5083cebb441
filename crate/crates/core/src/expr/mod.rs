//! Symbolic real expressions: parsing, evaluation, differentiation,
//! printing and substitution.
//!
//! Grammar, loosest binding first: `+ -`, then `* /`, then unary `-`, then
//! `^` (right associative, integer exponents only). Functions are `sin`,
//! `cos`, `exp`, `log` and `sqrt`.

mod diff;
pub mod func;
mod parse;

use std::fmt;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::scalar::Real;

pub use func::{poly_fn, AFunction, ExprFn, FnDef, FromClosure};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("unknown function `{name}` at position {position}")]
    UnknownFunction { name: String, position: usize },
    #[error("`{name}` takes {expected} argument(s), found {found}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("point has {got} coordinates but the expression uses {needed}")]
    PointTooShort { needed: usize, got: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "log" | "ln" => Func::Log,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

/// Variable naming: `x1..xn` or an explicit list such as `["t"]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarSet {
    Indexed(usize),
    Named(Vec<String>),
}

impl VarSet {
    pub fn len(&self) -> usize {
        match self {
            VarSet::Indexed(n) => *n,
            VarSet::Named(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        match self {
            VarSet::Indexed(n) => {
                let k: usize = name.strip_prefix('x')?.parse().ok()?;
                (1..=*n).contains(&k).then(|| k - 1)
            }
            VarSet::Named(v) => v.iter().position(|s| s == name),
        }
    }

    pub fn name(&self, i: usize) -> String {
        match self {
            VarSet::Indexed(_) => format!("x{}", i + 1),
            VarSet::Named(v) => v.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>),
}

use Expr::*;

// Constructors below fold constants and drop neutral elements so that
// derivatives stay readable.
impl Expr {
    pub fn parse(src: &str, vars: &VarSet) -> Result<Expr, ExprError> {
        parse::parse(src, vars)
    }

    pub fn num(x: f64) -> Expr {
        Num(x)
    }

    pub fn var(i: usize) -> Expr {
        Var(i)
    }

    pub fn as_num(&self) -> Option<f64> {
        match self {
            Num(x) => Some(*x),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_num() == Some(0.0)
    }

    pub fn is_one(&self) -> bool {
        self.as_num() == Some(1.0)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Expr) -> Expr {
        match a {
            Num(x) => Num(-x),
            Neg(inner) => *inner,
            other => Neg(Box::new(other)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Expr, b: Expr) -> Expr {
        match (a, b) {
            (Num(x), Num(y)) => Num(x + y),
            (a, b) if a.is_zero() => b,
            (a, b) if b.is_zero() => a,
            (a, Neg(b)) => Sub(Box::new(a), b),
            (a, Num(y)) if y < 0.0 => Sub(Box::new(a), Box::new(Num(-y))),
            (a, Mul(l, r)) if l.as_num().is_some_and(|y| y < 0.0) => Sub(Box::new(a), Box::new(Expr::mul(Expr::neg(*l), *r))),
            (a, b) => Add(Box::new(a), Box::new(b)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: Expr, b: Expr) -> Expr {
        match (a, b) {
            (Num(x), Num(y)) => Num(x - y),
            (a, b) if b.is_zero() => a,
            (a, b) if a.is_zero() => Expr::neg(b),
            (a, Neg(b)) => Add(Box::new(a), b),
            (a, b) if a == b => Num(0.0),
            (a, Num(y)) if y < 0.0 => Add(Box::new(a), Box::new(Num(-y))),
            (a, Mul(l, r)) if l.as_num().is_some_and(|y| y < 0.0) => Add(Box::new(a), Box::new(Expr::mul(Expr::neg(*l), *r))),
            (a, b) => Sub(Box::new(a), Box::new(b)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Expr, b: Expr) -> Expr {
        match (a, b) {
            (Num(x), Num(y)) => Num(x * y),
            (a, _) if a.is_zero() => Num(0.0),
            (_, b) if b.is_zero() => Num(0.0),
            (a, b) if a.is_one() => b,
            (a, b) if b.is_one() => a,
            (Num(-1.0), b) => Expr::neg(b),
            (a, Num(-1.0)) => Expr::neg(a),
            (Neg(a), Neg(b)) => Expr::mul(*a, *b),
            (Neg(a), b) => Expr::neg(Expr::mul(*a, b)),
            (a, Neg(b)) => Expr::neg(Expr::mul(a, *b)),
            (Num(x), Mul(l, r)) if l.as_num().is_some() => Expr::mul(Num(x * l.as_num().unwrap_or(1.0)), *r),
            (a, Num(y)) => Mul(Box::new(Num(y)), Box::new(a)),
            (a, b) => Mul(Box::new(a), Box::new(b)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(a: Expr, b: Expr) -> Expr {
        match (a, b) {
            (Num(x), Num(y)) if y != 0.0 => Num(x / y),
            (a, b) if a.is_zero() && !b.is_zero() => Num(0.0),
            (a, b) if b.is_one() => a,
            (a, b) => Div(Box::new(a), Box::new(b)),
        }
    }

    pub fn pow(a: Expr, k: i32) -> Expr {
        match (a, k) {
            (_, 0) => Num(1.0),
            (a, 1) => a,
            (Num(x), k) if x != 0.0 || k > 0 => Num(x.powi(k)),
            (Pow(b, j), k) => Expr::pow(*b, j * k),
            (a, k) => Pow(Box::new(a), k),
        }
    }

    pub fn call(f: Func, a: Expr) -> Expr {
        match (f, &a) {
            (Func::Sin, Num(x)) if *x == 0.0 => Num(0.0),
            (Func::Cos, Num(x)) if *x == 0.0 => Num(1.0),
            (Func::Exp, Num(x)) if *x == 0.0 => Num(1.0),
            (Func::Log, Num(x)) if *x == 1.0 => Num(0.0),
            _ => Call(f, Box::new(a)),
        }
    }

    /// Sum of terms, skipping zeros.
    pub fn sum(terms: impl IntoIterator<Item = Expr>) -> Expr {
        terms.into_iter().fold(Num(0.0), Expr::add)
    }

    /// One past the largest variable index, or zero for constants.
    pub fn arity(&self) -> usize {
        match self {
            Num(_) => 0,
            Var(i) => i + 1,
            Neg(a) | Pow(a, _) | Call(_, a) => a.arity(),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => a.arity().max(b.arity()),
        }
    }

    pub fn eval<T: Real>(&self, x: &[T]) -> Result<T, ExprError> {
        let need = self.arity();
        if x.len() < need {
            return Err(ExprError::PointTooShort { needed: need, got: x.len() });
        }
        let v = self.ev(x)?;
        if v.to_f64().is_finite() {
            Ok(v)
        } else {
            Err(ExprError::Domain("non-finite result".into()))
        }
    }

    fn ev<T: Real>(&self, x: &[T]) -> Result<T, ExprError> {
        Ok(match self {
            Num(c) => T::lit(*c),
            Var(i) => x[*i],
            Neg(a) => -a.ev(x)?,
            Add(a, b) => a.ev(x)? + b.ev(x)?,
            Sub(a, b) => a.ev(x)? - b.ev(x)?,
            Mul(a, b) => a.ev(x)? * b.ev(x)?,
            Div(a, b) => {
                let d = b.ev(x)?;
                if d == T::zero() {
                    return Err(ExprError::Domain("division by zero".into()));
                }
                a.ev(x)? / d
            }
            Pow(a, k) => {
                let base = a.ev(x)?;
                if *k < 0 && base == T::zero() {
                    return Err(ExprError::Domain("zero raised to a negative power".into()));
                }
                base.powi(*k)
            }
            Call(f, a) => {
                let v = a.ev(x)?;
                match f {
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Exp => v.exp(),
                    Func::Log if v <= T::zero() => {
                        return Err(ExprError::Domain(format!("log of non-positive value {v}")))
                    }
                    Func::Log => v.ln(),
                    Func::Sqrt if v < T::zero() => {
                        return Err(ExprError::Domain(format!("sqrt of negative value {v}")))
                    }
                    Func::Sqrt => v.sqrt(),
                }
            }
        })
    }

    /// Partial derivative with respect to variable `i`.
    pub fn diff(&self, i: usize) -> Expr {
        diff::diff(self, i)
    }

    /// Replaces variable `i` by `subs[i]`. Variables past the end are kept.
    pub fn substitute(&self, subs: &[Expr]) -> Expr {
        match self {
            Num(c) => Num(*c),
            Var(i) => subs.get(*i).cloned().unwrap_or(Var(*i)),
            Neg(a) => Expr::neg(a.substitute(subs)),
            Add(a, b) => Expr::add(a.substitute(subs), b.substitute(subs)),
            Sub(a, b) => Expr::sub(a.substitute(subs), b.substitute(subs)),
            Mul(a, b) => Expr::mul(a.substitute(subs), b.substitute(subs)),
            Div(a, b) => Expr::div(a.substitute(subs), b.substitute(subs)),
            Pow(a, k) => Expr::pow(a.substitute(subs), *k),
            Call(f, a) => Expr::call(*f, a.substitute(subs)),
        }
    }

    /// Rebuilds the tree through the folding constructors.
    pub fn simplify(&self) -> Expr {
        self.substitute(&[])
    }

    pub fn display<'a>(&'a self, vars: &'a VarSet) -> Display<'a> {
        Display { e: self, vars }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Num(_) | Var(_) => 1,
            Neg(a) | Pow(a, _) | Call(_, a) => 1 + a.size(),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => 1 + a.size() + b.size(),
        }
    }
}

/// Printer bound to a variable naming; output parses back to the same tree.
pub struct Display<'a> {
    e: &'a Expr,
    vars: &'a VarSet,
}

const P_ADD: u8 = 1;
const P_MUL: u8 = 2;
const P_NEG: u8 = 3;
const P_POW: u8 = 4;
const P_ATOM: u8 = 5;

fn prec(e: &Expr) -> u8 {
    match e {
        Num(x) if *x < 0.0 || x.is_sign_negative() => P_NEG,
        Num(_) | Var(_) | Call(..) => P_ATOM,
        Neg(_) => P_NEG,
        Add(..) | Sub(..) => P_ADD,
        Mul(..) | Div(..) => P_MUL,
        Pow(..) => P_POW,
    }
}

impl Display<'_> {
    fn child(&self, f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
        let inner = Display { e, vars: self.vars };
        if prec(e) < min {
            write!(f, "({inner})")
        } else {
            write!(f, "{inner}")
        }
    }
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.e {
            Num(x) => write!(f, "{x}"),
            Var(i) => f.write_str(&self.vars.name(*i)),
            Neg(a) => {
                f.write_str("-")?;
                self.child(f, a, P_NEG)
            }
            Add(a, b) => {
                self.child(f, a, P_ADD)?;
                f.write_str(" + ")?;
                self.child(f, b, P_ADD + 1)
            }
            Sub(a, b) => {
                self.child(f, a, P_ADD)?;
                f.write_str(" - ")?;
                self.child(f, b, P_ADD + 1)
            }
            Mul(a, b) => {
                self.child(f, a, P_MUL)?;
                f.write_str("*")?;
                self.child(f, b, P_NEG)
            }
            Div(a, b) => {
                self.child(f, a, P_MUL)?;
                f.write_str("/")?;
                self.child(f, b, P_NEG + 1)
            }
            Pow(a, k) => {
                self.child(f, a, P_ATOM)?;
                if *k < 0 {
                    write!(f, "^({k})")
                } else {
                    write!(f, "^{k}")
                }
            }
            Call(func, a) => write!(f, "{}({})", func.name(), Display { e: a, vars: self.vars }),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = VarSet::Indexed(self.arity());
        write!(f, "{}", self.display(&vars))
    }
}
