use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use super::ast::{BinOp, Expr, ExprKind, Pos, SeqName};
use super::parser::{parse, ParseError};
use crate::rational::{Rational, RationalError};
use crate::sequence::{term_fast, SequenceFamily, SequenceParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalErrorKind {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,
    #[error("exponent must be an integer, got {0}")]
    NonIntegerExponent(Rational),
    #[error("exponent {0} is too large")]
    ExponentTooLarge(Rational),
    #[error("sequence index must be an integer, got {0}")]
    NonIntegerIndex(Rational),
    #[error("sum bound must be an integer, got {0}")]
    NonIntegerBound(Rational),
    #[error("sum bounds {lower}..{upper} run backwards (lower may exceed upper by at most one)")]
    InvalidSumRange { lower: i64, upper: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {kind}")]
pub struct EvalError {
    pub pos: Pos,
    pub kind: EvalErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("evaluation error at {0}")]
    Eval(#[from] EvalError),
    #[error("variable `{0}` is bound more than once")]
    DuplicateBinding(String),
}

/// A `name = value` pair supplied from outside the expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    pub name: String,
    pub value: Rational,
}

impl Binding {
    pub fn new(name: impl Into<String>, value: impl Into<Rational>) -> Self {
        Self { name: name.into(), value: value.into() }
    }
}

impl FromStr for Binding {
    type Err = String;

    /// `name=value`, value a rational literal.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got `{s}`"))?;
        let name = name.trim();
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(format!("invalid variable name `{name}`"));
        }
        let value = value.parse::<Rational>().map_err(|e| e.to_string())?;
        Ok(Self::new(name, value))
    }
}

/// Variable scopes; inner bindings (sum indices) shadow outer ones.
#[derive(Debug, Clone, Default)]
pub struct Env {
    stack: Vec<(String, Rational)>,
}

impl Env {
    pub fn new(bindings: impl IntoIterator<Item = Binding>) -> Result<Self, ExprError> {
        let mut env = Env::default();
        for b in bindings {
            if env.lookup(&b.name).is_some() {
                return Err(ExprError::DuplicateBinding(b.name));
            }
            env.stack.push((b.name, b.value));
        }
        Ok(env)
    }

    fn lookup(&self, name: &str) -> Option<&Rational> {
        self.stack.iter().rev().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

fn integer(value: Rational, pos: Pos, wrap: fn(Rational) -> EvalErrorKind) -> Result<i64, EvalError> {
    value.to_i64().ok_or_else(|| EvalError { pos, kind: wrap(value) })
}

fn eval_in(expr: &Expr, env: &mut Env) -> Result<Rational, EvalError> {
    let fail = |kind| EvalError { pos: expr.pos, kind };
    match &expr.kind {
        ExprKind::Number(v) => Ok(v.clone()),
        ExprKind::Var(name) => env.lookup(name).cloned().ok_or_else(|| fail(EvalErrorKind::UnboundVariable(name.clone()))),
        ExprKind::Neg(child) => Ok(-eval_in(child, env)?),
        ExprKind::Binary { op, lhs, rhs } => {
            let l = eval_in(lhs, env)?;
            let r = eval_in(rhs, env)?;
            match op {
                BinOp::Add => Ok(l + r),
                BinOp::Sub => Ok(l - r),
                BinOp::Mul => Ok(l * r),
                BinOp::Div => l.checked_div(&r).map_err(|_| fail(EvalErrorKind::DivisionByZero)),
                BinOp::Pow => {
                    let e = integer(r, rhs.pos, EvalErrorKind::NonIntegerExponent)?;
                    l.pow(e).map_err(|err| match err {
                        RationalError::ExponentTooLarge(_) => fail(EvalErrorKind::ExponentTooLarge(Rational::from(e))),
                        _ => fail(EvalErrorKind::ZeroToNegativePower),
                    })
                }
            }
        }
        ExprKind::Seq { name, args } => {
            let mut values = Vec::with_capacity(args.len());
            for arg in args {
                values.push(eval_in(arg, env)?);
            }
            let index_pos = args.last().map_or(expr.pos, |a| a.pos);
            let n = integer(values.pop().expect("arity checked by parser"), index_pos, EvalErrorKind::NonIntegerIndex)?;
            let params = match name {
                SeqName::F => SequenceFamily::Fibonacci.resolve(),
                SeqName::L => SequenceFamily::Lucas.resolve(),
                SeqName::P => SequenceFamily::Pell.resolve(),
                SeqName::Q => SequenceFamily::PellLucas.resolve(),
                SeqName::U => {
                    let mut it = values.into_iter();
                    let (a, b, r) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
                    SequenceParams { a, b, r }
                }
            };
            Ok(term_fast(&params, n))
        }
        ExprKind::Sum { var, lower, upper, body } => {
            let lo = integer(eval_in(lower, env)?, lower.pos, EvalErrorKind::NonIntegerBound)?;
            let hi = integer(eval_in(upper, env)?, upper.pos, EvalErrorKind::NonIntegerBound)?;
            if lo > hi.saturating_add(1) {
                return Err(fail(EvalErrorKind::InvalidSumRange { lower: lo, upper: hi }));
            }
            let mut acc = Rational::zero();
            for i in lo..=hi {
                env.stack.push((var.clone(), Rational::from(i)));
                let value = eval_in(body, env);
                env.stack.pop();
                acc += &value?;
            }
            Ok(acc)
        }
    }
}

/// Evaluates `expr` exactly under `env`.
pub fn evaluate(expr: &Expr, env: &Env) -> Result<Rational, EvalError> {
    let mut scope = env.clone();
    eval_in(expr, &mut scope)
}

/// Parses and evaluates in one step.
pub fn eval_source(source: &str, env: &Env) -> Result<Rational, ExprError> {
    let expr = parse(source)?;
    Ok(evaluate(&expr, env)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} side: {error}", match side { Side::Lhs => "left", Side::Rhs => "right" })]
pub struct SideError {
    pub side: Side,
    pub error: ExprError,
}

/// Exact comparison of two expressions. `pass` holds exactly when
/// `residual` is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub lhs: Rational,
    pub rhs: Rational,
    pub residual: Rational,
    pub pass: bool,
    pub elapsed: Duration,
}

pub fn check_equal(lhs_source: &str, rhs_source: &str, env: &Env) -> Result<Comparison, SideError> {
    let start = Instant::now();
    let lhs = eval_source(lhs_source, env).map_err(|error| SideError { side: Side::Lhs, error })?;
    let rhs = eval_source(rhs_source, env).map_err(|error| SideError { side: Side::Rhs, error })?;
    let residual = &lhs - &rhs;
    let pass = residual.is_zero();
    Ok(Comparison { lhs, rhs, residual, pass, elapsed: start.elapsed() })
}
