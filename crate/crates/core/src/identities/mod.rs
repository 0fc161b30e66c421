//! Registry of the weighted-sum identities for `U(a, b, r)` and their
//! specializations, each checked by evaluating both sides independently.
//!
//! The master identity, for every `m >= 0` and nonzero `c`:
//!
//! ```text
//! c^(m+1)·U(m+1) = b − r·a + Σ_{i=0..m} c^i·[(r−1)·U(i) + (c−1)·U(i+1) + U(i−1)]
//! ```
//!
//! Every other entry pins some of `a, b, r, c`. Right-hand sides are always
//! literal term-by-term summations of the displayed sum.

pub mod sides;
pub mod sweep;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::rational::Rational;
use crate::sequence::SequenceParams;

pub use sides::{lhs_master, rhs_master, Sides};
pub use sweep::{sweep, Sweep, SweepConfig, SweepSummary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    /// General `(a, b, r)`, general `c`.
    Master,
    /// `r = 1`.
    GenFib,
    /// Fibonacci, general `c`.
    FibC,
    /// Fibonacci at `c = 2`, summed over Lucas numbers.
    Sury,
    /// Fibonacci at `c = 3`, Lucas sum plus a shifted Fibonacci sum.
    Marques,
    /// Lucas, general `c`.
    LucasC,
    /// `r = 1`, `c = 1`.
    GenFibC1,
    /// `r = 2`.
    GenPell,
    /// Pell, general `c`, summand rewritten with Pell-Lucas terms.
    PellC,
    /// Pell at `c = 2`.
    PellC2,
    /// Pell-Lucas, general `c`.
    PellLucasC,
    /// `r = 2`, `c = 1`.
    GenPellC1,
}

impl IdentityId {
    pub const ALL: [IdentityId; 12] = [
        Self::Master,
        Self::GenFib,
        Self::FibC,
        Self::Sury,
        Self::Marques,
        Self::LucasC,
        Self::GenFibC1,
        Self::GenPell,
        Self::PellC,
        Self::PellC2,
        Self::PellLucasC,
        Self::GenPellC1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Master => "master",
            Self::GenFib => "gen-fib",
            Self::FibC => "fib-c",
            Self::Sury => "sury",
            Self::Marques => "marques",
            Self::LucasC => "lucas-c",
            Self::GenFibC1 => "gen-fib-c1",
            Self::GenPell => "gen-pell",
            Self::PellC => "pell-c",
            Self::PellC2 => "pell-c2",
            Self::PellLucasC => "pell-lucas-c",
            Self::GenPellC1 => "gen-pell-c1",
        }
    }

    /// The fixed value of `param` for this identity, or `None` if it is free.
    pub fn pin(self, param: Param) -> Option<Rational> {
        let (a, b, r, c): (Option<i64>, Option<i64>, Option<i64>, Option<i64>) = match self {
            Self::Master => (None, None, None, None),
            Self::GenFib => (None, None, Some(1), None),
            Self::FibC => (Some(1), Some(1), Some(1), None),
            Self::Sury => (Some(1), Some(1), Some(1), Some(2)),
            Self::Marques => (Some(1), Some(1), Some(1), Some(3)),
            Self::LucasC => (Some(1), Some(3), Some(1), None),
            Self::GenFibC1 => (None, None, Some(1), Some(1)),
            Self::GenPell => (None, None, Some(2), None),
            Self::PellC => (Some(1), Some(2), Some(2), None),
            Self::PellC2 => (Some(1), Some(2), Some(2), Some(2)),
            Self::PellLucasC => (Some(2), Some(6), Some(2), None),
            Self::GenPellC1 => (None, None, Some(2), Some(1)),
        };
        let v = match param {
            Param::A => a,
            Param::B => b,
            Param::R => r,
            Param::C => c,
        };
        v.map(Rational::from)
    }

    pub fn free_params(self) -> impl Iterator<Item = Param> {
        Param::ALL.into_iter().filter(move |&p| self.pin(p).is_none())
    }
    /// Both sides written in the expression language, with the free
    /// parameters and `m` as variables.
    ///
    /// ```
    /// use genseq_core::expr::{check_equal, Binding, Env};
    /// use genseq_core::IdentityId;
    ///
    /// let (lhs, rhs) = IdentityId::Sury.expressions();
    /// let env = Env::new([Binding::new("m", 12)]).unwrap();
    /// assert!(check_equal(lhs, rhs, &env).unwrap().pass);
    /// ```
    pub fn expressions(self) -> (&'static str, &'static str) {
        match self {
            Self::Master => (
                "c^(m+1) * U(a,b,r,m+1)",
                "b - r*a + sum(i=0..m, c^i * ((r-1)*U(a,b,r,i) + (c-1)*U(a,b,r,i+1) + U(a,b,r,i-1)))",
            ),
            Self::GenFib => (
                "c^(m+1) * U(a,b,1,m+1)",
                "b - a + sum(i=0..m, c^i * ((c-1)*U(a,b,1,i+1) + U(a,b,1,i-1)))",
            ),
            Self::FibC => ("c^(m+1) * F(m+1)", "sum(i=0..m, c^i * ((c-1)*F(i+1) + F(i-1)))"),
            Self::Sury => ("2^(m+1) * F(m+1)", "sum(i=0..m, 2^i * L(i))"),
            Self::Marques => ("3^(m+1) * F(m+1)", "sum(i=0..m, 3^i * L(i)) + sum(i=0..m+1, 3^(i-1) * F(i))"),
            Self::LucasC => ("c^(m+1) * L(m+1)", "2 + sum(i=0..m, c^i * ((c-1)*L(i+1) + L(i-1)))"),
            Self::GenFibC1 => ("U(a,b,1,m+1)", "b - a + sum(i=0..m, U(a,b,1,i-1))"),
            Self::GenPell => (
                "c^(m+1) * U(a,b,2,m+1)",
                "b - 2*a + sum(i=0..m, c^i * (U(a,b,2,i) + (c-1)*U(a,b,2,i+1) + U(a,b,2,i-1)))",
            ),
            Self::PellC => ("c^(m+1) * P(m+1)", "sum(i=0..m, c^i * (P(i) + (c-2)*P(i+1) + Q(i)))"),
            Self::PellC2 => ("2^(m+1) * P(m+1)", "sum(i=0..m, 2^i * (P(i) + Q(i)))"),
            Self::PellLucasC => ("c^(m+1) * Q(m+1)", "2 + sum(i=0..m, c^i * (Q(i) + (c-1)*Q(i+1) + Q(i-1)))"),
            Self::GenPellC1 => ("U(a,b,2,m+1)", "b - 2*a + sum(i=0..m, U(a,b,2,i) + U(a,b,2,i-1))"),
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Self::ALL
            .into_iter()
            .find(|id| id.name() == key)
            .ok_or_else(|| IdentityError::UnknownIdentity(s.to_string()))
    }
}

/// The bindable scalars of an identity instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    A,
    B,
    R,
    C,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::A, Param::B, Param::R, Param::C];
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Param::A => "a",
            Param::B => "b",
            Param::R => "r",
            Param::C => "c",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("c must be nonzero")]
    ZeroC,
    #[error("{identity} pins {param} = {expected}, got {found}")]
    PinViolation { identity: IdentityId, param: Param, expected: Box<Rational>, found: Box<Rational> },
    #[error("{identity} needs a value for {param}")]
    MissingParameter { identity: IdentityId, param: Param },
    #[error("empty grid: no values for {0}")]
    EmptyGrid(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("sweep config line {line}: {message}")]
    Config { line: usize, message: String },
}

/// User-supplied values; `None` means "use the identity's pin".
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bindings {
    pub a: Option<Rational>,
    pub b: Option<Rational>,
    pub r: Option<Rational>,
    pub c: Option<Rational>,
}

impl Bindings {
    pub fn get(&self, param: Param) -> Option<&Rational> {
        match param {
            Param::A => self.a.as_ref(),
            Param::B => self.b.as_ref(),
            Param::R => self.r.as_ref(),
            Param::C => self.c.as_ref(),
        }
    }
}

/// One fully bound, validated claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityInstance {
    id: IdentityId,
    params: SequenceParams,
    c: Rational,
    m: u32,
}

impl IdentityInstance {
    /// Fills pinned parameters and checks user values against them.
    /// A supplied value equal to the pin is accepted.
    pub fn new(id: IdentityId, bindings: &Bindings, m: u32) -> Result<Self, IdentityError> {
        let resolve = |param: Param| -> Result<Rational, IdentityError> {
            match (id.pin(param), bindings.get(param)) {
                (Some(pin), Some(v)) if *v != pin => Err(IdentityError::PinViolation {
                    identity: id,
                    param,
                    expected: Box::new(pin),
                    found: Box::new(v.clone()),
                }),
                (Some(pin), _) => Ok(pin),
                (None, Some(v)) => Ok(v.clone()),
                (None, None) => Err(IdentityError::MissingParameter { identity: id, param }),
            }
        };
        let params = SequenceParams { a: resolve(Param::A)?, b: resolve(Param::B)?, r: resolve(Param::R)? };
        let c = resolve(Param::C)?;
        if c.is_zero() {
            return Err(IdentityError::ZeroC);
        }
        Ok(Self { id, params, c, m })
    }

    pub fn id(&self) -> IdentityId {
        self.id
    }

    pub fn params(&self) -> &SequenceParams {
        &self.params
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Both sides, via the identity's own evaluator.
    pub fn sides(&self) -> Sides {
        let SequenceParams { a, b, .. } = &self.params;
        let (c, m) = (&self.c, self.m);
        // c != 0 was checked at construction.
        let checked = |s: Result<Sides, IdentityError>| s.expect("validated instance");
        match self.id {
            IdentityId::Master => checked(sides::master(&self.params, c, m)),
            IdentityId::GenFib => checked(sides::gen_fib(a, b, c, m)),
            IdentityId::FibC => checked(sides::fib_c(c, m)),
            IdentityId::Sury => sides::sury(m),
            IdentityId::Marques => sides::marques(m),
            IdentityId::LucasC => checked(sides::lucas_c(c, m)),
            IdentityId::GenFibC1 => sides::gen_fib_c1(a, b, m),
            IdentityId::GenPell => checked(sides::gen_pell(a, b, c, m)),
            IdentityId::PellC => checked(sides::pell_c(c, m)),
            IdentityId::PellC2 => sides::pell_c2(m),
            IdentityId::PellLucasC => checked(sides::pell_lucas_c(c, m)),
            IdentityId::GenPellC1 => sides::gen_pell_c1(a, b, m),
        }
    }
}

/// Outcome of one evaluated instance. `pass` holds exactly when `residual`
/// is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub instance: IdentityInstance,
    pub lhs: Rational,
    pub rhs: Rational,
    pub residual: Rational,
    pub pass: bool,
    pub elapsed: Duration,
}

impl IdentityReport {
    pub fn new(instance: IdentityInstance, sides: Sides, elapsed: Duration) -> Self {
        let residual = &sides.lhs - &sides.rhs;
        let pass = residual.is_zero();
        Self { instance, lhs: sides.lhs, rhs: sides.rhs, residual, pass, elapsed }
    }
}

pub fn evaluate(instance: IdentityInstance) -> IdentityReport {
    let start = Instant::now();
    let sides = instance.sides();
    IdentityReport::new(instance, sides, start.elapsed())
}
