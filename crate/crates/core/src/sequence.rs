//! The three-parameter recurrence `U(n+2) = r·U(n+1) + U(n)` with seeds
//! `U(0) = b − r·a`, `U(1) = a`, extended to negative indices by running the
//! recurrence backwards: `U(n) = U(n+2) − r·U(n+1)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("empty index range {lo}..{hi} (lo must not exceed hi)")]
    EmptyRange { lo: i64, hi: i64 },
    #[error("unknown sequence family `{0}` (expected fibonacci, lucas, pell or pell-lucas)")]
    UnknownFamily(String),
}

/// The `(a, b, r)` triple selecting one sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceParams {
    pub a: Rational,
    pub b: Rational,
    pub r: Rational,
}

impl SequenceParams {
    pub fn new(a: impl Into<Rational>, b: impl Into<Rational>, r: impl Into<Rational>) -> Self {
        Self { a: a.into(), b: b.into(), r: r.into() }
    }

    /// `U(0) = b − r·a`.
    pub fn u0(&self) -> Rational {
        &self.b - &(&self.r * &self.a)
    }

    /// `U(1) = a`.
    pub fn u1(&self) -> Rational {
        self.a.clone()
    }
}

impl fmt::Display for SequenceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={}, r={})", self.a, self.b, self.r)
    }
}

/// Named members of the family. Each resolves to a fixed `(a, b, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SequenceFamily {
    Fibonacci,
    Lucas,
    Pell,
    PellLucas,
    GeneralizedFibonacci { a: Rational, b: Rational },
    GeneralizedPell { a: Rational, b: Rational },
    Custom(SequenceParams),
}

impl SequenceFamily {
    pub fn resolve(&self) -> SequenceParams {
        match self {
            Self::Fibonacci => SequenceParams::new(1, 1, 1),
            Self::Lucas => SequenceParams::new(1, 3, 1),
            Self::Pell => SequenceParams::new(1, 2, 2),
            Self::PellLucas => SequenceParams::new(2, 6, 2),
            Self::GeneralizedFibonacci { a, b } => SequenceParams::new(a.clone(), b.clone(), 1),
            Self::GeneralizedPell { a, b } => SequenceParams::new(a.clone(), b.clone(), 2),
            Self::Custom(p) => p.clone(),
        }
    }
}

impl FromStr for SequenceFamily {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fibonacci" | "fib" | "f" => Ok(Self::Fibonacci),
            "lucas" | "l" => Ok(Self::Lucas),
            "pell" | "p" => Ok(Self::Pell),
            "pell-lucas" | "pelllucas" | "q" => Ok(Self::PellLucas),
            _ => Err(SequenceError::UnknownFamily(s.to_string())),
        }
    }
}

pub fn resolve(family: &SequenceFamily) -> SequenceParams {
    family.resolve()
}

/// Multiplication by `r`, skipping the bignum work for the common r = 0, 1, −1.
#[derive(Clone)]
struct Scale<'a> {
    r: &'a Rational,
    kind: ScaleKind,
}

#[derive(Clone, Copy)]
enum ScaleKind {
    Zero,
    One,
    MinusOne,
    General,
}

impl<'a> Scale<'a> {
    fn new(r: &'a Rational) -> Self {
        let kind = match r.to_i64() {
            Some(0) => ScaleKind::Zero,
            Some(1) => ScaleKind::One,
            Some(-1) => ScaleKind::MinusOne,
            _ => ScaleKind::General,
        };
        Self { r, kind }
    }

    /// `acc += r·x` (or `acc −= r·x` when `subtract`) without cloning for
    /// the trivial multipliers.
    fn accumulate(&self, acc: &mut Rational, x: &Rational, subtract: bool) {
        match (self.kind, subtract) {
            (ScaleKind::Zero, _) => {}
            (ScaleKind::One, false) | (ScaleKind::MinusOne, true) => *acc += x,
            (ScaleKind::One, true) | (ScaleKind::MinusOne, false) => *acc -= x,
            (ScaleKind::General, false) => *acc += &(self.r * x),
            (ScaleKind::General, true) => *acc -= &(self.r * x),
        }
    }

    fn apply(&self, x: &Rational) -> Rational {
        match self.kind {
            ScaleKind::Zero => Rational::zero(),
            ScaleKind::One => x.clone(),
            ScaleKind::MinusOne => -x,
            ScaleKind::General => self.r * x,
        }
    }
}

/// `U(n)` by stepping the recurrence from the seeds, keeping two values.
pub fn term(params: &SequenceParams, n: i64) -> Rational {
    let scale = Scale::new(&params.r);
    let mut lo = params.u0();
    let mut hi = params.u1();
    match n {
        0 => lo,
        1 => hi,
        n if n > 1 => {
            // (lo, hi) = (U(k), U(k+1)) becomes (U(k+1), U(k+2)) in place.
            for _ in 1..n {
                scale.accumulate(&mut lo, &hi, false);
                std::mem::swap(&mut lo, &mut hi);
            }
            hi
        }
        n => {
            // (lo, hi) = (U(k), U(k+1)) becomes (U(k-1), U(k)).
            for _ in 0..n.unsigned_abs() {
                scale.accumulate(&mut hi, &lo, true);
                std::mem::swap(&mut lo, &mut hi);
            }
            lo
        }
    }
}

/// `(W(k), W(k+1))` for the fundamental sequence `W(0) = 0, W(1) = 1`
/// with the same recurrence, by fast doubling:
///
/// `W(2k) = W(k)·(2·W(k+1) − r·W(k))`, `W(2k+1) = W(k+1)² + W(k)²`.
fn fundamental_pair(r: &Rational, k: u64) -> (Rational, Rational) {
    let scale = Scale::new(r);
    let mut w = Rational::zero();
    let mut w1 = Rational::one();
    for bit in (0..u64::BITS - k.leading_zeros()).rev() {
        let two_w1 = &w1 + &w1;
        let even = &w * &(two_w1 - scale.apply(&w));
        let odd = &w1 * &w1 + &w * &w;
        if (k >> bit) & 1 == 1 {
            let next = scale.apply(&odd) + &even;
            w = odd;
            w1 = next;
        } else {
            w = even;
            w1 = odd;
        }
    }
    (w, w1)
}

/// `U(n)` in O(log |n|) arithmetic operations.
///
/// Uses `U(n) = U(1)·W(n) + U(0)·W(n−1)`, and for negative indices
/// `W(−k) = (−1)^(k+1)·W(k)`, since the companion matrix `[[r,1],[1,0]]`
/// has determinant −1.
pub fn term_fast(params: &SequenceParams, n: i64) -> Rational {
    let u0 = params.u0();
    let u1 = params.u1();
    if n == 0 {
        return u0;
    }
    if n > 0 {
        let (w_prev, w) = fundamental_pair(&params.r, n as u64 - 1);
        return &u1 * &w + &u0 * &w_prev;
    }
    let k = n.unsigned_abs();
    let (wk, wk1) = fundamental_pair(&params.r, k);
    // W(n) = (−1)^(k+1)·W(k), W(n−1) = (−1)^k·W(k+1)
    let combined = &u0 * &wk1 - &u1 * &wk;
    if k.is_multiple_of(2) {
        combined
    } else {
        -combined
    }
}

/// Forward iterator over `U(start), U(start+1), ...`.
#[derive(Clone)]
pub struct Terms<'a> {
    scale: Scale<'a>,
    current: Rational,
    next: Rational,
}

impl<'a> Terms<'a> {
    pub fn new(params: &'a SequenceParams, start: i64) -> Self {
        let scale = Scale::new(&params.r);
        let (current, next) = if start >= 0 {
            (term(params, start), term(params, start + 1))
        } else {
            // walk back from the seeds once, keeping the pair
            let mut lo = params.u0();
            let mut hi = params.u1();
            for _ in 0..start.unsigned_abs() {
                scale.accumulate(&mut hi, &lo, true);
                std::mem::swap(&mut lo, &mut hi);
            }
            (lo, hi)
        };
        Self { scale, current, next }
    }
}

impl Iterator for Terms<'_> {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        let after = self.scale.apply(&self.next) + &self.current;
        let next = std::mem::replace(&mut self.next, after);
        Some(std::mem::replace(&mut self.current, next))
    }
}

/// `[U(lo), ..., U(hi)]` in one linear pass.
pub fn term_range(params: &SequenceParams, lo: i64, hi: i64) -> Result<Vec<Rational>, SequenceError> {
    if lo > hi {
        return Err(SequenceError::EmptyRange { lo, hi });
    }
    let len = usize::try_from(hi.abs_diff(lo)).expect("index range fits in memory") + 1;
    Ok(Terms::new(params, lo).take(len).collect())
}
