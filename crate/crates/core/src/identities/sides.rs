//! Side evaluators, one per registry entry.
//!
//! Left sides are `c^(m+1)` times a single term from [`term`]. Right sides
//! walk the displayed sum one index at a time over a window of terms from
//! [`term_range`]; none of them evaluates the closed form. The `i = 0`
//! summands reference index −1, which comes from the backward extension of
//! the recurrence.

use crate::rational::Rational;
use crate::sequence::{term, term_range, SequenceFamily, SequenceParams};

use super::IdentityError;

/// The two evaluated sides of one identity instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sides {
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Terms `U(-1) ..= U(m+1)`, addressed by their own index.
struct Window(Vec<Rational>);

impl Window {
    fn new(params: &SequenceParams, m: u32) -> Self {
        Self(term_range(params, -1, i64::from(m) + 1).expect("-1 <= m + 1"))
    }

    fn at(&self, i: i64) -> &Rational {
        &self.0[usize::try_from(i + 1).expect("index >= -1")]
    }
}

fn require_nonzero(c: &Rational) -> Result<(), IdentityError> {
    if c.is_zero() {
        Err(IdentityError::ZeroC)
    } else {
        Ok(())
    }
}

fn int(n: i64) -> Rational {
    Rational::from(n)
}

/// `c^(m+1)·U(m+1)`.
fn scaled_term(params: &SequenceParams, c: &Rational, m: u32) -> Rational {
    let power = c.pow(i64::from(m) + 1).expect("c is nonzero");
    power * term(params, i64::from(m) + 1)
}

/// `Σ_{i=lo..=hi} c^i·summand(i)`, with `c^i` kept as a running product.
fn weighted_sum(c: &Rational, lo: i64, hi: i64, mut summand: impl FnMut(i64) -> Rational) -> Rational {
    let mut power = c.pow(lo).expect("c is nonzero");
    let mut acc = Rational::zero();
    for i in lo..=hi {
        acc += &power * &summand(i);
        if i < hi {
            power *= c;
        }
    }
    acc
}

pub fn lhs_master(params: &SequenceParams, c: &Rational, m: u32) -> Result<Rational, IdentityError> {
    require_nonzero(c)?;
    Ok(scaled_term(params, c, m))
}

/// `b − r·a + Σ_{i=0..m} c^i·[(r−1)·U(i) + (c−1)·U(i+1) + U(i−1)]`.
pub fn rhs_master(params: &SequenceParams, c: &Rational, m: u32) -> Result<Rational, IdentityError> {
    require_nonzero(c)?;
    let u = Window::new(params, m);
    let r_minus_1 = &params.r - &int(1);
    let c_minus_1 = c - &int(1);
    let constant = &params.b - &(&params.r * &params.a);
    let sum = weighted_sum(c, 0, i64::from(m), |i| {
        &r_minus_1 * u.at(i) + &c_minus_1 * u.at(i + 1) + u.at(i - 1)
    });
    Ok(constant + sum)
}

pub fn master(params: &SequenceParams, c: &Rational, m: u32) -> Result<Sides, IdentityError> {
    Ok(Sides { lhs: lhs_master(params, c, m)?, rhs: rhs_master(params, c, m)? })
}

/// Generalized Fibonacci (`r = 1`):
/// `c^(m+1)·G(m+1) = b − a + Σ c^i·[(c−1)·G(i+1) + G(i−1)]`.
pub fn gen_fib(a: &Rational, b: &Rational, c: &Rational, m: u32) -> Result<Sides, IdentityError> {
    require_nonzero(c)?;
    let params = SequenceFamily::GeneralizedFibonacci { a: a.clone(), b: b.clone() }.resolve();
    let g = Window::new(&params, m);
    let c_minus_1 = c - &int(1);
    let rhs = (b - a) + weighted_sum(c, 0, i64::from(m), |i| &c_minus_1 * g.at(i + 1) + g.at(i - 1));
    Ok(Sides { lhs: scaled_term(&params, c, m), rhs })
}

/// Fibonacci: `c^(m+1)·F(m+1) = Σ c^i·[(c−1)·F(i+1) + F(i−1)]`.
pub fn fib_c(c: &Rational, m: u32) -> Result<Sides, IdentityError> {
    require_nonzero(c)?;
    let fib = SequenceFamily::Fibonacci.resolve();
    let f = Window::new(&fib, m);
    let c_minus_1 = c - &int(1);
    let rhs = weighted_sum(c, 0, i64::from(m), |i| &c_minus_1 * f.at(i + 1) + f.at(i - 1));
    Ok(Sides { lhs: scaled_term(&fib, c, m), rhs })
}

/// `2^(m+1)·F(m+1) = Σ_{i=0..m} 2^i·L(i)`.
pub fn sury(m: u32) -> Sides {
    let fib = SequenceFamily::Fibonacci.resolve();
    let lucas = term_range(&SequenceFamily::Lucas.resolve(), 0, i64::from(m)).expect("0 <= m");
    let rhs = weighted_sum(&int(2), 0, i64::from(m), |i| lucas[i as usize].clone());
    Sides { lhs: scaled_term(&fib, &int(2), m), rhs }
}

/// `3^(m+1)·F(m+1) = Σ_{i=0..m} 3^i·L(i) + Σ_{i=0..m+1} 3^(i−1)·F(i)`.
///
/// The second sum starts with the literal `3^(−1)·F(0)` term.
pub fn marques(m: u32) -> Sides {
    let fib = SequenceFamily::Fibonacci.resolve();
    let last = i64::from(m);
    let lucas = term_range(&SequenceFamily::Lucas.resolve(), 0, last).expect("0 <= m");
    let f = term_range(&fib, 0, last + 1).expect("0 <= m + 1");
    let three = int(3);
    let lucas_sum = weighted_sum(&three, 0, last, |i| lucas[i as usize].clone());
    let mut power = three.pow(-1).expect("nonzero");
    let mut fib_sum = Rational::zero();
    for fi in &f {
        fib_sum += &power * fi;
        power *= &three;
    }
    Sides { lhs: scaled_term(&fib, &three, m), rhs: lucas_sum + fib_sum }
}

/// Lucas: `c^(m+1)·L(m+1) = 2 + Σ c^i·[(c−1)·L(i+1) + L(i−1)]`.
pub fn lucas_c(c: &Rational, m: u32) -> Result<Sides, IdentityError> {
    require_nonzero(c)?;
    let lucas = SequenceFamily::Lucas.resolve();
    let l = Window::new(&lucas, m);
    let c_minus_1 = c - &int(1);
    let rhs = int(2) + weighted_sum(c, 0, i64::from(m), |i| &c_minus_1 * l.at(i + 1) + l.at(i - 1));
    Ok(Sides { lhs: scaled_term(&lucas, c, m), rhs })
}

/// `G(m+1) = b − a + Σ_{i=0..m} G(i−1)`.
pub fn gen_fib_c1(a: &Rational, b: &Rational, m: u32) -> Sides {
    let params = SequenceFamily::GeneralizedFibonacci { a: a.clone(), b: b.clone() }.resolve();
    let g = term_range(&params, -1, i64::from(m) - 1).expect("-1 <= m - 1");
    let rhs = (b - a) + g.iter().sum::<Rational>();
    Sides { lhs: term(&params, i64::from(m) + 1), rhs }
}

/// Generalized Pell (`r = 2`):
/// `c^(m+1)·P(m+1) = b − 2a + Σ c^i·[P(i) + (c−1)·P(i+1) + P(i−1)]`.
pub fn gen_pell(a: &Rational, b: &Rational, c: &Rational, m: u32) -> Result<Sides, IdentityError> {
    require_nonzero(c)?;
    let params = SequenceFamily::GeneralizedPell { a: a.clone(), b: b.clone() }.resolve();
    let p = Window::new(&params, m);
    let c_minus_1 = c - &int(1);
    let constant = b - &(&int(2) * a);
    let rhs = constant + weighted_sum(c, 0, i64::from(m), |i| p.at(i) + &(&c_minus_1 * p.at(i + 1)) + p.at(i - 1));
    Ok(Sides { lhs: scaled_term(&params, c, m), rhs })
}

/// Pell, with `P(i−1)` replaced through Pell-Lucas numbers:
/// `c^(m+1)·P(m+1) = Σ c^i·[P(i) + (c−2)·P(i+1) + Q(i)]`.
pub fn pell_c(c: &Rational, m: u32) -> Result<Sides, IdentityError> {
    require_nonzero(c)?;
    let pell = SequenceFamily::Pell.resolve();
    let p = term_range(&pell, 0, i64::from(m) + 1).expect("0 <= m + 1");
    let q = term_range(&SequenceFamily::PellLucas.resolve(), 0, i64::from(m)).expect("0 <= m");
    let c_minus_2 = c - &int(2);
    let rhs = weighted_sum(c, 0, i64::from(m), |i| {
        let i = i as usize;
        &p[i] + &(&c_minus_2 * &p[i + 1]) + &q[i]
    });
    Ok(Sides { lhs: scaled_term(&pell, c, m), rhs })
}

/// `2^(m+1)·P(m+1) = Σ_{i=0..m} 2^i·(P(i) + Q(i))`.
pub fn pell_c2(m: u32) -> Sides {
    let pell = SequenceFamily::Pell.resolve();
    let p = term_range(&pell, 0, i64::from(m)).expect("0 <= m");
    let q = term_range(&SequenceFamily::PellLucas.resolve(), 0, i64::from(m)).expect("0 <= m");
    let rhs = weighted_sum(&int(2), 0, i64::from(m), |i| &p[i as usize] + &q[i as usize]);
    Sides { lhs: scaled_term(&pell, &int(2), m), rhs }
}

/// Pell-Lucas: `c^(m+1)·Q(m+1) = 2 + Σ c^i·[Q(i) + (c−1)·Q(i+1) + Q(i−1)]`.
pub fn pell_lucas_c(c: &Rational, m: u32) -> Result<Sides, IdentityError> {
    require_nonzero(c)?;
    let pell_lucas = SequenceFamily::PellLucas.resolve();
    let q = Window::new(&pell_lucas, m);
    let c_minus_1 = c - &int(1);
    let rhs = int(2) + weighted_sum(c, 0, i64::from(m), |i| q.at(i) + &(&c_minus_1 * q.at(i + 1)) + q.at(i - 1));
    Ok(Sides { lhs: scaled_term(&pell_lucas, c, m), rhs })
}

/// `P(m+1) = b − 2a + Σ_{i=0..m} (P(i) + P(i−1))`.
pub fn gen_pell_c1(a: &Rational, b: &Rational, m: u32) -> Sides {
    let params = SequenceFamily::GeneralizedPell { a: a.clone(), b: b.clone() }.resolve();
    let p = Window::new(&params, m);
    let mut rhs = b - &(&int(2) * a);
    for i in 0..=i64::from(m) {
        rhs += p.at(i);
        rhs += p.at(i - 1);
    }
    Sides { lhs: term(&params, i64::from(m) + 1), rhs }
}
