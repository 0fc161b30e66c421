//! Test-only oracles. They use `num-rational` for arithmetic and plain loops
//! for the recurrences, sharing no code with the library under test.

#![allow(dead_code)]

use genseq_core::Rational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn to_big(x: &Rational) -> BigRational {
    BigRational::new(x.numer().clone(), x.denom().clone())
}

pub fn from_big(x: &BigRational) -> Rational {
    Rational::new(x.numer().clone(), x.denom().clone()).unwrap()
}

pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

/// Unrolls `x(n+2) = r·x(n+1) + x(n)` from `(x0, x1)` to index `n`, walking
/// backwards for negative `n`.
pub fn unroll(x0: BigRational, x1: BigRational, r: &BigRational, n: i64) -> BigRational {
    let (mut lo, mut hi) = (x0, x1);
    if n >= 0 {
        for _ in 0..n {
            let next = r * &hi + &lo;
            lo = std::mem::replace(&mut hi, next);
        }
        lo
    } else {
        for _ in 0..-n {
            let prev = &hi - r * &lo;
            hi = std::mem::replace(&mut lo, prev);
        }
        lo
    }
}

pub fn u(a: &BigRational, b: &BigRational, r: &BigRational, n: i64) -> BigRational {
    unroll(b - r * a, a.clone(), r, n)
}

/// Generalized Fibonacci, seeds `b − a`, `a`.
pub fn gen_fib(a: &BigRational, b: &BigRational, n: i64) -> BigRational {
    unroll(b - a, a.clone(), &big(1), n)
}

/// Generalized Pell, seeds `b − 2a`, `a`.
pub fn gen_pell(a: &BigRational, b: &BigRational, n: i64) -> BigRational {
    unroll(b - big(2) * a, a.clone(), &big(2), n)
}

pub fn fib(n: i64) -> BigRational {
    unroll(big(0), big(1), &big(1), n)
}

pub fn lucas(n: i64) -> BigRational {
    unroll(big(2), big(1), &big(1), n)
}

pub fn pell(n: i64) -> BigRational {
    unroll(big(0), big(1), &big(2), n)
}

pub fn pell_lucas(n: i64) -> BigRational {
    unroll(big(2), big(2), &big(2), n)
}

pub fn pow(c: &BigRational, e: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= c;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// `Σ_{i=lo..=hi} f(i)` with a fresh power for every term.
pub fn sum(lo: i64, hi: i64, f: impl Fn(i64) -> BigRational) -> BigRational {
    (lo..=hi).fold(BigRational::zero(), |acc, i| acc + f(i))
}

/// Master identity, both sides.
pub fn master(a: &BigRational, b: &BigRational, r: &BigRational, c: &BigRational, m: i64) -> (BigRational, BigRational) {
    let lhs = pow(c, m + 1) * u(a, b, r, m + 1);
    let rhs = b - r * a
        + sum(0, m, |i| {
            pow(c, i)
                * ((r - big(1)) * u(a, b, r, i) + (c - big(1)) * u(a, b, r, i + 1) + u(a, b, r, i - 1))
        });
    (lhs, rhs)
}
