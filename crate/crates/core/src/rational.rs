//! Arbitrary-precision rationals kept in canonical form.
//!
//! Every value is stored as `num/den` with `den > 0` and `gcd(|num|, den) = 1`,
//! so derived structural equality coincides with numeric equality. Most of the
//! values flowing through the sequence code are integers, so every operation
//! short-circuits when both denominators are one.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,
    #[error("exponent {0} is too large")]
    ExponentTooLarge(i64),
    #[error("invalid rational `{0}` (expected `p` or `p/q`)")]
    Parse(String),
}

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

/// gcd of two non-negative integers.
///
/// `num-integer` uses Stein's algorithm, which degrades to one subtraction per
/// bit when the operands have very different sizes (e.g. a 2000-digit
/// numerator against a small denominator). One Euclidean remainder step first
/// balances the operands.
fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_one() || b.is_one() {
        return BigInt::one();
    }
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let (big, small) = if a.bits() >= b.bits() { (a, b) } else { (b, a) };
    let rem = big % small;
    if rem.is_zero() {
        small.clone()
    } else if rem.is_one() {
        BigInt::one()
    } else {
        rem.gcd(small)
    }
}

impl Rational {
    /// Builds `num/den`, normalizing sign and reducing.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, RationalError> {
        let num = num.into();
        let den = den.into();
        if den.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
        Ok(Self::reduce(num, den))
    }

    /// `den` must be positive.
    fn reduce(num: BigInt, den: BigInt) -> Self {
        debug_assert!(den.is_positive());
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self { num, den };
        }
        let g = gcd(&num.abs(), &den);
        if g.is_one() {
            Self { num, den }
        } else {
            Self { num: num / &g, den: den / g }
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self { num: n.into(), den: BigInt::one() }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<&BigInt> {
        self.is_integer().then_some(&self.num)
    }

    /// The value as an `i64`, if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(ToPrimitive::to_i64)
    }

    pub fn abs(&self) -> Self {
        Self { num: self.num.abs(), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Self, RationalError> {
        if self.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        let (num, den) = if self.num.is_negative() {
            (-self.den.clone(), -self.num.clone())
        } else {
            (self.den.clone(), self.num.clone())
        };
        Ok(Self { num, den })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, RationalError> {
        Ok(self * &rhs.recip()?)
    }

    /// Integer power. `0^0` is one; zero to a negative power is an error.
    pub fn pow(&self, exp: i64) -> Result<Self, RationalError> {
        let base = if exp < 0 {
            self.recip().map_err(|_| RationalError::ZeroToNegativePower)?
        } else {
            self.clone()
        };
        let e = u32::try_from(exp.unsigned_abs()).map_err(|_| RationalError::ExponentTooLarge(exp))?;
        // Powers of coprime integers stay coprime, so no reduction is needed.
        Ok(Self { num: num_traits::pow::Pow::pow(&base.num, e), den: num_traits::pow::Pow::pow(&base.den, e) })
    }

    fn add_signed(&self, rhs: &Self, negate_rhs: bool) -> Self {
        let rn = if negate_rhs { -&rhs.num } else { rhs.num.clone() };
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return Self { num: rn, den: rhs.den.clone() };
        }
        match (self.den.is_one(), rhs.den.is_one()) {
            (true, true) => Self::from_integer(&self.num + rn),
            // (a + b*d)/d is already in lowest terms when a/d is.
            (false, true) => Self { num: &self.num + rn * &self.den, den: self.den.clone() },
            (true, false) => Self { num: &self.num * &rhs.den + rn, den: rhs.den.clone() },
            (false, false) => {
                if self.den == rhs.den {
                    return Self::reduce(&self.num + rn, self.den.clone());
                }
                let g = gcd(&self.den, &rhs.den);
                if g.is_one() {
                    Self {
                        num: &self.num * &rhs.den + rn * &self.den,
                        den: &self.den * &rhs.den,
                    }
                } else {
                    let ld = &self.den / &g;
                    let rd = &rhs.den / &g;
                    let t = &self.num * &rd + rn * &ld;
                    if t.is_zero() {
                        return Self::zero();
                    }
                    let g2 = gcd(&t.abs(), &g);
                    Self { num: t / &g2, den: ld * (&rhs.den / g2) }
                }
            }
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_integer(&self.num * &rhs.num);
        }
        let g1 = gcd(&self.num.abs(), &rhs.den);
        let g2 = gcd(&rhs.num.abs(), &self.den);
        let cancel = |x: &BigInt, g: &BigInt| if g.is_one() { x.clone() } else { x / g };
        Self {
            num: cancel(&self.num, &g1) * cancel(&rhs.num, &g2),
            den: cancel(&self.den, &g2) * cancel(&rhs.den, &g1),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

macro_rules! from_primitive {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(n: $t) -> Self {
                Self::from_integer(n)
            }
        }
    )*};
}
from_primitive!(i8, i16, i32, i64, i128, u8, u16, u32, u64, u128, isize, usize);

macro_rules! forward_binop {
    ($imp:ident, $method:ident, $body:expr) => {
        impl $imp<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $body(self, rhs)
            }
        }
        impl $imp<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $body(&self, &rhs)
            }
        }
        impl $imp<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $body(&self, rhs)
            }
        }
        impl $imp<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |l: &Rational, r: &Rational| l.add_signed(r, false));
forward_binop!(Sub, sub, |l: &Rational, r: &Rational| l.add_signed(r, true));
forward_binop!(Mul, mul, |l: &Rational, r: &Rational| l.mul_ref(r));

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num += &rhs.num;
        } else {
            *self = self.add_signed(rhs, false);
        }
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self += &rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num -= &rhs.num;
        } else {
            *self = self.add_signed(rhs, true);
        }
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = self.mul_ref(rhs);
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: -self.num, den: self.den }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: -&self.num, den: self.den.clone() }
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            self.num.cmp(&other.num)
        } else {
            (&self.num * &other.den).cmp(&(&other.num * &self.den))
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integers render as plain decimals, everything else as `p/q`.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rational({self})")
    }
}

/// Parses `p`, `-p`, `+p`, `p/q` or `-p/q` with decimal digits only.
impl FromStr for Rational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || RationalError::Parse(s.to_string());
        let t = s.trim();
        let (negative, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let digits = |p: &str| -> Result<BigInt, RationalError> {
            if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            p.parse::<BigInt>().map_err(|_| err())
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (digits(n)?, digits(d)?),
            None => (digits(body)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Rational::new(if negative { -num } else { num }, den)
    }
}
