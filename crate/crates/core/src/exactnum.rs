//! Exact scalars: arbitrary-precision rationals and the quadratic field Q(√3).
//!
//! Every coordinate and squared distance in the crate is one of these, so all
//! equality and ordering decisions are exact. The only floating-point view is
//! [`Quad3::to_f64`], which is for display.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact fraction in canonical form (positive denominator, reduced).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> Ordering {
        self.0.numer().sign().cmp(&num_bigint::Sign::NoSign)
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational> {
        Rational::one().checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> Rational {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Exact square root when `self` is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.0.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &n * &n == *self.numer() && &d * &d == *self.denom() {
            Some(Rational(BigRational::new(n, d)))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

macro_rules! forward_rational_op {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational($tr::$m(&self.0, &rhs.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational($tr::$m(self.0, rhs.0))
            }
        }
    };
}

forward_rational_op!(Add, add);
forward_rational_op!(Sub, sub);
forward_rational_op!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("invalid rational {s:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse_int(n)?, parse_int(d)?),
            None => Ok(Rational::from_integer(parse_int(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The real number `a + b·√3` with rational `a`, `b`.
///
/// Since 1 and √3 are linearly independent over Q, the pair `(a, b)` is a
/// unique representation and structural equality is numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quad3 {
    pub a: Rational,
    pub b: Rational,
}

impl Quad3 {
    pub fn new(a: Rational, b: Rational) -> Self {
        Quad3 { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        Quad3 { a, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Quad3::rational(Rational::from(n))
    }

    pub fn zero() -> Self {
        Quad3::default()
    }

    pub fn one() -> Self {
        Quad3::from_int(1)
    }

    /// √3
    pub fn sqrt3() -> Self {
        Quad3 { a: Rational::zero(), b: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Galois conjugate `a − b√3`.
    pub fn conjugate(&self) -> Quad3 {
        Quad3 { a: self.a.clone(), b: -&self.b }
    }

    /// Field norm `a² − 3b²`.
    pub fn norm(&self) -> Rational {
        &(&self.a * &self.a) - &(&Rational::from(3) * &(&self.b * &self.b))
    }

    /// Exact sign of `a + b√3`.
    pub fn signum(&self) -> Ordering {
        use Ordering::*;
        match (self.a.signum(), self.b.signum()) {
            (s, Equal) | (Equal, s) => s,
            (Greater, Greater) => Greater,
            (Less, Less) => Less,
            // Opposite signs: the rational part wins iff a² > 3b².
            (Greater, Less) => self.norm().signum(),
            (Less, Greater) => self.norm().signum().reverse(),
        }
    }

    pub fn recip(&self) -> Result<Quad3> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = self.norm();
        let c = self.conjugate();
        Ok(Quad3 { a: c.a.checked_div(&norm)?, b: c.b.checked_div(&norm)? })
    }

    pub fn checked_div(&self, rhs: &Quad3) -> Result<Quad3> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, k: &Rational) -> Quad3 {
        Quad3 { a: &self.a * k, b: &self.b * k }
    }

    pub fn square(&self) -> Quad3 {
        self * self
    }

    /// Non-authoritative decimal approximation.
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * 3f64.sqrt()
    }
}

impl From<Rational> for Quad3 {
    fn from(a: Rational) -> Self {
        Quad3::rational(a)
    }
}

impl Add<&Quad3> for &Quad3 {
    type Output = Quad3;
    fn add(self, rhs: &Quad3) -> Quad3 {
        Quad3 { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub<&Quad3> for &Quad3 {
    type Output = Quad3;
    fn sub(self, rhs: &Quad3) -> Quad3 {
        Quad3 { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul<&Quad3> for &Quad3 {
    type Output = Quad3;
    fn mul(self, rhs: &Quad3) -> Quad3 {
        // (a + b√3)(c + d√3) = (ac + 3bd) + (ad + bc)√3
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let ad = &self.a * &rhs.b;
        let bc = &self.b * &rhs.a;
        Quad3 { a: &ac + &(&Rational::from(3) * &bd), b: &ad + &bc }
    }
}

impl Add for Quad3 {
    type Output = Quad3;
    fn add(self, rhs: Quad3) -> Quad3 {
        &self + &rhs
    }
}

impl Sub for Quad3 {
    type Output = Quad3;
    fn sub(self, rhs: Quad3) -> Quad3 {
        &self - &rhs
    }
}

impl Mul for Quad3 {
    type Output = Quad3;
    fn mul(self, rhs: Quad3) -> Quad3 {
        &self * &rhs
    }
}

impl Neg for Quad3 {
    type Output = Quad3;
    fn neg(self) -> Quad3 {
        Quad3 { a: -self.a, b: -self.b }
    }
}

impl Neg for &Quad3 {
    type Output = Quad3;
    fn neg(self) -> Quad3 {
        Quad3 { a: -&self.a, b: -&self.b }
    }
}

impl Ord for Quad3 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl PartialOrd for Quad3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Quad3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*rt3", self.a, self.b)
    }
}

impl FromStr for Quad3 {
    type Err = Error;

    /// Accepts `"a+b*rt3"` as written by `Display`, `"a-b*rt3"`, or a bare
    /// rational.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.strip_suffix("*rt3") {
            Some(body) => {
                // Skip a leading sign on `a`; the next sign separates the parts.
                let bad = || Error::Parse(format!("invalid Q(rt3) element {s:?}"));
                let at = body.char_indices().skip(1).find(|&(_, c)| c == '+' || c == '-').ok_or_else(bad)?.0;
                let (a, b) = (&body[..at], &body[at + 1..]);
                let b: Rational = b.parse()?;
                let b = if body.as_bytes()[at] == b'-' { -b } else { b };
                Ok(Quad3 { a: a.parse()?, b })
            }
            None => Ok(Quad3::rational(s.parse()?)),
        }
    }
}

impl Serialize for Quad3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Quad3 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `cos(step · 30°)` as an exact element of Q(√3).
pub fn cos30_table(step: u32) -> Quad3 {
    let half = || Rational::new(1, 2).expect("nonzero denominator");
    let (a, b) = match step % 12 {
        0 => (Rational::one(), Rational::zero()),
        1 | 11 => (Rational::zero(), half()),
        2 | 10 => (half(), Rational::zero()),
        3 | 9 => (Rational::zero(), Rational::zero()),
        4 | 8 => (-half(), Rational::zero()),
        5 | 7 => (Rational::zero(), -half()),
        6 => (-Rational::one(), Rational::zero()),
        _ => unreachable!(),
    };
    Quad3 { a, b }
}

/// `sin(step · 30°)`, read off the cosine table shifted by a quarter turn.
pub fn sin30_table(step: u32) -> Quad3 {
    cos30_table((step % 12 + 9) % 12)
}
