use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ArithError;

/// An exact rational number, or the point at infinity.
///
/// Finite values are kept reduced with a positive denominator. Infinity is
/// stored as `1/0`, so structural equality is value equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn narrow(v: i128) -> Result<i64, ArithError> {
    i64::try_from(v).map_err(|_| ArithError::Overflow)
}

impl Rational {
    pub const INFINITY: Rational = Rational { num: 1, den: 0 };
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };
    pub const MINUS_ONE: Rational = Rational { num: -1, den: 1 };

    /// Builds `num/den` in lowest terms. A zero denominator is an error; use
    /// [`Rational::INFINITY`] or [`Rational::from_slope`] for the point at infinity.
    pub fn new(num: i64, den: i64) -> Result<Self, ArithError> {
        Self::from_i128(num as i128, den as i128)
    }

    pub fn integer(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    /// Like [`Rational::new`] but maps `x/0` (x ≠ 0) to infinity.
    pub fn from_slope(num: i64, den: i64) -> Result<Self, ArithError> {
        if den == 0 {
            if num == 0 {
                return Err(ArithError::DivisionByZero);
            }
            return Ok(Self::INFINITY);
        }
        Self::new(num, den)
    }

    pub(crate) fn from_i128(num: i128, den: i128) -> Result<Self, ArithError> {
        if den == 0 {
            return Err(ArithError::DivisionByZero);
        }
        let g = gcd(num, den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Ok(Rational {
            num: narrow(n)?,
            den: narrow(d)?,
        })
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    /// Denominator; zero exactly for infinity.
    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    pub fn is_finite(&self) -> bool {
        self.den != 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0 && self.den != 0
    }

    pub fn is_negative(&self) -> bool {
        self.is_finite() && self.num < 0
    }

    pub fn is_positive(&self) -> bool {
        self.is_finite() && self.num > 0
    }

    fn finite(&self) -> Result<(i128, i128), ArithError> {
        if self.is_infinite() {
            Err(ArithError::Infinite)
        } else {
            Ok((self.num as i128, self.den as i128))
        }
    }

    pub fn floor(&self) -> Result<i64, ArithError> {
        let (n, d) = self.finite()?;
        narrow(n.div_euclid(d))
    }

    pub fn checked_add(&self, rhs: &Rational) -> Result<Rational, ArithError> {
        let (a, b) = self.finite()?;
        let (c, d) = rhs.finite()?;
        Self::from_i128(a * d + c * b, b * d)
    }

    pub fn checked_sub(&self, rhs: &Rational) -> Result<Rational, ArithError> {
        self.checked_add(&rhs.checked_neg()?)
    }

    pub fn checked_mul(&self, rhs: &Rational) -> Result<Rational, ArithError> {
        let (a, b) = self.finite()?;
        let (c, d) = rhs.finite()?;
        Self::from_i128(a * c, b * d)
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, ArithError> {
        let (a, b) = self.finite()?;
        let (c, d) = rhs.finite()?;
        if c == 0 {
            return Err(ArithError::DivisionByZero);
        }
        Self::from_i128(a * d, b * c)
    }

    pub fn checked_neg(&self) -> Result<Rational, ArithError> {
        let (a, b) = self.finite()?;
        Self::from_i128(-a, b)
    }

    pub fn recip(&self) -> Result<Rational, ArithError> {
        Self::ONE.checked_div(self)
    }
}

impl PartialOrd for Rational {
    /// Finite values are totally ordered; infinity is comparable only to itself.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Some(Ordering::Equal),
            (false, false) => {
                let lhs = self.num as i128 * other.den as i128;
                let rhs = other.num as i128 * self.den as i128;
                Some(lhs.cmp(&rhs))
            }
            _ => None,
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational {input:?}: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `n`, `p/q` and `inf` (also `infinity`, `∞`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseRationalError {
            input: s.to_string(),
            reason,
        };
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "∞") {
            return Ok(Rational::INFINITY);
        }
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (t, "1"),
        };
        let p: i64 = p.parse().map_err(|_| err("numerator is not an integer"))?;
        let q: i64 = q
            .parse()
            .map_err(|_| err("denominator is not an integer"))?;
        if q == 0 {
            return Err(err("zero denominator"));
        }
        Rational::new(p, q).map_err(|_| err("out of range"))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
