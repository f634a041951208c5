use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::rational::gcd;
use super::{cf_eval, check_chain, ArithError, Rational};

/// A 2x2 integer matrix `(a b; c d)`.
///
/// Columns are the images of the basis curves `(mu, lambda)`, so a gluing
/// map `mu0 -> p*mu + q*lambda` has first column `(p, q)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntMat2 {
    pub const IDENTITY: IntMat2 = IntMat2::new(1, 0, 0, 1);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMat2 { a, b, c, d }
    }

    /// `(1 1; 0 1)`: twists the contact framing of the outer torus by -1.
    pub const fn framing_shift() -> Self {
        IntMat2::new(1, 1, 0, 1)
    }

    /// `(-r 1; -1 0)`: gluing of the solid torus after contact (-1)-surgery on
    /// a knot of local Thurston-Bennequin invariant `r + 1`.
    pub const fn gluing(r: i64) -> Self {
        IntMat2::new(-r, 1, -1, 0)
    }

    /// `(1 0; k 1)`: the gluing map `mu0 -> mu + k*lambda` of (1/k)-surgery.
    pub const fn twist(k: i64) -> Self {
        IntMat2::new(1, 0, k, 1)
    }

    pub fn det(&self) -> i128 {
        self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128
    }

    pub fn checked_mul(&self, rhs: &IntMat2) -> Result<IntMat2, ArithError> {
        let dot = |x: i64, y: i64, z: i64, w: i64| -> Result<i64, ArithError> {
            let v = x as i128 * y as i128 + z as i128 * w as i128;
            i64::try_from(v).map_err(|_| ArithError::Overflow)
        };
        Ok(IntMat2 {
            a: dot(self.a, rhs.a, self.b, rhs.c)?,
            b: dot(self.a, rhs.b, self.b, rhs.d)?,
            c: dot(self.c, rhs.a, self.d, rhs.c)?,
            d: dot(self.c, rhs.b, self.d, rhs.d)?,
        })
    }

    pub fn apply(&self, x: i64, y: i64) -> Result<(i64, i64), ArithError> {
        let row = |u: i64, v: i64| {
            i64::try_from(u as i128 * x as i128 + v as i128 * y as i128)
                .map_err(|_| ArithError::Overflow)
        };
        Ok((row(self.a, self.b)?, row(self.c, self.d)?))
    }

    /// Inverse of a matrix with determinant +-1.
    pub fn inverse(&self) -> Result<IntMat2, ArithError> {
        match self.det() {
            1 => Ok(IntMat2::new(self.d, -self.b, -self.c, self.a)),
            -1 => Ok(IntMat2::new(-self.d, self.b, self.c, -self.a)),
            det => Err(ArithError::SingularMatrix { det }),
        }
    }

    /// Ratio `a/c` of the first column, i.e. the surgery coefficient `p/q`
    /// realised by a gluing matrix.
    pub fn column_ratio(&self) -> Result<Rational, ArithError> {
        Rational::from_slope(self.a, self.c)
    }
}

impl Mul for IntMat2 {
    type Output = IntMat2;

    /// Panics on overflow; use [`IntMat2::checked_mul`] for untrusted input.
    fn mul(self, rhs: IntMat2) -> IntMat2 {
        self.checked_mul(&rhs)
            .expect("IntMat2 multiplication overflow")
    }
}

impl fmt::Display for IntMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for IntMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The homology class `p*mu + q*lambda` of a simple closed curve on a torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Curve {
    p: i64,
    q: i64,
}

impl Curve {
    pub const MERIDIAN: Curve = Curve { p: 1, q: 0 };
    pub const LONGITUDE: Curve = Curve { p: 0, q: 1 };

    pub fn new(p: i64, q: i64) -> Result<Self, ArithError> {
        if (p, q) == (0, 0) {
            return Err(ArithError::NotPrimitive { p, q });
        }
        if gcd(p as i128, q as i128) != 1 {
            return Err(ArithError::NotPrimitive { p, q });
        }
        Ok(Curve { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Slope `q/p`: the meridian has slope 0 and the longitude slope infinity.
    pub fn slope(&self) -> Rational {
        Rational::from_slope(self.q, self.p).expect("primitive curve")
    }

    pub fn reversed(&self) -> Curve {
        Curve {
            p: -self.p,
            q: -self.q,
        }
    }
}

/// Image of a curve under a unimodular map.
pub fn mobius_curve(m: &IntMat2, c: Curve) -> Result<Curve, ArithError> {
    let det = m.det();
    if det.abs() != 1 {
        return Err(ArithError::SingularMatrix { det });
    }
    let (p, q) = m.apply(c.p, c.q)?;
    // unimodular maps preserve primitivity
    Ok(Curve { p, q })
}

fn gluing_product(rs: &[i64]) -> Result<IntMat2, ArithError> {
    rs.iter().try_fold(IntMat2::IDENTITY, |acc, &r| {
        acc.checked_mul(&IntMat2::gluing(r))
    })
}

/// `(1 1; 0 1) * prod (-ri 1; -1 0)`, the total gluing of a chain of
/// contact (-1)-surgeries with coefficients `r1, ..., rn <= -2`.
///
/// The first column `(p, q)` satisfies `p/q = [r1 + 1, r2, ..., rn]`.
pub fn chain_matrix(rs: &[i64]) -> Result<IntMat2, ArithError> {
    check_chain(rs)?;
    IntMat2::framing_shift().checked_mul(&gluing_product(rs)?)
}

/// Slope of the outer boundary after the chain of surgeries: `y/x` where
/// `prod (-ri 1; -1 0) * (x, y) = (-1, 1)`.
pub fn boundary_slope(rs: &[i64]) -> Result<Rational, ArithError> {
    check_chain(rs)?;
    let inv = gluing_product(rs)?.inverse()?;
    let (x, y) = inv.apply(-1, 1)?;
    Rational::from_slope(y, x)
}

/// `[rn, ..., r2, r1 + 1]` evaluated as a continued fraction.
pub fn reversed_shifted_cf(rs: &[i64]) -> Result<Rational, ArithError> {
    check_chain(rs)?;
    let mut entries: Vec<i64> = rs.iter().rev().copied().collect();
    *entries.last_mut().unwrap() += 1;
    cf_eval(&entries)
}

/// `[rn, ..., r(k+1), rk + 1]` with `k` the first index where `rk < -2`, or
/// `-1` when every entry is `-2`.
pub fn truncated_slope(rs: &[i64]) -> Result<Rational, ArithError> {
    check_chain(rs)?;
    match rs.iter().position(|&r| r < -2) {
        None => Ok(Rational::MINUS_ONE),
        Some(k) => {
            let mut entries: Vec<i64> = rs[k..].iter().rev().copied().collect();
            *entries.last_mut().unwrap() += 1;
            cf_eval(&entries)
        }
    }
}

/// Number of tight structures on the solid torus with the boundary slope
/// produced by the chain: `|(rn + 1) ... (r1 + 1)|`.
pub fn tight_count(rs: &[i64]) -> Result<u64, ArithError> {
    check_chain(rs)?;
    rs.iter().try_fold(1u64, |acc, &r| {
        acc.checked_mul((r + 1).unsigned_abs())
            .ok_or(ArithError::Overflow)
    })
}
