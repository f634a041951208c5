//! Negative continued fractions `[a1, ..., an] = a1 - 1/(a2 - 1/(... - 1/an))`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ArithError, Rational};

/// A negative continued fraction with `a1 <= -1` and `ai <= -2` for `i >= 2`.
///
/// Shifting the first entry down by one gives the surgery coefficients
/// `r1 = a1 - 1, ri = ai`, all of which are `<= -2`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NegCF(Vec<i64>);

impl NegCF {
    /// Checks the entry bounds.
    pub fn new(entries: Vec<i64>) -> Result<Self, ArithError> {
        if entries.is_empty() {
            return Err(ArithError::EmptyList);
        }
        for (i, &a) in entries.iter().enumerate() {
            let bound = if i == 0 { -1 } else { -2 };
            if a > bound {
                return Err(ArithError::BadEntry { index: i, value: a });
            }
        }
        Ok(NegCF(entries))
    }

    /// Inverse of [`NegCF::surgery_coefficients`].
    pub fn from_surgery_coefficients(rs: &[i64]) -> Result<Self, ArithError> {
        super::check_chain(rs)?;
        let mut entries = rs.to_vec();
        entries[0] += 1;
        Ok(NegCF(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(a1 - 1, a2, ..., an)`.
    pub fn surgery_coefficients(&self) -> Vec<i64> {
        let mut rs = self.0.clone();
        if let Some(first) = rs.first_mut() {
            *first = first.saturating_sub(1);
        }
        rs
    }

    pub fn value(&self) -> Result<Rational, ArithError> {
        cf_eval(&self.0)
    }
}

impl fmt::Display for NegCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for NegCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical negative continued fraction of `r < 0`.
///
/// Runs Euclid with negative remainders: take `a = floor(r)` (or `r` itself
/// when integral) and continue with `-1/(r - a)`. Each step strictly shrinks
/// the denominator, so this terminates.
pub fn neg_cf_expand(r: Rational) -> Result<NegCF, ArithError> {
    if !r.is_negative() {
        return Err(ArithError::NonNegativeCoefficient(r));
    }
    let (mut num, mut den) = (r.numer(), r.denom());
    let mut entries = Vec::new();
    loop {
        if den == 1 {
            entries.push(num);
            break;
        }
        let a = num.div_euclid(den);
        let rem = num - a * den;
        entries.push(a);
        // r - a = rem/den with 0 < rem < den, so the next value is -den/rem.
        num = -den;
        den = rem;
    }
    NegCF::new(entries)
}

/// Evaluates `a1 - 1/(a2 - 1/(... - 1/an))` exactly for any integer list.
pub fn cf_eval(entries: &[i64]) -> Result<Rational, ArithError> {
    let (&last, rest) = entries.split_last().ok_or(ArithError::EmptyList)?;
    let mut value = Rational::integer(last);
    for &a in rest.iter().rev() {
        if value.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        value = Rational::integer(a).checked_sub(&value.recip()?)?;
    }
    Ok(value)
}
