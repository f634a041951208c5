//! Exact arithmetic: rationals with infinity, negative continued fractions and
//! 2x2 integer matrices.

mod cf;
mod mat2;
mod rational;

pub use cf::{cf_eval, neg_cf_expand, NegCF};
pub use mat2::{
    boundary_slope, chain_matrix, mobius_curve, reversed_shifted_cf, tight_count, truncated_slope,
    Curve, IntMat2,
};
pub use rational::{ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("integer overflow")]
    Overflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined at infinity")]
    Infinite,
    #[error("coefficient {0} is not negative")]
    NonNegativeCoefficient(Rational),
    #[error("entry {value} at position {index} is out of range")]
    BadEntry { index: usize, value: i64 },
    #[error("empty list")]
    EmptyList,
    #[error("matrix with determinant {det} is not unimodular")]
    SingularMatrix { det: i128 },
    #[error("({p}, {q}) is not a primitive class")]
    NotPrimitive { p: i64, q: i64 },
}

/// Surgery coefficients of a chain must be nonempty and all `<= -2`.
pub(crate) fn check_chain(rs: &[i64]) -> Result<(), ArithError> {
    if rs.is_empty() {
        return Err(ArithError::EmptyList);
    }
    if rs.contains(&i64::MIN) {
        return Err(ArithError::Overflow);
    }
    match rs.iter().position(|&r| r > -2) {
        Some(index) => Err(ArithError::BadEntry {
            index,
            value: rs[index],
        }),
        None => Ok(()),
    }
}
