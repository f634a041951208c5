use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{
    boundary_slope, chain_matrix, neg_cf_expand, tight_count, ArithError, IntMat2, NegCF, Rational,
};

use super::verify::{certificate_clauses, Clause};

/// Everything needed to re-derive a conversion by hand.
///
/// For a negative target `r` the chain realises `r` directly and `twist` is
/// zero. For a positive target `r = p/q` the chain realises
/// `r' = p/(q - k p)` and `lifted = (1 0; k 1) * product` has first column
/// ratio `p/q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConversionCertificate {
    pub target: Rational,
    pub chain_target: Rational,
    pub cf: NegCF,
    pub product: IntMat2,
    pub slope: Rational,
    pub twist: u64,
    pub lifted: IntMat2,
    pub tight_count: u64,
    /// Clause results recorded when the certificate was issued.
    pub checks: BTreeMap<Clause, bool>,
}

/// Smallest `k >= 1` with `q - k p < 0`, for `p/q > 0`.
pub fn minimal_twist(r: Rational) -> Result<u64, ArithError> {
    if !r.is_positive() {
        return Err(ArithError::BadEntry {
            index: 0,
            value: r.numer(),
        });
    }
    let (p, q) = (r.numer(), r.denom());
    Ok((q / p + 1) as u64)
}

/// `p/(q - k p)` for `r = p/q`.
pub fn twisted_coefficient(r: Rational, k: u64) -> Result<Rational, ArithError> {
    let (p, q) = (r.numer() as i128, r.denom() as i128);
    Rational::from_i128(p, q - k as i128 * p)
}

impl ConversionCertificate {
    pub(crate) fn issue(
        target: Rational,
        chain_target: Rational,
        twist: u64,
    ) -> Result<Self, ArithError> {
        let cf = neg_cf_expand(chain_target)?;
        let rs = cf.surgery_coefficients();
        let product = chain_matrix(&rs)?;
        let k = i64::try_from(twist).map_err(|_| ArithError::Overflow)?;
        let mut cert = ConversionCertificate {
            target,
            chain_target,
            slope: boundary_slope(&rs)?,
            lifted: IntMat2::twist(k).checked_mul(&product)?,
            tight_count: tight_count(&rs)?,
            product,
            cf,
            twist,
            checks: BTreeMap::new(),
        };
        cert.checks = certificate_clauses(&cert)
            .into_iter()
            .map(|c| (c.clause, c.passed))
            .collect();
        Ok(cert)
    }

    /// Surgery coefficients `r1, ..., rn` of the chain.
    pub fn chain(&self) -> Vec<i64> {
        self.cf.surgery_coefficients()
    }
}
