//! Independent re-derivation of every certificate clause.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{
    boundary_slope, cf_eval, chain_matrix, reversed_shifted_cf, tight_count, truncated_slope,
    IntMat2, NegCF, Rational,
};

use super::certificate::{minimal_twist, twisted_coefficient, ConversionCertificate};
use super::convert::{Branch, ConvertedComponent, PmOneDiagram};
use super::instruction::{allowed_rotations, rotation_allowed, PmSign, Provenance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    /// `a1 <= -1`, `ai <= -2`.
    CfBounds,
    /// The continued fraction evaluates to the chain target.
    CfValue,
    /// The stored product equals the recomputed chain matrix.
    ChainMatrix,
    /// Product and lifted matrix have determinant 1.
    Determinant,
    /// First column ratio of the product is the chain target.
    ColumnRatio,
    /// Stored slope solves the boundary system.
    BoundarySlope,
    /// Slope equals the reversed shifted fraction and its truncation.
    SlopeDuality,
    /// Twist count is the minimal admissible one and the chain target
    /// matches it.
    Twist,
    /// `(1 0; k 1) (p p'; q-kp q'-kp') = (p p'; q q')` with ratio `p/q = r`.
    TwistIdentity,
    /// Stored count equals `|prod (ri + 1)|`.
    TightCount,
    /// Instructions realise the certified chain.
    Instructions,
    /// Enumerating the admissible rotation tuples yields the stored count.
    Enumeration,
    /// k >= 2 push-offs for a (1/k)-surgery; accepted, not derived.
    ReplacementLemma,
    /// The recorded check table agrees with the re-derived one.
    Recorded,
    /// The component went through the right branch for its coefficient.
    Dispatch,
    /// Every coefficient is +1 or -1.
    TargetForm,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseResult {
    pub component: String,
    pub clause: Clause,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VerifyReport {
    pub entries: Vec<ClauseResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClauseResult> {
        self.entries.iter().filter(|e| !e.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .map(|e| e.component.len())
            .max()
            .unwrap_or(0)
            .max("component".len());
        writeln!(f, "{:<width$}  {:<18}  result", "component", "clause")?;
        for e in &self.entries {
            let verdict = if e.passed { "pass" } else { "FAIL" };
            write!(
                f,
                "{:<width$}  {:<18}  {verdict}",
                e.component,
                e.clause.to_string()
            )?;
            if !e.note.is_empty() {
                write!(f, "  ({})", e.note)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub(crate) struct Check {
    pub clause: Clause,
    pub passed: bool,
}

fn check(clause: Clause, passed: bool) -> Check {
    Check { clause, passed }
}

/// Clauses that depend on the certificate alone.
pub(crate) fn certificate_clauses(cert: &ConversionCertificate) -> Vec<Check> {
    let entries = cert.cf.entries();
    let bounds = NegCF::new(entries.to_vec()).is_ok();
    let rs: Option<Vec<i64>> = bounds.then(|| cert.cf.surgery_coefficients());
    let rs = rs.as_deref();

    let cf_value = cf_eval(entries)
        .map(|v| v == cert.chain_target)
        .unwrap_or(false);
    let chain = rs
        .and_then(|rs| chain_matrix(rs).ok())
        .map(|m| m == cert.product)
        .unwrap_or(false);
    let det = cert.product.det() == 1 && cert.lifted.det() == 1;
    let ratio = cert
        .product
        .column_ratio()
        .map(|v| v == cert.chain_target)
        .unwrap_or(false);
    let slope = rs
        .and_then(|rs| boundary_slope(rs).ok())
        .map(|s| s == cert.slope)
        .unwrap_or(false);
    let duality = rs
        .map(|rs| {
            reversed_shifted_cf(rs).ok() == Some(cert.slope)
                && truncated_slope(rs).ok() == Some(cert.slope)
        })
        .unwrap_or(false);
    let twist = if cert.target.is_positive() {
        minimal_twist(cert.target).ok() == Some(cert.twist)
            && twisted_coefficient(cert.target, cert.twist).ok() == Some(cert.chain_target)
    } else if cert.target.is_negative() {
        cert.twist == 0 && cert.chain_target == cert.target
    } else {
        false
    };
    let identity = twist_identity(cert);
    let count = rs
        .and_then(|rs| tight_count(rs).ok())
        .map(|n| n == cert.tight_count)
        .unwrap_or(false);

    vec![
        check(Clause::CfBounds, bounds),
        check(Clause::CfValue, cf_value),
        check(Clause::ChainMatrix, chain),
        check(Clause::Determinant, det),
        check(Clause::ColumnRatio, ratio),
        check(Clause::BoundarySlope, slope),
        check(Clause::SlopeDuality, duality),
        check(Clause::Twist, twist),
        check(Clause::TwistIdentity, identity),
        check(Clause::TightCount, count),
    ]
}

fn twist_identity(cert: &ConversionCertificate) -> bool {
    let Ok(k) = i64::try_from(cert.twist) else {
        return false;
    };
    let IntMat2 {
        a: p,
        b: p2,
        c: q,
        d: q2,
    } = cert.lifted;
    let (Some(lower_left), Some(lower_right)) = (
        k.checked_mul(p).and_then(|kp| q.checked_sub(kp)),
        k.checked_mul(p2).and_then(|kp| q2.checked_sub(kp)),
    ) else {
        return false;
    };
    let untwisted = IntMat2::new(p, p2, lower_left, lower_right);
    untwisted == cert.product
        && IntMat2::twist(k).checked_mul(&untwisted).ok() == Some(cert.lifted)
        && cert.lifted.column_ratio().ok() == Some(cert.target)
}

/// Counts rotation tuples by walking every combination.
fn enumerate_tuples(tbs: &[i64]) -> u64 {
    let sets: Vec<Vec<i64>> = tbs
        .iter()
        .map(|&tb| allowed_rotations(tb).collect())
        .collect();
    if sets.iter().any(|s| s.is_empty()) {
        return 0;
    }
    let mut idx = vec![0usize; sets.len()];
    let mut count = 0u64;
    'outer: loop {
        count += 1;
        for pos in (0..idx.len()).rev() {
            idx[pos] += 1;
            if idx[pos] < sets[pos].len() {
                continue 'outer;
            }
            idx[pos] = 0;
        }
        break;
    }
    count
}

fn instruction_clauses(
    c: &ConvertedComponent,
    cert: &ConversionCertificate,
) -> Vec<(Clause, bool, String)> {
    let k = usize::try_from(cert.twist).unwrap_or(usize::MAX);
    let rs = cert.cf.surgery_coefficients();
    let instrs = &c.instructions;
    let shape_ok = k
        .checked_add(rs.len())
        .map(|n| n == instrs.len())
        .unwrap_or(false);
    let mut ok = shape_ok && instrs.iter().all(|i| i.parent == c.id);
    if ok {
        for (level, i) in instrs.iter().enumerate() {
            let good = if level < k {
                i.coefficient == PmSign::Plus
                    && i.provenance == Provenance::PushOff
                    && i.tb_local == -1
                    && i.rot_choice == 0
            } else {
                let r = rs[level - k];
                i.coefficient == PmSign::Minus
                    && i.provenance == Provenance::NegativeChain
                    && i.tb_local == r + 1
                    && rotation_allowed(i.tb_local, i.rot_choice)
            };
            ok &= good && i.level == level;
        }
    }
    let chain_tbs: Vec<i64> = instrs
        .iter()
        .filter(|i| i.provenance == Provenance::NegativeChain)
        .map(|i| i.tb_local)
        .collect();
    let enumerated = enumerate_tuples(&chain_tbs);
    let mut out = vec![
        (Clause::Instructions, ok, String::new()),
        (
            Clause::Enumeration,
            enumerated == cert.tight_count,
            format!("{enumerated} tuples"),
        ),
    ];
    if cert.twist >= 2 {
        let push_offs = instrs
            .iter()
            .filter(|i| i.provenance == Provenance::PushOff)
            .count();
        out.push((
            Clause::ReplacementLemma,
            push_offs == k,
            "assumed replacement lemma".to_string(),
        ));
    }
    out
}

fn dispatch_ok(c: &ConvertedComponent) -> bool {
    if c.branch != Branch::of(c.coefficient) {
        return false;
    }
    let single = |sign: PmSign, prov: Provenance| -> Option<&super::PmOneInstruction> {
        match c.instructions.as_slice() {
            [only]
                if only.coefficient == sign && only.provenance == prov && only.parent == c.id =>
            {
                Some(only)
            }
            _ => None,
        }
    };
    match c.branch {
        Branch::Dropped => c.instructions.is_empty() && c.certificate.is_none(),
        Branch::Passthrough => {
            let sign = if c.coefficient == Rational::ONE {
                PmSign::Plus
            } else {
                PmSign::Minus
            };
            c.certificate.is_none()
                && single(sign, Provenance::Passthrough)
                    .map(|i| i.tb_local == c.tb && i.rot_choice == c.rot && i.level == 0)
                    .unwrap_or(false)
        }
        Branch::Zero => {
            c.certificate.is_none()
                && single(PmSign::Plus, Provenance::ZeroSurgery)
                    .map(|i| i.tb_local == -1 && i.rot_choice == 0 && i.level == 0)
                    .unwrap_or(false)
        }
        Branch::Negative | Branch::Positive => c
            .certificate
            .as_ref()
            .map(|cert| cert.target == c.coefficient)
            .unwrap_or(false),
    }
}

/// Re-derives every clause of every component. Failures are report
/// entries, never errors.
pub fn verify(diagram: &PmOneDiagram) -> VerifyReport {
    let mut entries = Vec::new();
    for c in &diagram.components {
        let mut push = |clause, passed, note: String| {
            entries.push(ClauseResult {
                component: c.id.clone(),
                clause,
                passed,
                note,
            })
        };
        push(
            Clause::Dispatch,
            dispatch_ok(c),
            format!("{:?}", c.branch).to_lowercase(),
        );
        push(
            Clause::TargetForm,
            c.instructions
                .iter()
                .all(|i| matches!(i.coefficient.value(), 1 | -1)),
            String::new(),
        );
        if let Some(cert) = &c.certificate {
            let derived: BTreeMap<Clause, bool> = certificate_clauses(cert)
                .into_iter()
                .map(|ch| (ch.clause, ch.passed))
                .collect();
            for (&clause, &passed) in &derived {
                push(clause, passed, String::new());
            }
            for (clause, passed, note) in instruction_clauses(c, cert) {
                push(clause, passed, note);
            }
            push(Clause::Recorded, derived == cert.checks, String::new());
        }
    }
    VerifyReport { entries }
}
