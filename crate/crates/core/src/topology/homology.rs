use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::surgery::ContactDiagram;

use super::snf::{smith_diagonal, IntMatrix};
use super::TopologyError;

/// Converts a contact surgery coefficient to the Seifert-framed one.
pub fn smooth_coefficient(tb: i64, r: Rational) -> Result<Rational, TopologyError> {
    if r.is_infinite() {
        return Err(TopologyError::InfiniteCoefficient(r.to_string()));
    }
    Ok(Rational::integer(tb).checked_add(&r)?)
}

/// Relation matrix of a rational surgery: row `i` is `q_i` times the linking
/// row of component `i`, with `p_i` on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkingMatrix {
    pub ids: Vec<String>,
    pub matrix: IntMatrix,
}

pub fn generalized_linking_matrix(
    diagram: &ContactDiagram,
) -> Result<LinkingMatrix, TopologyError> {
    diagram.validate()?;
    let n = diagram.components.len();
    let mut matrix = IntMatrix::zeros(n, n);
    for (i, c) in diagram.components.iter().enumerate() {
        if c.coefficient.is_infinite() {
            return Err(TopologyError::InfiniteCoefficient(c.id.clone()));
        }
        let tb = diagram.knot_data(i)?.tb;
        let smooth = smooth_coefficient(tb, c.coefficient)?;
        let (p, q) = (smooth.numer(), smooth.denom());
        for j in 0..n {
            matrix[(i, j)] = if i == j {
                p
            } else {
                let lk =
                    diagram
                        .linking(i, j)
                        .ok_or_else(|| TopologyError::MissingLinkingData {
                            a: c.id.clone(),
                            b: diagram.components[j].id.clone(),
                        })?;
                q.checked_mul(lk).ok_or(TopologyError::Overflow)?
            };
        }
    }
    Ok(LinkingMatrix {
        ids: diagram.components.iter().map(|c| c.id.clone()).collect(),
        matrix,
    })
}

/// A finitely generated abelian group `Z^free_rank + Z/d1 + ... + Z/dk` with
/// `2 <= d1 | d2 | ... | dk`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Cokernel of `m` viewed as a map `Z^cols -> Z^rows`.
    pub fn cokernel(m: &IntMatrix) -> Result<Self, TopologyError> {
        let diag = smith_diagonal(m)?;
        let nonzero = diag.iter().filter(|&&d| d != 0).count();
        Ok(AbelianGroup {
            free_rank: m.rows() - nonzero,
            torsion: diag
                .iter()
                .map(|d| d.unsigned_abs())
                .filter(|&d| d >= 2)
                .collect(),
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<u128> {
        if self.free_rank > 0 {
            return None;
        }
        self.torsion
            .iter()
            .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// First homology of the surgered manifold, read off the input coefficients.
pub fn first_homology(diagram: &ContactDiagram) -> Result<AbelianGroup, TopologyError> {
    let lm = generalized_linking_matrix(diagram)?;
    AbelianGroup::cokernel(&lm.matrix)
}
