use serde::{Deserialize, Serialize};

use crate::arith::Rational;

use super::certificate::{minimal_twist, twisted_coefficient, ConversionCertificate};
use super::instruction::{rotation_allowed, PmOneInstruction, PmSign, Policy, Provenance};
use super::{ContactDiagram, SurgeryError};

/// Which rewrite a coefficient is sent through. Every `r` in `Q ∪ {∞}`
/// lands in exactly one branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `r = ∞`: trivial surgery, the component disappears.
    Dropped,
    /// `r = ±1`.
    Passthrough,
    /// `r = 0`.
    Zero,
    /// `r < 0`, `r ≠ -1`.
    Negative,
    /// `r > 0`, `r ≠ 1`.
    Positive,
}

impl Branch {
    pub fn of(r: Rational) -> Branch {
        if r.is_infinite() {
            Branch::Dropped
        } else if r == Rational::ONE || r == Rational::MINUS_ONE {
            Branch::Passthrough
        } else if r.is_zero() {
            Branch::Zero
        } else if r.is_negative() {
            Branch::Negative
        } else {
            Branch::Positive
        }
    }
}

/// One input component after conversion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvertedComponent {
    pub id: String,
    /// The original contact coefficient.
    pub coefficient: Rational,
    pub tb: i64,
    pub rot: i64,
    pub branch: Branch,
    pub instructions: Vec<PmOneInstruction>,
    pub certificate: Option<ConversionCertificate>,
}

/// A contact (±1)-surgery presentation, grouped by input component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PmOneDiagram {
    pub policy: Policy,
    pub components: Vec<ConvertedComponent>,
}

impl PmOneDiagram {
    pub fn instructions(&self) -> impl Iterator<Item = &PmOneInstruction> {
        self.components.iter().flat_map(|c| c.instructions.iter())
    }

    /// Rotation choices of all (-1)-chain instructions in component order.
    pub fn choice_tuple(&self) -> Vec<i64> {
        self.instructions()
            .filter(|i| i.provenance == Provenance::NegativeChain)
            .map(|i| i.rot_choice)
            .collect()
    }
}

/// Rotation at a chain level under a policy that does not list choices.
fn default_rotation(tb: i64, policy: &Policy) -> i64 {
    let m = -tb - 1;
    match policy {
        Policy::AllPositive => m,
        _ => -m,
    }
}

fn chain_instructions(
    parent: &str,
    rs: &[i64],
    first_level: usize,
    choices: &[i64],
) -> Result<Vec<PmOneInstruction>, SurgeryError> {
    if choices.len() != rs.len() {
        return Err(SurgeryError::ChoiceCount {
            expected: rs.len(),
            found: choices.len(),
        });
    }
    rs.iter()
        .zip(choices)
        .enumerate()
        .map(|(i, (&r, &rot))| {
            let tb = r + 1;
            let level = first_level + i;
            if !rotation_allowed(tb, rot) {
                return Err(SurgeryError::BadChoice { level, tb, rot });
            }
            Ok(PmOneInstruction {
                coefficient: PmSign::Minus,
                level,
                tb_local: tb,
                rot_choice: rot,
                parent: parent.to_string(),
                provenance: Provenance::NegativeChain,
            })
        })
        .collect()
}

fn push_off(parent: &str, level: usize, provenance: Provenance) -> PmOneInstruction {
    PmOneInstruction {
        coefficient: PmSign::Plus,
        level,
        tb_local: -1,
        rot_choice: 0,
        parent: parent.to_string(),
        provenance,
    }
}

fn resolve_choices(rs: &[i64], choices: Option<&[i64]>) -> Vec<i64> {
    match choices {
        Some(c) => c.to_vec(),
        None => rs
            .iter()
            .map(|&r| default_rotation(r + 1, &Policy::AllNegative))
            .collect(),
    }
}

/// Replaces contact `r`-surgery, `r < 0`, by a chain of contact
/// (-1)-surgeries with `tb_local = ri + 1`.
///
/// Without `choices` every level takes its most negative rotation number.
pub fn convert_negative(
    parent: &str,
    r: Rational,
    choices: Option<&[i64]>,
) -> Result<(Vec<PmOneInstruction>, ConversionCertificate), SurgeryError> {
    if !r.is_negative() {
        return Err(SurgeryError::NonNegativeCoefficient(r));
    }
    let cert = ConversionCertificate::issue(r, r, 0)?;
    let rs = cert.chain();
    let instructions = chain_instructions(parent, &rs, 0, &resolve_choices(&rs, choices))?;
    Ok((instructions, cert))
}

/// Replaces contact `r`-surgery, `r = p/q > 0`, by `k` contact
/// (+1)-surgeries on push-offs (a (1/k)-surgery, `k` minimal with
/// `q - k p < 0`) followed by the chain for `r' = p/(q - k p)`.
pub fn convert_positive(
    parent: &str,
    r: Rational,
    choices: Option<&[i64]>,
) -> Result<(Vec<PmOneInstruction>, ConversionCertificate), SurgeryError> {
    if !r.is_positive() {
        return Err(SurgeryError::NonPositiveCoefficient(r));
    }
    let k = minimal_twist(r)?;
    let cert = ConversionCertificate::issue(r, twisted_coefficient(r, k)?, k)?;
    let rs = cert.chain();
    let k = k as usize;
    let mut instructions: Vec<_> = (0..k)
        .map(|level| push_off(parent, level, Provenance::PushOff))
        .collect();
    instructions.extend(chain_instructions(
        parent,
        &rs,
        k,
        &resolve_choices(&rs, choices),
    )?);
    Ok((instructions, cert))
}

/// Contact 0-surgery becomes a single contact (+1)-surgery on a companion.
pub fn convert_zero(parent: &str) -> Vec<PmOneInstruction> {
    vec![push_off(parent, 0, Provenance::ZeroSurgery)]
}

/// Chain length and default choices for one component, used to slice a
/// flat policy tuple.
fn chain_for(r: Rational) -> Result<Vec<i64>, SurgeryError> {
    Ok(match Branch::of(r) {
        Branch::Negative => crate::arith::neg_cf_expand(r)?.surgery_coefficients(),
        Branch::Positive => {
            let k = minimal_twist(r)?;
            crate::arith::neg_cf_expand(twisted_coefficient(r, k)?)?.surgery_coefficients()
        }
        _ => Vec::new(),
    })
}

fn convert_component(
    diagram: &ContactDiagram,
    index: usize,
    policy: &Policy,
    tuple: &mut std::slice::Iter<'_, i64>,
) -> Result<ConvertedComponent, SurgeryError> {
    let c = &diagram.components[index];
    let data = diagram.knot_data(index)?;
    let r = c.coefficient;
    let branch = Branch::of(r);
    let rs = chain_for(r)?;
    let choices: Vec<i64> = match policy {
        Policy::Tuple(_) => {
            let taken: Vec<i64> = tuple.by_ref().take(rs.len()).copied().collect();
            if taken.len() != rs.len() {
                return Err(SurgeryError::ChoiceCount {
                    expected: rs.len(),
                    found: taken.len(),
                });
            }
            taken
        }
        _ => rs
            .iter()
            .map(|&ri| default_rotation(ri + 1, policy))
            .collect(),
    };
    let (instructions, certificate) = match branch {
        Branch::Dropped => (Vec::new(), None),
        Branch::Passthrough => {
            let sign = if r == Rational::ONE {
                PmSign::Plus
            } else {
                PmSign::Minus
            };
            let only = PmOneInstruction {
                coefficient: sign,
                level: 0,
                tb_local: data.tb,
                rot_choice: data.rot,
                parent: c.id.clone(),
                provenance: Provenance::Passthrough,
            };
            (vec![only], None)
        }
        Branch::Zero => (convert_zero(&c.id), None),
        Branch::Negative => {
            let (i, cert) = convert_negative(&c.id, r, Some(&choices))?;
            (i, Some(cert))
        }
        Branch::Positive => {
            let (i, cert) = convert_positive(&c.id, r, Some(&choices))?;
            (i, Some(cert))
        }
    };
    Ok(ConvertedComponent {
        id: c.id.clone(),
        coefficient: r,
        tb: data.tb,
        rot: data.rot,
        branch,
        instructions,
        certificate,
    })
}

/// Converts every component of a diagram to contact (±1)-surgeries.
///
/// Errors from individual components are collected and reported together.
pub fn convert(diagram: &ContactDiagram, policy: &Policy) -> Result<PmOneDiagram, SurgeryError> {
    diagram.validate()?;
    let empty = Vec::new();
    let flat = match policy {
        Policy::Tuple(v) => v,
        _ => &empty,
    };
    let mut tuple = flat.iter();
    let mut components = Vec::with_capacity(diagram.components.len());
    let mut errors = Vec::new();
    for index in 0..diagram.components.len() {
        match convert_component(diagram, index, policy, &mut tuple) {
            Ok(c) => components.push(c),
            Err(e) => errors.push((diagram.components[index].id.clone(), e)),
        }
    }
    if !errors.is_empty() {
        return Err(SurgeryError::Components(errors));
    }
    let leftover = tuple.len();
    if leftover > 0 {
        return Err(SurgeryError::ChoiceCount {
            expected: flat.len() - leftover,
            found: flat.len(),
        });
    }
    Ok(PmOneDiagram {
        policy: policy.clone(),
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surgery::DiagramComponent;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn tbs(instrs: &[PmOneInstruction]) -> Vec<i64> {
        instrs.iter().map(|i| i.tb_local).collect()
    }

    fn signs(instrs: &[PmOneInstruction]) -> Vec<i64> {
        instrs.iter().map(|i| i.coefficient.value()).collect()
    }

    #[test]
    fn negative_examples() {
        let (i, c) = convert_negative("K", q("-1"), None).unwrap();
        assert_eq!(tbs(&i), vec![-1]);
        assert_eq!(c.tight_count, 1);

        let (i, c) = convert_negative("K", q("-5/3"), None).unwrap();
        assert_eq!(tbs(&i), vec![-2, -2]);
        assert_eq!(signs(&i), vec![-1, -1]);
        assert_eq!(c.tight_count, 4);
        assert_eq!(
            i.iter().map(|x| x.rot_choice).collect::<Vec<_>>(),
            vec![-1, -1]
        );

        for n in -12..=-1 {
            let (i, _) = convert_negative("K", Rational::integer(n), None).unwrap();
            assert_eq!(tbs(&i), vec![n]);
        }
        assert!(matches!(
            convert_negative("K", q("1/2"), None),
            Err(SurgeryError::NonNegativeCoefficient(_))
        ));
    }

    #[test]
    fn negative_choices_are_checked() {
        assert!(convert_negative("K", q("-5/3"), Some(&[1, -1])).is_ok());
        assert_eq!(
            convert_negative("K", q("-5/3"), Some(&[0, 1])),
            Err(SurgeryError::BadChoice {
                level: 0,
                tb: -2,
                rot: 0
            })
        );
        assert!(matches!(
            convert_negative("K", q("-5/3"), Some(&[1])),
            Err(SurgeryError::ChoiceCount {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn positive_examples() {
        let (i, c) = convert_positive("K", q("3"), None).unwrap();
        assert_eq!(signs(&i), vec![1, -1, -1]);
        assert_eq!(tbs(&i), vec![-1, -2, -1]);
        assert_eq!(c.twist, 1);
        assert_eq!(c.chain_target, q("-3/2"));
        assert_eq!(c.tight_count, 2);

        let (i, c) = convert_positive("K", q("1/2"), None).unwrap();
        assert_eq!(signs(&i), vec![1, 1, 1, -1]);
        assert_eq!(tbs(&i), vec![-1, -1, -1, -1]);
        assert_eq!(c.twist, 3);
        assert!(i[..3]
            .iter()
            .all(|x| x.provenance == Provenance::PushOff && x.rot_choice == 0));

        assert!(matches!(
            convert_positive("K", q("-2"), None),
            Err(SurgeryError::NonPositiveCoefficient(_))
        ));
    }

    #[test]
    fn zero_surgery() {
        let i = convert_zero("K");
        assert_eq!(signs(&i), vec![1]);
        assert_eq!(i[0].tb_local, -1);
        assert_eq!(i[0].provenance, Provenance::ZeroSurgery);
    }

    #[test]
    fn dispatch() {
        let diagram = ContactDiagram::new(vec![
            DiagramComponent::abstract_unknot("A", -1, 0, Rational::INFINITY),
            DiagramComponent::abstract_unknot("B", -1, 0, q("0")),
            DiagramComponent::abstract_unknot("C", -2, 1, q("1")),
            DiagramComponent::abstract_unknot("D", -1, 0, q("-7/5")),
            DiagramComponent::abstract_unknot("E", -1, 0, q("3")),
        ]);
        let out = convert(&diagram, &Policy::AllNegative).unwrap();
        let branches: Vec<_> = out.components.iter().map(|c| c.branch).collect();
        assert_eq!(
            branches,
            vec![
                Branch::Dropped,
                Branch::Zero,
                Branch::Passthrough,
                Branch::Negative,
                Branch::Positive
            ]
        );
        assert!(out.components[0].instructions.is_empty());
        let c = &out.components[2];
        assert_eq!(
            (c.instructions[0].tb_local, c.instructions[0].rot_choice),
            (-2, 1)
        );
        assert_eq!(tbs(&out.components[3].instructions), vec![-2, -1, -2]);
        assert_eq!(out.choice_tuple(), vec![-1, 0, -1, -1, 0]);

        let pos = convert(&diagram, &Policy::AllPositive).unwrap();
        assert_eq!(pos.choice_tuple(), vec![1, 0, 1, 1, 0]);
    }

    #[test]
    fn tuple_policy_slices_per_component() {
        let diagram = ContactDiagram::new(vec![
            DiagramComponent::abstract_unknot("A", -1, 0, q("-5/3")),
            DiagramComponent::abstract_unknot("B", -1, 0, q("-3")),
        ]);
        let out = convert(&diagram, &Policy::Tuple(vec![1, -1, 2])).unwrap();
        assert_eq!(out.choice_tuple(), vec![1, -1, 2]);
        assert!(matches!(
            convert(&diagram, &Policy::Tuple(vec![1, -1])),
            Err(SurgeryError::Components(_))
        ));
        assert!(matches!(
            convert(&diagram, &Policy::Tuple(vec![1, -1, 2, 0])),
            Err(SurgeryError::ChoiceCount { .. })
        ));
    }

    #[test]
    fn errors_carry_component_ids() {
        let diagram = ContactDiagram::new(vec![
            DiagramComponent::abstract_unknot("A", -1, 0, q("-5/3")),
            DiagramComponent::abstract_unknot("B", -1, 0, q("-3")),
        ]);
        match convert(&diagram, &Policy::Tuple(vec![0, 0, 1])) {
            Err(SurgeryError::Components(errs)) => {
                let ids: Vec<_> = errs.iter().map(|(id, _)| id.as_str()).collect();
                assert_eq!(ids, vec!["A", "B"]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
