use super::convert::{convert, PmOneDiagram};
use super::instruction::{Policy, Provenance};
use super::{ContactDiagram, SurgeryError};

struct Slot {
    component: usize,
    instruction: usize,
    /// Largest admissible rotation `m`; choices run `-m, -m + 2, ..., m`.
    max: i64,
}

/// Every (±1)-presentation obtainable by choosing rotation numbers along the
/// (-1)-chains, in lexicographic order of the flat choice tuple.
pub struct Conversions {
    base: PmOneDiagram,
    slots: Vec<Slot>,
    current: Option<Vec<i64>>,
    remaining: u64,
}

impl Conversions {
    /// Number of diagrams not yet yielded.
    pub fn remaining(&self) -> u64 {
        self.remaining
    }

    fn advance(&mut self) {
        let Some(cur) = self.current.as_mut() else {
            return;
        };
        for (value, slot) in cur.iter_mut().zip(&self.slots).rev() {
            if *value < slot.max {
                *value += 2;
                return;
            }
            *value = -slot.max;
        }
        self.current = None;
    }
}

impl Iterator for Conversions {
    type Item = PmOneDiagram;

    fn next(&mut self) -> Option<PmOneDiagram> {
        let choices = self.current.clone()?;
        let mut out = self.base.clone();
        for (slot, &rot) in self.slots.iter().zip(&choices) {
            out.components[slot.component].instructions[slot.instruction].rot_choice = rot;
        }
        out.policy = Policy::Tuple(choices);
        self.advance();
        self.remaining -= 1;
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        match usize::try_from(self.remaining) {
            Ok(n) => (n, Some(n)),
            Err(_) => (usize::MAX, None),
        }
    }
}

/// Lazily enumerates all conversions of a diagram.
pub fn enumerate_conversions(diagram: &ContactDiagram) -> Result<Conversions, SurgeryError> {
    let base = convert(diagram, &Policy::AllNegative)?;
    let mut slots = Vec::new();
    for (ci, c) in base.components.iter().enumerate() {
        for (ii, instr) in c.instructions.iter().enumerate() {
            if instr.provenance == Provenance::NegativeChain {
                slots.push(Slot {
                    component: ci,
                    instruction: ii,
                    max: -instr.tb_local - 1,
                });
            }
        }
    }
    let remaining = slots
        .iter()
        .try_fold(1u64, |acc, s| acc.checked_mul(s.max as u64 + 1))
        .ok_or(crate::arith::ArithError::Overflow)?;
    let current = Some(slots.iter().map(|s| -s.max).collect());
    Ok(Conversions {
        base,
        slots,
        current,
        remaining,
    })
}

/// Product of the tight counts of all certified components.
pub fn conversion_count(diagram: &ContactDiagram) -> Result<u64, SurgeryError> {
    let base = convert(diagram, &Policy::AllNegative)?;
    base.components
        .iter()
        .filter_map(|c| c.certificate.as_ref())
        .try_fold(1u64, |acc, cert| acc.checked_mul(cert.tight_count))
        .ok_or(SurgeryError::Arith(crate::arith::ArithError::Overflow))
}
