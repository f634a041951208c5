//! Lutz twists as contact (+1)-surgeries, inversion and pair cancellation.

use super::instruction::{PmOneInstruction, PmSign, Provenance};

fn plus_one(parent: &str, level: usize, provenance: Provenance) -> PmOneInstruction {
    PmOneInstruction {
        coefficient: PmSign::Plus,
        level,
        tb_local: -1,
        rot_choice: 0,
        parent: parent.to_string(),
        provenance,
    }
}

/// A simple Lutz twist along `parent` as two contact (+1)-surgeries.
pub fn lutz_simple(parent: &str) -> Vec<PmOneInstruction> {
    (0..2)
        .map(|level| plus_one(parent, level, Provenance::SimpleLutz))
        .collect()
}

/// A full Lutz twist: two (+1)-surgeries undoing the (-1)-surgeries that
/// reduce it to a simple twist, followed by the simple twist itself.
pub fn lutz_full(parent: &str) -> Vec<PmOneInstruction> {
    let mut out: Vec<_> = lutz_simple(parent)
        .into_iter()
        .map(|mut i| {
            i.provenance = Provenance::FullLutz;
            i
        })
        .collect();
    out.extend((2..4).map(|level| plus_one(parent, level, Provenance::FullLutz)));
    out
}

/// The inverse presentation: reversed order, every coefficient flipped.
pub fn invert_instructions(instructions: &[PmOneInstruction]) -> Vec<PmOneInstruction> {
    instructions
        .iter()
        .rev()
        .map(|i| PmOneInstruction {
            coefficient: i.coefficient.inverse(),
            ..i.clone()
        })
        .collect()
}

/// Removes adjacent (+1)/(-1) pairs on the same knot at the same level,
/// repeatedly, so pairs exposed by a removal cancel too.
pub fn cancel_pairs(instructions: &[PmOneInstruction]) -> Vec<PmOneInstruction> {
    let mut out: Vec<PmOneInstruction> = Vec::with_capacity(instructions.len());
    for i in instructions {
        match out.last() {
            Some(top) if top.same_knot(i) && top.coefficient == i.coefficient.inverse() => {
                out.pop();
            }
            _ => out.push(i.clone()),
        }
    }
    out
}
