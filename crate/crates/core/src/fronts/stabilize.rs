use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::{FrontEvent, FrontWord};
use super::{FrontError, OrientedFront};

/// Direction of a stabilization: the rotation number moves by +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabSign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl StabSign {
    pub fn delta(self) -> i64 {
        match self {
            StabSign::Positive => 1,
            StabSign::Negative => -1,
        }
    }
}

impl fmt::Display for StabSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabSign::Positive => "+",
            StabSign::Negative => "-",
        })
    }
}

/// The front `[L1, R1]` with two cusps and no crossings: `tb = -1, rot = 0`.
pub fn standard_unknot() -> OrientedFront {
    OrientedFront::new(FrontWord::new(vec![
        FrontEvent::LeftCusp(1),
        FrontEvent::RightCusp(1),
    ]))
    .expect("standard unknot is a valid front")
}

impl OrientedFront {
    /// Adds a zigzag to `component` just before its last right cusp.
    ///
    /// The zigzag sits on the upper strand of that cusp and adds no
    /// crossings, so `tb` drops by one and `rot` moves by `sign`. Other
    /// components are untouched.
    pub fn stabilize(&self, component: usize, sign: StabSign) -> Result<OrientedFront, FrontError> {
        self.check_component(component)?;
        let events = self.word().events();
        let (at, pos, strand) = events
            .iter()
            .enumerate()
            .rev()
            .find_map(|(index, e)| match e {
                FrontEvent::RightCusp(i) => {
                    let (upper, _) = self.trace().event_strands(index);
                    (self.trace().component_of(upper) == component).then_some((index, *i, upper))
                }
                _ => None,
            })
            .expect("every component has a right cusp");

        // A downward zigzag [L(i+1), R(i)] shifts rot by +1 on a rightward
        // strand; the upward one [L(i), R(i+1)] by -1. Both flip on a
        // leftward strand.
        let downward = self.rightward(strand) == (sign == StabSign::Positive);
        let zigzag = if downward {
            [FrontEvent::LeftCusp(pos + 1), FrontEvent::RightCusp(pos)]
        } else {
            [FrontEvent::LeftCusp(pos), FrontEvent::RightCusp(pos + 1)]
        };
        let mut word = self.word().clone();
        word.insert(at, &zigzag);
        OrientedFront::with_orientation(word, self.orientation().to_vec())
    }
}

/// `true` when `(tb, rot)` is the classical data of some Legendrian unknot:
/// `tb + |rot| <= -1` and `rot = tb + 1 (mod 2)`.
pub fn unknot_pair_realizable(tb: i64, rot: i64) -> bool {
    tb + rot.abs() <= -1 && (rot - tb - 1).rem_euclid(2) == 0
}

/// Stabilizes the standard unknot `n = -tb - 1` times, with `(n + rot)/2`
/// positive zigzags followed by `(n - rot)/2` negative ones.
pub fn realize_unknot(tb: i64, rot: i64) -> Result<OrientedFront, FrontError> {
    if !unknot_pair_realizable(tb, rot) {
        return Err(FrontError::UnrealizablePair { tb, rot });
    }
    let n = -tb - 1;
    let positive = (n + rot) / 2;
    let mut front = standard_unknot();
    for i in 0..n {
        let sign = if i < positive {
            StabSign::Positive
        } else {
            StabSign::Negative
        };
        front = front.stabilize(0, sign)?;
    }
    Ok(front)
}

/// Classical invariants of a Legendrian knot given abstractly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LegendrianKnotData {
    pub tb: i64,
    pub rot: i64,
    #[serde(rename = "type")]
    pub knot_type: String,
}

impl LegendrianKnotData {
    pub fn unknot(tb: i64, rot: i64) -> Self {
        LegendrianKnotData {
            tb,
            rot,
            knot_type: "unknot".to_string(),
        }
    }

    /// Unknots must satisfy the Bennequin inequality and the parity rule.
    /// Other knot types are taken as given.
    pub fn validate(&self) -> Result<(), FrontError> {
        if self.knot_type == "unknot" && !unknot_pair_realizable(self.tb, self.rot) {
            return Err(FrontError::UnrealizablePair {
                tb: self.tb,
                rot: self.rot,
            });
        }
        Ok(())
    }
}
