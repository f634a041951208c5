//! Combinatorial Legendrian fronts: event words, classical invariants and
//! stabilization.
//!
//! A front is read left to right as a word of left cusps, right cusps and
//! crossings acting on a stack of strands. At a crossing the strand moving
//! down is in front, and the crossing is positive exactly when both strands
//! travel in the same horizontal direction. With these conventions
//! `tb = writhe - cusps/2` and `rot = (down left cusps) - (up right cusps)`.

mod invariants;
mod stabilize;
mod word;

pub use invariants::{ComponentInvariants, OrientedFront};
pub use stabilize::{
    realize_unknot, standard_unknot, unknot_pair_realizable, LegendrianKnotData, StabSign,
};
pub use word::{FrontEvent, FrontTrace, FrontWord};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrontError {
    #[error("empty front word")]
    EmptyWord,
    #[error("event {event}: position {position} is invalid with {strands} strands")]
    IndexOutOfRange {
        event: usize,
        position: usize,
        strands: usize,
    },
    #[error("unbalanced cusps: {open_strands} strands still open at the end of the word")]
    UnbalancedCusps { open_strands: usize },
    #[error("component {component} out of range ({components} components)")]
    ComponentOutOfRange { component: usize, components: usize },
    #[error("linking number of component {0} with itself")]
    SameComponent(usize),
    #[error("orientation has {found} entries, front has {expected} components")]
    OrientationLength { expected: usize, found: usize },
    #[error("no Legendrian unknot has tb = {tb}, rot = {rot}")]
    UnrealizablePair { tb: i64, rot: i64 },
}
