//! Contact surgery diagrams and their certified conversion to contact
//! (±1)-surgeries.
//!
//! A negative coefficient `r` is expanded as `[r1 + 1, r2, ..., rn]` with all
//! `ri <= -2` and replaced by `n` nested contact (-1)-surgeries, the `i`-th on
//! a knot with `tb = ri + 1` in the coordinates of its solid torus. A positive
//! coefficient `p/q` is first split into `k` contact (+1)-surgeries on
//! push-offs and a negative surgery with coefficient `p/(q - k p)`.

mod certificate;
mod convert;
mod diagram;
mod enumerate;
mod instruction;
mod rewrite;
mod verify;

pub use certificate::{minimal_twist, twisted_coefficient, ConversionCertificate};
pub use convert::{
    convert, convert_negative, convert_positive, convert_zero, Branch, ConvertedComponent,
    PmOneDiagram,
};
pub use diagram::{ContactDiagram, DiagramComponent, KnotSpec};
pub use enumerate::{conversion_count, enumerate_conversions, Conversions};
pub use instruction::{
    allowed_rotations, rotation_allowed, ParsePolicyError, PmOneInstruction, PmSign, Policy,
    Provenance,
};
pub use rewrite::{cancel_pairs, invert_instructions, lutz_full, lutz_simple};
pub use verify::{verify, Clause, ClauseResult, VerifyReport};

use crate::arith::{ArithError, Rational};
use crate::fronts::FrontError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurgeryError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("component {id:?}: {source}")]
    Front { id: String, source: FrontError },
    #[error("component with empty id")]
    EmptyId,
    #[error("duplicate component id {0:?}")]
    DuplicateId(String),
    #[error("component {id:?}: front has {components} components, expected 1")]
    MultiComponentFront { id: String, components: usize },
    #[error("component {id:?} refers to the link front, but the diagram has none")]
    MissingLinkFront { id: String },
    #[error("component {id:?}: link front component {index} is already used")]
    SharedLinkComponent { id: String, index: usize },
    #[error("component {0:?} lists a linking number with itself")]
    SelfLinking(String),
    #[error("component {id:?}: linking entry for unknown component {target:?}")]
    UnknownLinkTarget { id: String, target: String },
    #[error("linking number of {a:?} with {b:?} is given as both {ab} and {ba}")]
    AsymmetricLinking {
        a: String,
        b: String,
        ab: i64,
        ba: i64,
    },
    #[error("coefficient {0} is not negative")]
    NonNegativeCoefficient(Rational),
    #[error("coefficient {0} is not positive")]
    NonPositiveCoefficient(Rational),
    #[error("rotation {rot} is not admissible at level {level} (tb {tb})")]
    BadChoice { level: usize, tb: i64, rot: i64 },
    #[error("expected {expected} rotation choices, got {found}")]
    ChoiceCount { expected: usize, found: usize },
    #[error("{}", format_components(.0))]
    Components(Vec<(String, SurgeryError)>),
}

fn format_components(errors: &[(String, SurgeryError)]) -> String {
    errors
        .iter()
        .map(|(id, e)| format!("component {id:?}: {e}"))
        .collect::<Vec<_>>()
        .join("; ")
}
