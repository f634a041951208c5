//! Smooth surgery presentations: framings, linking matrices, Smith normal
//! form and first homology.

mod homology;
mod snf;

pub use homology::{
    first_homology, generalized_linking_matrix, smooth_coefficient, AbelianGroup, LinkingMatrix,
};
pub use snf::{smith_diagonal, smith_normal_form, IntMatrix, SmithForm};

use crate::arith::ArithError;
use crate::surgery::SurgeryError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopologyError {
    #[error("integer overflow")]
    Overflow,
    #[error("component {0:?} has an infinite coefficient")]
    InfiniteCoefficient(String),
    #[error("no linking number for components {a:?} and {b:?}")]
    MissingLinkingData { a: String, b: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
}
