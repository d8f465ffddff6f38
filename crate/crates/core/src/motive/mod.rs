//! Formal motives: direct sums of twisted atoms, and finite group actions on
//! them coming from combinatorial models.

mod algebra;
mod model;

pub use algebra::{Atom, ChowDim, Motive, Term};
pub use model::{model_motive, EquivariantModel, FixedLocus, GroupActionOnMotive, ModelKind};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MotiveError {
    #[error("tensor product of two motives with non-unit atoms is not modeled")]
    OpaqueTensor,
    #[error("invalid atom: {0}")]
    BadAtom(String),
    #[error("inconsistent action: {0}")]
    InconsistentAction(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
}
