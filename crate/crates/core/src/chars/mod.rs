//! Cyclotomic numbers, character tables and representation rings.

pub mod cyclotomic;
pub(crate) mod modp;
mod repring;
mod table;

pub use cyclotomic::{cyclotomic_polynomial, totient, CycloNum};
pub use repring::{rep_ring, RepRing};
pub use table::{character_table, character_table_by, CharacterTable, TableMethod};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("group has {order} elements, above the cap of {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("class function has {found} entries, expected {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("inner product {0} is not rational")]
    NotRational(String),
    #[error("structure constant n^({i},{j})_{k} = {value} is not a nonnegative integer")]
    NonIntegralConstant {
        i: usize,
        j: usize,
        k: usize,
        value: String,
    },
    #[error("character table construction failed: {0}")]
    Internal(String),
}
