//! Finite permutation groups, enumerated by brute force.

mod action;
pub mod catalog;
mod group;
mod perm;

pub use action::{count_orbits, orbit_count};
pub(crate) use group::{check_characteristic, is_prime, order_allowed};
pub use group::{
    generate_group, generate_group_with, ClassPartition, ConjClass, CyclicClass, FiniteGroup,
    GroupLimits, Subgroup,
};
pub use perm::Perm;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a permutation: {images:?}")]
    NonBijection { images: Vec<usize> },
    #[error("permutation has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree {degree} exceeds the cap of {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("group has more than {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("characteristic {0} is neither 0 nor a prime")]
    BadCharacteristic(u64),
    #[error("subset is not a subgroup")]
    NotASubgroup,
    #[error("{0} is not an element of the group")]
    NotAnElement(String),
    #[error("{element} does not normalize <{subgroup}>")]
    NotInNormalizer { element: String, subgroup: String },
    #[error("not a group action: {0}")]
    NotAnAction(String),
    #[error("{0}")]
    Invalid(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
