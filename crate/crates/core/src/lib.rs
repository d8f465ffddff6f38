//! Exact motivic invariants of finite quotient stacks.
//!
//! The crate computes the two motives `h` and `h_chi` of stacks of the form
//! `[X/H]`, where a finite permutation group `H` acts on a combinatorial
//! model `X` (a finite set, or a cell complex with fixed-locus data). The
//! same machinery covers gerbes banded by a finite group and orbifold
//! curves. All arithmetic is exact, over the rationals and cyclotomic
//! fields.
//!
//! Linear algebra and cyclotomic arithmetic are generic over
//! [`scalar::ExactField`]; the aliases below fix the default instantiation
//! over arbitrary-precision rationals.

pub mod chars;
pub mod cli;
pub mod correspondence;
pub mod groups;
pub mod linalg;
pub mod motive;
pub mod scalar;
pub mod stack;
pub mod verify;

pub use groups::{FiniteGroup, Perm};

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
/// Rationals over machine integers; panics on overflow in debug builds.
pub type Rational64 = num_rational::Rational64;
/// Cyclotomic numbers with rational coordinates.
pub type Cyclotomic = chars::CycloNum<Rational>;
pub type RationalMatrix = linalg::Matrix<Rational>;
/// Correspondences between Tate motives with rational coefficients.
pub type Correspondence = correspondence::TateCorrespondence<Rational>;
/// Image of a split rational idempotent.
pub type RationalSplit = correspondence::SplitFactor<Rational>;
