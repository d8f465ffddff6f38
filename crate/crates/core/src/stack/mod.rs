//! Decompositions of `h` and `h_chi` for global quotients, gerbes and
//! orbifold curves. Classifying stacks are quotients of a point.

mod gerbe;
mod inertia;
mod quotient;

pub use gerbe::{
    gerbe_rset, motive_chi_gerbe, Automorphism, GerbeDatum, GerbeMotive, RElement, RSet,
};
pub use inertia::{cyclotomic_inertia, inertia, CharSet, CycloInertiaComponent, InertiaComponent};
pub use quotient::{motive_chi_bh, motive_chi_quotient, motive_quotient, BhMotive, ChiQuotient};

use thiserror::Error;

use crate::chars::CharError;
use crate::groups::GroupError;
use crate::motive::{Atom, Motive, MotiveError, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StackError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Motive(#[from] MotiveError),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("cone point order {0} is below 2")]
    BadOrder(u32),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// `h_chi` of an orbifold curve with the summand identified with `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveMotive {
    pub motive: Motive,
    /// `h(C)` of the coarse curve.
    pub h_factor: Motive,
}

/// `h_chi(F) = h(C) + sum_i 1^{+(n_i - 1)}` for a curve of genus `genus`
/// with cone points of the given orders.
pub fn orbifold_curve_motive(genus: u32, orders: &[u32]) -> Result<CurveMotive, StackError> {
    if let Some(&n) = orders.iter().find(|&&n| n < 2) {
        return Err(StackError::BadOrder(n));
    }
    let h_factor = Motive::curve(genus);
    let extra: u64 = orders.iter().map(|&n| u64::from(n - 1)).sum();
    let motive = h_factor.direct_sum(&Motive::from_terms([Term {
        atom: Atom::Unit,
        twist: 0,
        multiplicity: extra,
    }]));
    Ok(CurveMotive { motive, h_factor })
}
