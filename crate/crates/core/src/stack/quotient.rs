use super::inertia::{cyclotomic_inertia, CycloInertiaComponent};
use super::StackError;
use crate::chars::{character_table, rep_ring};
use crate::groups::{order_allowed, FiniteGroup};
use crate::motive::{model_motive, EquivariantModel, Motive};

/// `h([X/H]) = h(X)^H`.
pub fn motive_quotient(x: &EquivariantModel) -> Motive {
    model_motive(x).invariants()
}

/// `h_chi([X/H])` with its decomposition over conjugacy classes of cyclic
/// subgroups.
#[derive(Clone, Debug)]
pub struct ChiQuotient {
    pub components: Vec<CycloInertiaComponent>,
    pub motive: Motive,
}

impl ChiQuotient {
    /// The summand of the trivial subgroup, which is `h([X/H])`.
    pub fn trivial_component(&self) -> &Motive {
        &self.components[0].motive
    }

    /// Whether every nontrivial cyclic subgroup has an empty fixed locus.
    pub fn is_free(&self) -> bool {
        self.components[1..]
            .iter()
            .all(|c| c.fixed_model.is_empty())
    }
}

/// `h_chi([X/H]) = sum over c of h(X^c x s(c))^{N_c}`.
pub fn motive_chi_quotient(x: &EquivariantModel, p: u64) -> Result<ChiQuotient, StackError> {
    let components = cyclotomic_inertia(x, p)?;
    let motive = components
        .iter()
        .fold(Motive::zero(), |acc, c| acc.direct_sum(&c.motive));
    Ok(ChiQuotient { components, motive })
}

/// `h_chi(BH)` and, in characteristic 0, the structure constants of the
/// product on its `r` summands.
#[derive(Clone, Debug)]
pub struct BhMotive {
    pub motive: Motive,
    pub rank: usize,
    /// Row `i * r + j` lists the multiplicities of every irreducible in
    /// `rho_i (x) rho_j`.
    pub product_matrix: Option<Vec<Vec<u64>>>,
    pub components: Vec<CycloInertiaComponent>,
}

pub fn motive_chi_bh(h: &FiniteGroup, p: u64) -> Result<BhMotive, StackError> {
    let point = EquivariantModel::point(h.clone());
    let chi = motive_chi_quotient(&point, p)?;
    let rank = chi.motive.tate_rank() as usize;
    let classes = h
        .conjugacy_classes()
        .iter()
        .filter(|c| order_allowed(c.order, p))
        .count();
    if rank != classes || chi.motive != Motive::tate(0, rank as u64) {
        return Err(StackError::Internal(format!(
            "h_chi(BH) has rank {rank} but H has {classes} admissible conjugacy classes"
        )));
    }
    let product_matrix = if p == 0 {
        let ring = rep_ring(&character_table(h)?)?;
        if ring.rank() != rank {
            return Err(StackError::Internal(format!(
                "representation ring has rank {}, expected {rank}",
                ring.rank()
            )));
        }
        Some(ring.product_matrix())
    } else {
        None
    };
    Ok(BhMotive {
        motive: chi.motive,
        rank,
        product_matrix,
        components: chi.components,
    })
}
