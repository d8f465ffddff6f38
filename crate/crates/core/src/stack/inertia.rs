use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;

use super::StackError;
use crate::groups::{count_orbits, order_allowed, CyclicClass, FiniteGroup, Perm, Subgroup};
use crate::motive::{model_motive, EquivariantModel, Motive};

/// The injective characters of a cyclic group of order `m`, indexed by the
/// exponents `j` in `(Z/m)^x` (the character sending the chosen generator to
/// `zeta_m^j`), with the normalizer acting by `j -> j a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSet {
    order: u64,
    units: Vec<u64>,
    /// Conjugation exponent of every normalizer element, in the order of
    /// the normalizer's sorted elements.
    exponents: Vec<u64>,
}

impl CharSet {
    pub fn new(group: &FiniteGroup, c: &CyclicClass) -> Result<Self, StackError> {
        let m = c.order;
        let units = units_mod(m);
        let exponents = c
            .normalizer
            .elements()
            .iter()
            .map(|n| group.conjugation_exponent(n, c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CharSet {
            order: m,
            units,
            exponents,
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Euler's totient of the order.
    pub fn size(&self) -> usize {
        self.units.len()
    }

    pub fn units(&self) -> &[u64] {
        &self.units
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Position of the unit `j mod m` in `units`.
    pub fn index_of(&self, j: u64) -> usize {
        self.units
            .binary_search(&(j % self.order.max(1)))
            .expect("units are closed under multiplication")
    }

    /// The permutation of `units` induced by the `i`-th normalizer element.
    pub fn permutation(&self, i: usize) -> Perm {
        let a = self.exponents[i];
        let images = self.units.iter().map(|&j| self.index_of(j * a)).collect();
        Perm::new(images).expect("multiplication by a unit is a bijection")
    }

    /// Orbits of the normalizer on `units`, each as sorted exponents.
    pub fn orbits(&self) -> Vec<Vec<u64>> {
        let mut seen = vec![false; self.units.len()];
        let mut out = Vec::new();
        for (k, &j) in self.units.iter().enumerate() {
            if seen[k] {
                continue;
            }
            let mut orbit: Vec<u64> = self
                .exponents
                .iter()
                .map(|&a| (j * a) % self.order.max(1))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &x in &orbit {
                seen[self.index_of(x)] = true;
            }
            out.push(orbit);
        }
        out
    }
}

/// `(Z/m)^x` as sorted residues; `{0}` for `m = 1`.
pub(crate) fn units_mod(m: u64) -> Vec<u64> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|j| j.gcd(&m) == 1).collect()
}

/// `[X^c / N_c]` together with the characters `s(c)`.
#[derive(Clone, Debug)]
pub struct CycloInertiaComponent {
    pub class: CyclicClass,
    /// Cells fixed by `c`, acted on by the normalizer.
    pub fixed_model: EquivariantModel,
    pub chars: CharSet,
    /// `h(X^c x s(c))^{N_c}`.
    pub motive: Motive,
}

/// `[X^h / Z_h]` for one conjugacy class of elements.
#[derive(Clone, Debug)]
pub struct InertiaComponent {
    pub representative: Perm,
    pub class_size: usize,
    pub centralizer: Subgroup,
    /// Cells fixed by `h`, acted on by the centralizer.
    pub fixed_model: EquivariantModel,
    /// `h(X^h)^{Z_h}`.
    pub motive: Motive,
}

/// One component per conjugacy class of cyclic subgroups of order prime to
/// `p`, in the order of `cyclic_subgroup_classes`.
pub fn cyclotomic_inertia(
    x: &EquivariantModel,
    p: u64,
) -> Result<Vec<CycloInertiaComponent>, StackError> {
    let g = x.group();
    let classes = g.cyclic_subgroup_classes(p)?;
    classes
        .into_par_iter()
        .map(|c| {
            let fixed_model = x.fixed_model(&c.generator, &c.normalizer)?;
            let chars = CharSet::new(g, &c)?;
            let motive = twisted_invariants(&fixed_model, &chars);
            Ok(CycloInertiaComponent {
                class: c,
                fixed_model,
                chars,
                motive,
            })
        })
        .collect()
}

/// One component per conjugacy class of elements of order prime to `p`.
pub fn inertia(x: &EquivariantModel, p: u64) -> Result<Vec<InertiaComponent>, StackError> {
    crate::groups::check_characteristic(p)?;
    let g = x.group();
    g.conjugacy_classes()
        .into_par_iter()
        .filter(|cl| order_allowed(cl.order, p))
        .map(|cl| {
            let h = cl.representative.clone();
            let centralizer = g.centralizer(&h)?;
            let fixed_model = x.fixed_model(&h, &centralizer)?;
            let motive = model_motive(&fixed_model).invariants();
            Ok(InertiaComponent {
                representative: h,
                class_size: cl.size(),
                centralizer,
                fixed_model,
                motive,
            })
        })
        .collect()
}

/// Orbits of the normalizer on `cells(X^c) x s(c)`, counted per dimension.
fn twisted_invariants(fixed: &EquivariantModel, chars: &CharSet) -> Motive {
    let dims = fixed.dims();
    let mut by_dim: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (cell, &d) in dims.iter().enumerate() {
        by_dim.entry(d).or_default().push(cell);
    }
    let char_perms: Vec<Perm> = (0..fixed.group().order())
        .map(|i| chars.permutation(i))
        .collect();
    let s = chars.size();
    let ranks: BTreeMap<i64, u64> = by_dim
        .iter()
        .map(|(&d, cells)| {
            let pos: BTreeMap<usize, usize> =
                cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
            let table: Vec<Vec<usize>> = fixed
                .action_table()
                .iter()
                .zip(&char_perms)
                .map(|(a, chi)| {
                    let mut row = Vec::with_capacity(cells.len() * s);
                    for &c in cells {
                        let k = pos[&a.apply(c)];
                        for u in 0..s {
                            row.push(k * s + chi.apply(u));
                        }
                    }
                    row
                })
                .collect();
            let orbits = count_orbits(&table, cells.len() * s).expect("product of two actions");
            (i64::from(d), orbits as u64)
        })
        .collect();
    Motive::from_tate_ranks(&ranks)
}
