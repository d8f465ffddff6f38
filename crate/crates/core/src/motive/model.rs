use std::collections::BTreeMap;

use super::{Atom, Motive, MotiveError, Term};
use crate::groups::{count_orbits, FiniteGroup, Perm, Subgroup};

/// Extends generator images to a map on every group element by walking the
/// Cayley graph, failing when two paths disagree.
///
/// Checking `rho(s x) = rho(s) rho(x)` for every generator `s` and every
/// element `x` is enough for `rho` to be a homomorphism.
fn extend_to_elements(
    group: &FiniteGroup,
    images: &[Perm],
    points: usize,
) -> Result<Vec<Perm>, MotiveError> {
    if images.len() != group.generators().len() {
        return Err(MotiveError::InconsistentAction(format!(
            "{} generator images for {} generators",
            images.len(),
            group.generators().len()
        )));
    }
    if let Some((i, p)) = images
        .iter()
        .enumerate()
        .find(|(_, p)| p.degree() != points)
    {
        return Err(MotiveError::InconsistentAction(format!(
            "image of generator {i} acts on {} points, expected {points}",
            p.degree()
        )));
    }
    let gen_idx: Vec<usize> = group
        .generators()
        .iter()
        .map(|g| group.index_of(g).expect("generator is an element"))
        .collect();
    let mut action: Vec<Option<Perm>> = vec![None; group.order()];
    action[0] = Some(Perm::identity(points));
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let ax = action[x].clone().expect("visited");
        for (k, &s) in gen_idx.iter().enumerate() {
            let y = group.mul_idx(s, x);
            let candidate = &images[k] * &ax;
            match &action[y] {
                None => {
                    action[y] = Some(candidate);
                    queue.push_back(y);
                }
                Some(existing) if *existing != candidate => {
                    return Err(MotiveError::InconsistentAction(format!(
                        "generator images violate the relations of the group at {}",
                        group.element(y)
                    )));
                }
                Some(_) => {}
            }
        }
    }
    Ok(action
        .into_iter()
        .map(|a| a.expect("generators span the group"))
        .collect())
}

/// Extra cells describing fixed loci of nontrivial elements.
///
/// For an element `h` outside `kernel`, the fixed locus `X^h` is the union
/// of the fixed-locus cells whose stabilizer contains `h`. Elements of the
/// kernel act trivially on the whole model and fix every ambient cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedLocus {
    dims: Vec<u32>,
    stabilizers: Vec<Subgroup>,
    kernel: Subgroup,
    generator_images: Vec<Perm>,
    action: Vec<Perm>,
}

impl FixedLocus {
    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn stabilizers(&self) -> &[Subgroup] {
        &self.stabilizers
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn generator_images(&self) -> &[Perm] {
        &self.generator_images
    }
}

/// The shape of a model, without its group action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// A finite set; every point contributes a copy of the unit.
    HSet { size: usize },
    /// Cells of the given dimensions; a cell of dimension `d` contributes
    /// `L^d`.
    CellComplex {
        dims: Vec<u32>,
        fixed_locus: Option<FixedLocus>,
    },
}

/// A finite group acting on a finite set or on a graded cell datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantModel {
    group: FiniteGroup,
    kind: ModelKind,
    generator_images: Vec<Perm>,
    action: Vec<Perm>,
}

impl EquivariantModel {
    pub fn hset(
        group: FiniteGroup,
        size: usize,
        generator_images: Vec<Perm>,
    ) -> Result<Self, MotiveError> {
        let action = extend_to_elements(&group, &generator_images, size)?;
        Ok(EquivariantModel {
            group,
            kind: ModelKind::HSet { size },
            generator_images,
            action,
        })
    }

    /// The classifying-stack model: one point with the trivial action.
    pub fn point(group: FiniteGroup) -> Self {
        let images = vec![Perm::identity(1); group.generators().len()];
        EquivariantModel::hset(group, 1, images).expect("trivial action is consistent")
    }

    /// A finite set with trivial action.
    pub fn trivial_hset(group: FiniteGroup, size: usize) -> Self {
        let images = vec![Perm::identity(size); group.generators().len()];
        EquivariantModel::hset(group, size, images).expect("trivial action is consistent")
    }

    pub fn cells(
        group: FiniteGroup,
        dims: Vec<u32>,
        generator_images: Vec<Perm>,
    ) -> Result<Self, MotiveError> {
        let action = extend_to_elements(&group, &generator_images, dims.len())?;
        check_dims(&dims, &generator_images)?;
        Ok(EquivariantModel {
            group,
            kind: ModelKind::CellComplex {
                dims,
                fixed_locus: None,
            },
            generator_images,
            action,
        })
    }

    /// Attaches fixed-locus cells to a cell model. Each stabilizer and the
    /// kernel are given by generating elements of the group.
    pub fn with_fixed_locus(
        self,
        dims: Vec<u32>,
        stabilizer_generators: Vec<Vec<Perm>>,
        kernel_generators: Vec<Perm>,
        generator_images: Vec<Perm>,
    ) -> Result<Self, MotiveError> {
        if !matches!(self.kind, ModelKind::CellComplex { .. }) {
            return Err(MotiveError::InvalidModel(
                "fixed loci need a cell model".into(),
            ));
        }
        if stabilizer_generators.len() != dims.len() {
            return Err(MotiveError::InvalidModel(format!(
                "{} stabilizers for {} fixed cells",
                stabilizer_generators.len(),
                dims.len()
            )));
        }
        let g = &self.group;
        let stabilizers = stabilizer_generators
            .iter()
            .enumerate()
            .map(|(i, gens)| {
                g.subgroup_generated(gens).map_err(|e| {
                    MotiveError::InvalidModel(format!("stabilizer of fixed cell {i}: {e}"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let kernel = g
            .subgroup_generated(&kernel_generators)
            .map_err(|e| MotiveError::InvalidModel(format!("kernel: {e}")))?;
        let action = extend_to_elements(g, &generator_images, dims.len())?;
        check_dims(&dims, &generator_images)?;
        for k in kernel.elements() {
            let idx = g.index_of(k).expect("element");
            if !self.action[idx].is_identity() {
                return Err(MotiveError::InvalidModel(format!(
                    "kernel element {k} moves an ambient cell"
                )));
            }
            if !g
                .elements()
                .iter()
                .all(|x| kernel.contains(&k.conjugate_by(x)))
            {
                return Err(MotiveError::InvalidModel("kernel is not normal".into()));
            }
        }
        for (i, s) in stabilizers.iter().enumerate() {
            if !kernel.elements().iter().all(|k| s.contains(k)) {
                return Err(MotiveError::InvalidModel(format!(
                    "stabilizer of fixed cell {i} does not contain the kernel"
                )));
            }
        }
        // g maps a cell with stabilizer S to one with stabilizer g S g^-1
        for (s, img) in g.generators().iter().zip(&generator_images) {
            for (i, stab) in stabilizers.iter().enumerate() {
                let j = img.apply(i);
                let ok = stab
                    .elements()
                    .iter()
                    .all(|x| stabilizers[j].contains(&x.conjugate_by(s)));
                if !ok {
                    return Err(MotiveError::InvalidModel(format!(
                        "generator {s} maps fixed cell {i} to {j} but does not conjugate their stabilizers"
                    )));
                }
            }
        }
        let ambient = self.dims();
        Ok(EquivariantModel {
            kind: ModelKind::CellComplex {
                dims: ambient,
                fixed_locus: Some(FixedLocus {
                    dims,
                    stabilizers,
                    kernel,
                    generator_images,
                    action,
                }),
            },
            ..self
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn generator_images(&self) -> &[Perm] {
        &self.generator_images
    }

    /// Number of ambient points or cells.
    pub fn len(&self) -> usize {
        match &self.kind {
            ModelKind::HSet { size } => *size,
            ModelKind::CellComplex { dims, .. } => dims.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Dimension of every ambient cell (all zero for a set).
    pub fn dims(&self) -> Vec<u32> {
        match &self.kind {
            ModelKind::HSet { size } => vec![0; *size],
            ModelKind::CellComplex { dims, .. } => dims.clone(),
        }
    }

    pub fn fixed_locus(&self) -> Option<&FixedLocus> {
        match &self.kind {
            ModelKind::CellComplex { fixed_locus, .. } => fixed_locus.as_ref(),
            ModelKind::HSet { .. } => None,
        }
    }

    /// The permutation of ambient cells induced by a group element.
    pub fn action_of(&self, g: &Perm) -> Option<&Perm> {
        self.group.index_of(g).map(|i| &self.action[i])
    }

    /// Cells fixed by `h`, with their dimensions and the permutation action
    /// of every element of `group` (a subgroup preserving the fixed locus).
    ///
    /// The result is a cell model for the restricted action.
    pub fn fixed_model(&self, h: &Perm, group: &Subgroup) -> Result<EquivariantModel, MotiveError> {
        let (dims, action): (Vec<u32>, &[Perm]) = match self.fixed_locus() {
            Some(fl) if !fl.kernel.contains(h) => (fl.dims.clone(), &fl.action),
            _ => (self.dims(), &self.action),
        };
        let cells: Vec<usize> = match self.fixed_locus() {
            Some(fl) if !fl.kernel.contains(h) => (0..fl.dims.len())
                .filter(|&i| fl.stabilizers[i].contains(h))
                .collect(),
            _ => {
                let hi = self.group.index_of(h).ok_or_else(|| {
                    MotiveError::InvalidModel(format!("{h} is not an element of the group"))
                })?;
                self.action[hi].fixed_points()
            }
        };
        let position: BTreeMap<usize, usize> =
            cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let sub = group.to_group();
        let images = sub
            .generators()
            .iter()
            .map(|s| {
                let full = &action[self.group.index_of(s).expect("subgroup element")];
                let imgs = cells
                    .iter()
                    .map(|c| {
                        position.get(&full.apply(*c)).copied().ok_or_else(|| {
                            MotiveError::InvalidModel(format!(
                                "{s} does not preserve the fixed locus of {h}"
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Perm::new(imgs).expect("restriction of a permutation"))
            })
            .collect::<Result<Vec<_>, MotiveError>>()?;
        let fixed_dims: Vec<u32> = cells.iter().map(|&c| dims[c]).collect();
        match self.kind {
            ModelKind::HSet { .. } => EquivariantModel::hset(sub, cells.len(), images),
            ModelKind::CellComplex { .. } => EquivariantModel::cells(sub, fixed_dims, images),
        }
    }

    /// Permutation tables of the whole group, one row per element.
    pub(crate) fn action_table(&self) -> &[Perm] {
        &self.action
    }
}

fn check_dims(dims: &[u32], images: &[Perm]) -> Result<(), MotiveError> {
    for (k, p) in images.iter().enumerate() {
        if let Some(i) = (0..dims.len()).find(|&i| dims[p.apply(i)] != dims[i]) {
            return Err(MotiveError::InvalidModel(format!(
                "generator {k} maps cell {i} of dimension {} to cell {} of dimension {}",
                dims[i],
                p.apply(i),
                dims[p.apply(i)]
            )));
        }
    }
    Ok(())
}

/// A group acting on a motive by permuting the copies inside each term.
#[derive(Clone, Debug)]
pub struct GroupActionOnMotive {
    motive: Motive,
    group: FiniteGroup,
    /// `perms[t][g]` permutes the `multiplicity` copies of term `t`.
    perms: Vec<Vec<Perm>>,
}

impl GroupActionOnMotive {
    /// Validates that every element permutes each term's copies and that
    /// the assignment is multiplicative.
    pub fn new(
        motive: Motive,
        group: FiniteGroup,
        perms: Vec<Vec<Perm>>,
    ) -> Result<Self, MotiveError> {
        if perms.len() != motive.terms().len() {
            return Err(MotiveError::InconsistentAction(format!(
                "{} permutation families for {} terms",
                perms.len(),
                motive.terms().len()
            )));
        }
        let gen_idx: Vec<usize> = group
            .generators()
            .iter()
            .map(|g| group.index_of(g).expect("generator"))
            .collect();
        for (t, (term, family)) in motive.terms().iter().zip(&perms).enumerate() {
            let n = term.multiplicity as usize;
            if family.len() != group.order() || family.iter().any(|p| p.degree() != n) {
                return Err(MotiveError::InconsistentAction(format!(
                    "bad permutation shape on term {t}"
                )));
            }
            if !family[0].is_identity() {
                return Err(MotiveError::InconsistentAction(
                    "identity acts nontrivially".into(),
                ));
            }
            for &s in &gen_idx {
                for x in 0..group.order() {
                    if family[group.mul_idx(s, x)] != &family[s] * &family[x] {
                        return Err(MotiveError::InconsistentAction(format!(
                            "composition law fails on term {t}"
                        )));
                    }
                }
            }
        }
        Ok(GroupActionOnMotive {
            motive,
            group,
            perms,
        })
    }

    /// The group acting trivially.
    pub fn trivial(motive: Motive, group: FiniteGroup) -> Self {
        let perms = motive
            .terms()
            .iter()
            .map(|t| vec![Perm::identity(t.multiplicity as usize); group.order()])
            .collect();
        GroupActionOnMotive {
            motive,
            group,
            perms,
        }
    }

    pub fn motive(&self) -> &Motive {
        &self.motive
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn permutation(&self, term: usize, g: &Perm) -> Option<&Perm> {
        self.group.index_of(g).map(|i| &self.perms[term][i])
    }

    /// The image of the averaging projector: one copy per orbit in each term.
    pub fn invariants(&self) -> Motive {
        Motive::from_terms(
            self.motive
                .terms()
                .iter()
                .zip(&self.perms)
                .map(|(t, family)| {
                    let table: Vec<Vec<usize>> =
                        family.iter().map(|p| p.images().to_vec()).collect();
                    let orbits =
                        count_orbits(&table, t.multiplicity as usize).expect("validated action");
                    Term {
                        multiplicity: orbits as u64,
                        ..t.clone()
                    }
                }),
        )
    }
}

/// `h(X) = sum over cells of L^dim`, with the permutation action of the
/// group.
pub fn model_motive(x: &EquivariantModel) -> GroupActionOnMotive {
    let dims = x.dims();
    let mut by_dim: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (c, &d) in dims.iter().enumerate() {
        by_dim.entry(d).or_default().push(c);
    }
    let motive = Motive::from_terms(by_dim.iter().map(|(&d, cells)| Term {
        atom: Atom::Unit,
        twist: i64::from(d),
        multiplicity: cells.len() as u64,
    }));
    let perms = by_dim
        .values()
        .map(|cells| {
            let pos: BTreeMap<usize, usize> =
                cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
            x.action
                .iter()
                .map(|g| {
                    Perm::new(cells.iter().map(|c| pos[&g.apply(*c)]).collect())
                        .expect("restriction")
                })
                .collect()
        })
        .collect();
    GroupActionOnMotive {
        motive,
        group: x.group.clone(),
        perms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;

    #[test]
    fn inconsistent_images_are_rejected() {
        let c3 = catalog::cyclic(3).unwrap();
        // a transposition cannot be the image of an element of order 3
        let bad = EquivariantModel::hset(c3, 2, vec![Perm::new(vec![1, 0]).unwrap()]);
        assert!(matches!(bad, Err(MotiveError::InconsistentAction(_))));
    }

    #[test]
    fn dimension_must_be_preserved() {
        let c2 = catalog::cyclic(2).unwrap();
        let bad = EquivariantModel::cells(c2, vec![0, 1], vec![Perm::new(vec![1, 0]).unwrap()]);
        assert!(matches!(bad, Err(MotiveError::InvalidModel(_))));
    }

    #[test]
    fn model_motive_of_sets_and_cells() {
        let s3 = catalog::symmetric(3).unwrap();
        let gens = s3.generators().to_vec();
        let x = EquivariantModel::hset(s3, 3, gens).unwrap();
        let act = model_motive(&x);
        assert_eq!(act.motive(), &Motive::tate(0, 3));
        assert_eq!(act.invariants(), Motive::unit());

        let e = FiniteGroup::trivial(1);
        let y = EquivariantModel::cells(e, vec![0, 1], vec![]).unwrap();
        assert_eq!(model_motive(&y).motive().to_string(), "1 + L");
    }

    #[test]
    fn fixed_locus_replaces_fixed_cells() {
        let c3 = catalog::cyclic(3).unwrap();
        let g = c3.generators()[0].clone();
        let x = EquivariantModel::cells(c3.clone(), vec![0, 1], vec![Perm::identity(2)])
            .unwrap()
            .with_fixed_locus(
                vec![0, 0],
                vec![vec![g.clone()], vec![g.clone()]],
                vec![],
                vec![Perm::identity(2)],
            )
            .unwrap();
        let f = x.fixed_model(&g, &c3.whole()).unwrap();
        assert_eq!(f.dims(), vec![0, 0]);
        let e = x.fixed_model(&c3.identity(), &c3.whole()).unwrap();
        assert_eq!(e.dims(), vec![0, 1]);
    }
}
