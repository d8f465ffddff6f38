use std::collections::{BTreeMap, VecDeque};

use super::inertia::CharSet;
use super::StackError;
use crate::groups::{order_allowed, CyclicClass, FiniteGroup, Perm};
use crate::motive::{Atom, Motive, Term};

/// An automorphism of a finite group, given by the images of its
/// generators and extended to every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    images: Vec<Perm>,
    /// `map[i]` is the index of the image of element `i`.
    map: Vec<usize>,
}

impl Automorphism {
    /// Checks that the generator images extend to a bijective homomorphism.
    pub fn new(group: &FiniteGroup, images: Vec<Perm>) -> Result<Self, StackError> {
        let bad = |msg: String| StackError::NotAnAutomorphism(msg);
        if images.len() != group.generators().len() {
            return Err(bad(format!(
                "{} images for {} generators",
                images.len(),
                group.generators().len()
            )));
        }
        let img_idx = images
            .iter()
            .map(|x| {
                group
                    .index_of(x)
                    .ok_or_else(|| bad(format!("{x} is not an element of the group")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let gen_idx: Vec<usize> = group
            .generators()
            .iter()
            .map(|g| group.index_of(g).expect("generator"))
            .collect();
        let mut map: Vec<Option<usize>> = vec![None; group.order()];
        map[0] = Some(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let fx = map[x].expect("visited");
            for (k, &s) in gen_idx.iter().enumerate() {
                let y = group.mul_idx(s, x);
                let fy = group.mul_idx(img_idx[k], fx);
                match map[y] {
                    None => {
                        map[y] = Some(fy);
                        queue.push_back(y);
                    }
                    Some(v) if v != fy => {
                        return Err(bad(format!(
                            "images violate the relations of the group at {}",
                            group.element(y)
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        let map: Vec<usize> = map
            .into_iter()
            .map(|v| v.expect("generators span"))
            .collect();
        let mut hit = vec![false; map.len()];
        for &v in &map {
            hit[v] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(bad("map is not bijective".into()));
        }
        Ok(Automorphism { images, map })
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        Automorphism::new(group, group.generators().to_vec()).expect("identity")
    }

    pub fn images(&self) -> &[Perm] {
        &self.images
    }

    pub fn apply<'a>(&self, group: &'a FiniteGroup, g: &Perm) -> Option<&'a Perm> {
        group.index_of(g).map(|i| group.element(self.map[i]))
    }
}

/// A gerbe banded by `group` over a base with motive `base`, with the
/// monodromy given by automorphisms of the band.
#[derive(Clone, Debug)]
pub struct GerbeDatum {
    pub group: FiniteGroup,
    pub monodromy: Vec<Automorphism>,
    pub base: Motive,
    pub base_label: String,
}

/// One element of `R(H)`: the orbit of the pair (class `class`,
/// character exponent `exponent`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RElement {
    pub class: usize,
    pub exponent: u64,
}

/// Conjugation orbits of pairs (cyclic subgroup, injective character),
/// with the permutations induced by the monodromy.
#[derive(Clone, Debug)]
pub struct RSet {
    pub classes: Vec<CyclicClass>,
    pub elements: Vec<RElement>,
    /// One permutation of `elements` per monodromy automorphism.
    pub aut_action: Vec<Perm>,
}

impl RSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Index of the pair (trivial subgroup, trivial character).
    pub fn distinguished(&self) -> usize {
        0
    }

    /// Orbits of the group generated by the monodromy, each sorted, listed
    /// by smallest member.
    pub fn monodromy_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.elements.len();
        let mut label = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            label[start] = id;
            let mut orbit = vec![start];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for p in &self.aut_action {
                    for y in [p.apply(x), p.inverse().apply(x)] {
                        if label[y] == usize::MAX {
                            label[y] = id;
                            orbit.push(y);
                            stack.push(y);
                        }
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }
}

pub fn gerbe_rset(h: &FiniteGroup, p: u64, monodromy: &[Automorphism]) -> Result<RSet, StackError> {
    let classes = h.cyclic_subgroup_classes(p)?;
    let chars = classes
        .iter()
        .map(|c| CharSet::new(h, c))
        .collect::<Result<Vec<_>, _>>()?;
    let mut elements = Vec::new();
    let mut index: BTreeMap<RElement, usize> = BTreeMap::new();
    for (ci, cs) in chars.iter().enumerate() {
        for orbit in cs.orbits() {
            let e = RElement {
                class: ci,
                exponent: orbit[0],
            };
            index.insert(e, elements.len());
            elements.push(e);
        }
    }
    let canonical = |class: usize, j: u64| -> RElement {
        let cs = &chars[class];
        let m = cs.order().max(1);
        let exponent = cs
            .exponents()
            .iter()
            .map(|&a| (j * a) % m)
            .min()
            .expect("nonempty");
        RElement { class, exponent }
    };
    let aut_action = monodromy
        .iter()
        .map(|alpha| {
            let images = elements
                .iter()
                .map(|e| {
                    let c = &classes[e.class];
                    let ag = alpha
                        .apply(h, &c.generator)
                        .expect("generator is an element");
                    let (target, b) = locate_cyclic(h, &classes, ag)?;
                    let m = c.order;
                    let j = if m == 1 {
                        0
                    } else {
                        (e.exponent * inverse_mod(b, m)) % m
                    };
                    Ok(index[&canonical(target, j)])
                })
                .collect::<Result<Vec<_>, StackError>>()?;
            Perm::new(images)
                .map_err(|_| StackError::Internal("automorphism does not permute R(H)".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rset = RSet {
        classes,
        elements,
        aut_action,
    };
    cross_check_with_classes(h, p, &rset, monodromy)?;
    Ok(rset)
}

/// Finds the class `c'` and exponent `b` with `x g x^-1 = generator(c')^b`
/// for some `x`.
fn locate_cyclic(
    h: &FiniteGroup,
    classes: &[CyclicClass],
    g: &Perm,
) -> Result<(usize, u64), StackError> {
    let m = g.order();
    for x in h.elements() {
        let y = g.conjugate_by(x);
        for (ci, c) in classes.iter().enumerate().filter(|(_, c)| c.order == m) {
            if let Some(b) = c.log(&y) {
                return Ok((ci, b));
            }
        }
    }
    Err(StackError::Internal(format!(
        "<{g}> is not conjugate to a listed cyclic subgroup"
    )))
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    (1..m).find(|&x| (a * x) % m == 1).expect("a is a unit")
}

/// Checks the R(H) computation against conjugacy classes of elements: the
/// pair `(<g>, j)` corresponds to the class of `g^(1/j)`, and an
/// automorphism acts on classes by `[h] -> [alpha(h)]`.
fn cross_check_with_classes(
    h: &FiniteGroup,
    p: u64,
    rset: &RSet,
    monodromy: &[Automorphism],
) -> Result<(), StackError> {
    let part = h.class_partition();
    let class_of = |g: &Perm| part.class_of[h.index_of(g).expect("element")];
    let to_class: Vec<usize> = rset
        .elements
        .iter()
        .map(|e| {
            let c = &rset.classes[e.class];
            let k = if c.order == 1 {
                0
            } else {
                inverse_mod(e.exponent, c.order)
            };
            class_of(&c.generator.pow(k))
        })
        .collect();
    let admissible = part
        .classes
        .iter()
        .filter(|c| order_allowed(c.order, p))
        .count();
    let mut distinct = to_class.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != rset.len() || rset.len() != admissible {
        return Err(StackError::Internal(format!(
            "R(H) has {} elements but H has {admissible} admissible classes",
            rset.len()
        )));
    }
    for (alpha, perm) in monodromy.iter().zip(&rset.aut_action) {
        for (i, &cl) in to_class.iter().enumerate() {
            let rep = &part.classes[cl].representative;
            let image = class_of(alpha.apply(h, rep).expect("element"));
            if image != to_class[perm.apply(i)] {
                return Err(StackError::Internal(
                    "monodromy on R(H) disagrees with its action on conjugacy classes".into(),
                ));
            }
        }
    }
    Ok(())
}

/// `h_chi` of a gerbe together with the summand identified with `h`.
#[derive(Clone, Debug)]
pub struct GerbeMotive {
    pub motive: Motive,
    /// The copy of the base indexed by the trivial pair, which is `h(F)`.
    pub h_factor: Motive,
    pub orbits: Vec<Vec<usize>>,
    pub rset: RSet,
}

/// Each monodromy orbit of size 1 on `R(H)` contributes a copy of the base;
/// an orbit of size `d >= 2` contributes a degree-`d` cover of the base,
/// kept as an opaque atom.
pub fn motive_chi_gerbe(datum: &GerbeDatum, p: u64) -> Result<GerbeMotive, StackError> {
    let rset = gerbe_rset(&datum.group, p, &datum.monodromy)?;
    let orbits = rset.monodromy_orbits();
    let mut motive = Motive::zero();
    for orbit in &orbits {
        let d = orbit.len() as u32;
        let piece = if d == 1 {
            datum.base.clone()
        } else {
            Motive::from_terms([Term {
                atom: Atom::cover(datum.base_label.clone(), d)?,
                twist: 0,
                multiplicity: 1,
            }])
        };
        motive = motive.direct_sum(&piece);
    }
    Ok(GerbeMotive {
        motive,
        h_factor: datum.base.clone(),
        orbits,
        rset,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;

    #[test]
    fn rejects_non_automorphisms() {
        let c3 = catalog::cyclic(3).unwrap();
        let e = c3.identity();
        assert!(matches!(
            Automorphism::new(&c3, vec![e]),
            Err(StackError::NotAnAutomorphism(_))
        ));
        let s3 = catalog::symmetric(3).unwrap();
        // sending both generators to a transposition is not injective
        let t = s3
            .generators()
            .iter()
            .find(|g| g.order() == 2)
            .unwrap()
            .clone();
        let imgs = vec![t; s3.generators().len()];
        assert!(Automorphism::new(&s3, imgs).is_err());
    }

    #[test]
    fn inversion_swaps_characters() {
        let c3 = catalog::cyclic(3).unwrap();
        let inv =
            Automorphism::new(&c3, c3.generators().iter().map(Perm::inverse).collect()).unwrap();
        let r = gerbe_rset(&c3, 0, &[inv]).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r.aut_action[0].images(), &[0, 2, 1]);
        assert_eq!(r.monodromy_orbits(), vec![vec![0], vec![1, 2]]);
    }
}
