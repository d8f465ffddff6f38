use std::collections::{HashMap, HashSet, VecDeque};

use num_integer::Integer;

use super::{GroupError, Perm};

/// Size limits for brute-force enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupLimits {
    pub max_elements: usize,
    pub max_degree: usize,
}

impl Default for GroupLimits {
    fn default() -> Self {
        GroupLimits {
            max_elements: 10_000,
            max_degree: 64,
        }
    }
}

/// A permutation group with all of its elements enumerated.
///
/// `elements` is sorted lexicographically on image arrays; index 0 is the
/// identity. Element indices are stable and are used throughout the crate
/// as cheap handles.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    /// Lexicographically minimal member.
    pub representative: Perm,
    /// Sorted members.
    pub members: Vec<Perm>,
    /// Order of any member.
    pub order: u64,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Conjugacy classes together with the class index of every element.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    pub classes: Vec<ConjClass>,
    pub class_of: Vec<usize>,
}

/// A subset of a group closed under products and inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    degree: usize,
    elements: Vec<Perm>,
}

impl Subgroup {
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Rebuilds the subgroup as a standalone group, with a generating set
    /// picked greedily from its sorted elements.
    pub fn to_group(&self) -> FiniteGroup {
        let mut gens: Vec<Perm> = Vec::new();
        let mut closure: HashSet<Perm> = HashSet::from([Perm::identity(self.degree)]);
        for g in &self.elements {
            if closure.contains(g) {
                continue;
            }
            gens.push(g.clone());
            closure = close(self.degree, &gens, usize::MAX)
                .expect("subgroup closure is bounded by the subgroup")
                .into_iter()
                .collect();
        }
        FiniteGroup::from_sorted_elements(self.degree, gens, self.elements.clone())
    }
}

/// One conjugacy class of cyclic subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicClass {
    /// Lexicographically minimal generator of the lexicographically minimal
    /// conjugate subgroup.
    pub generator: Perm,
    pub order: u64,
    /// `generator^0, generator^1, .., generator^(order - 1)`, in that order.
    pub powers: Vec<Perm>,
    pub normalizer: Subgroup,
    /// Number of subgroups conjugate to this one.
    pub conjugates: usize,
}

impl CyclicClass {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// The exponent `k` with `generator^k == g`, if `g` lies in the subgroup.
    pub fn log(&self, g: &Perm) -> Option<u64> {
        self.powers.iter().position(|p| p == g).map(|k| k as u64)
    }

    /// The subgroup elements in sorted order.
    pub fn sorted_elements(&self) -> Vec<Perm> {
        let mut v = self.powers.clone();
        v.sort();
        v
    }
}

pub fn generate_group(degree: usize, generators: Vec<Perm>) -> Result<FiniteGroup, GroupError> {
    generate_group_with(degree, generators, GroupLimits::default())
}

pub fn generate_group_with(
    degree: usize,
    generators: Vec<Perm>,
    limits: GroupLimits,
) -> Result<FiniteGroup, GroupError> {
    if degree > limits.max_degree {
        return Err(GroupError::DegreeTooLarge {
            degree,
            cap: limits.max_degree,
        });
    }
    for g in &generators {
        if g.degree() != degree {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    let mut elements = close(degree, &generators, limits.max_elements)?;
    elements.sort();
    Ok(FiniteGroup::from_sorted_elements(
        degree, generators, elements,
    ))
}

/// Closure of `generators` under composition, by breadth-first search on
/// the Cayley graph.
fn close(degree: usize, generators: &[Perm], cap: usize) -> Result<Vec<Perm>, GroupError> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in generators {
            let y = s * &x;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(GroupError::GroupTooLarge { cap });
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

impl FiniteGroup {
    fn from_sorted_elements(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>) -> Self {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        FiniteGroup {
            degree,
            generators,
            elements,
            index,
        }
    }

    pub fn trivial(degree: usize) -> Self {
        generate_group(degree, vec![]).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &Perm {
        &self.elements[idx]
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.index.contains_key(g)
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    /// Index of `elements[a] * elements[b]`.
    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.index[&(&self.elements[a] * &self.elements[b])]
    }

    pub fn inv_idx(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a * b == b * a))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.elements
            .iter()
            .fold(1u64, |acc, g| acc.lcm(&g.order()))
    }

    /// Partition into conjugacy classes, ordered by element order and then
    /// by representative.
    pub fn class_partition(&self) -> ClassPartition {
        let n = self.order();
        let mut raw: Vec<Vec<usize>> = Vec::new();
        let mut assigned = vec![usize::MAX; n];
        let gen_inv: Vec<Perm> = self.generators.iter().map(Perm::inverse).collect();
        for start in 0..n {
            if assigned[start] != usize::MAX {
                continue;
            }
            let id = raw.len();
            let mut members = vec![start];
            assigned[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for (s, s_inv) in self.generators.iter().zip(&gen_inv) {
                    let y = self.index[&(&(s * &self.elements[x]) * s_inv)];
                    if assigned[y] == usize::MAX {
                        assigned[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            raw.push(members);
        }
        let mut classes: Vec<(u64, Vec<usize>)> = raw
            .into_iter()
            .map(|m| (self.elements[m[0]].order(), m))
            .collect();
        // members are sorted indices, so m[0] is the lexicographic minimum
        classes.sort_by(|a, b| (a.0, a.1[0]).cmp(&(b.0, b.1[0])));
        let mut class_of = vec![0; n];
        for (ci, (_, members)) in classes.iter().enumerate() {
            for &m in members {
                class_of[m] = ci;
            }
        }
        let classes = classes
            .into_iter()
            .map(|(order, members)| ConjClass {
                representative: self.elements[members[0]].clone(),
                members: members.iter().map(|&i| self.elements[i].clone()).collect(),
                order,
            })
            .collect();
        ClassPartition { classes, class_of }
    }

    pub fn conjugacy_classes(&self) -> Vec<ConjClass> {
        self.class_partition().classes
    }

    /// Sorted element indices of the cyclic subgroup generated by `elements[g]`.
    fn cyclic_key(&self, g: usize) -> Vec<usize> {
        let x = &self.elements[g];
        let mut key = Vec::new();
        let mut p = self.identity();
        loop {
            key.push(self.index[&p]);
            p = x * &p;
            if p.is_identity() {
                break;
            }
        }
        key.sort_unstable();
        key
    }

    /// Representatives of the conjugacy classes of cyclic subgroups whose
    /// order is prime to `characteristic` (every order when it is 0).
    pub fn cyclic_subgroup_classes(
        &self,
        characteristic: u64,
    ) -> Result<Vec<CyclicClass>, GroupError> {
        check_characteristic(characteristic)?;
        let mut subgroups: Vec<Vec<usize>> = Vec::new();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for g in 0..self.order() {
            let m = self.elements[g].order();
            if !order_allowed(m, characteristic) {
                continue;
            }
            let key = self.cyclic_key(g);
            if seen.insert(key.clone()) {
                subgroups.push(key);
            }
        }
        let gen_inv: Vec<Perm> = self.generators.iter().map(Perm::inverse).collect();
        let mut done: HashSet<Vec<usize>> = HashSet::new();
        let mut out = Vec::new();
        for sg in subgroups {
            if done.contains(&sg) {
                continue;
            }
            let mut orbit = vec![sg.clone()];
            done.insert(sg.clone());
            let mut queue = VecDeque::from([sg]);
            while let Some(c) = queue.pop_front() {
                for (s, s_inv) in self.generators.iter().zip(&gen_inv) {
                    let mut conj: Vec<usize> = c
                        .iter()
                        .map(|&x| self.index[&(&(s * &self.elements[x]) * s_inv)])
                        .collect();
                    conj.sort_unstable();
                    if done.insert(conj.clone()) {
                        orbit.push(conj.clone());
                        queue.push_back(conj);
                    }
                }
            }
            let rep = orbit.iter().min().expect("nonempty orbit").clone();
            let m = rep.len() as u64;
            let gen_idx = *rep
                .iter()
                .find(|&&x| self.elements[x].order() == m)
                .expect("cyclic subgroup has a generator");
            let generator = self.elements[gen_idx].clone();
            let powers: Vec<Perm> = (0..m).map(|k| generator.pow(k)).collect();
            let normalizer = self.normalizer_of_cyclic(&generator);
            if normalizer.order() * orbit.len() != self.order() {
                return Err(GroupError::Internal(format!(
                    "orbit-stabilizer failed for <{generator}>"
                )));
            }
            out.push(CyclicClass {
                generator,
                order: m,
                powers,
                normalizer,
                conjugates: orbit.len(),
            });
        }
        out.sort_by(|a, b| (a.order, &a.generator).cmp(&(b.order, &b.generator)));
        Ok(out)
    }

    fn normalizer_of_cyclic(&self, generator: &Perm) -> Subgroup {
        let powers: HashSet<Perm> = (0..generator.order()).map(|k| generator.pow(k)).collect();
        let elements = self
            .elements
            .iter()
            .filter(|g| powers.contains(&generator.conjugate_by(g)))
            .cloned()
            .collect();
        Subgroup {
            degree: self.degree,
            elements,
        }
    }

    /// Checks that `subset` is a subgroup of `self` and returns it sorted.
    pub fn subgroup(&self, subset: &[Perm]) -> Result<Subgroup, GroupError> {
        let set: HashSet<&Perm> = subset.iter().collect();
        let closed = set.contains(&self.identity())
            && subset.iter().all(|x| self.contains(x))
            && subset
                .iter()
                .all(|x| subset.iter().all(|y| set.contains(&(x * y))));
        if !closed {
            return Err(GroupError::NotASubgroup);
        }
        let mut elements: Vec<Perm> = set.into_iter().cloned().collect();
        elements.sort();
        Ok(Subgroup {
            degree: self.degree,
            elements,
        })
    }

    /// The subgroup generated by `gens`, which must be elements of `self`.
    pub fn subgroup_generated(&self, gens: &[Perm]) -> Result<Subgroup, GroupError> {
        if let Some(bad) = gens.iter().find(|g| !self.contains(g)) {
            return Err(GroupError::NotAnElement(bad.to_string()));
        }
        let mut elements = close(self.degree, gens, self.order())?;
        elements.sort();
        Ok(Subgroup {
            degree: self.degree,
            elements,
        })
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            degree: self.degree,
            elements: self.elements.clone(),
        }
    }

    /// `{ g : g c g^-1 = c }`.
    pub fn normalizer(&self, c: &[Perm]) -> Result<Subgroup, GroupError> {
        let c = self.subgroup(c)?;
        let elements = self
            .elements
            .iter()
            .filter(|g| c.elements.iter().all(|x| c.contains(&x.conjugate_by(g))))
            .cloned()
            .collect();
        Ok(Subgroup {
            degree: self.degree,
            elements,
        })
    }

    /// `{ g : g h = h g }`.
    pub fn centralizer(&self, h: &Perm) -> Result<Subgroup, GroupError> {
        if !self.contains(h) {
            return Err(GroupError::NotAnElement(h.to_string()));
        }
        let elements = self
            .elements
            .iter()
            .filter(|g| (*g * h) == (h * *g))
            .cloned()
            .collect();
        Ok(Subgroup {
            degree: self.degree,
            elements,
        })
    }

    /// The unit `a` modulo `c.order` with `n^-1 g n = g^a`, where `g` is the
    /// chosen generator of `c`.
    pub fn conjugation_exponent(&self, n: &Perm, c: &CyclicClass) -> Result<u64, GroupError> {
        if c.order == 1 {
            return Ok(1);
        }
        let conj = c.generator.conjugate_by(&n.inverse());
        c.log(&conj).ok_or_else(|| GroupError::NotInNormalizer {
            element: n.to_string(),
            subgroup: c.generator.to_string(),
        })
    }

    /// `self x other`, acting on the disjoint union of the two point sets.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
        self.direct_product_with(other, GroupLimits::default())
    }

    pub fn direct_product_with(
        &self,
        other: &FiniteGroup,
        limits: GroupLimits,
    ) -> Result<FiniteGroup, GroupError> {
        let degree = self.degree + other.degree;
        if degree > limits.max_degree {
            return Err(GroupError::DegreeTooLarge {
                degree,
                cap: limits.max_degree,
            });
        }
        if self.order().saturating_mul(other.order()) > limits.max_elements {
            return Err(GroupError::GroupTooLarge {
                cap: limits.max_elements,
            });
        }
        let gens = self
            .generators
            .iter()
            .map(|g| g.embed(0, degree))
            .chain(
                other
                    .generators
                    .iter()
                    .map(|h| h.embed(self.degree, degree)),
            )
            .collect();
        generate_group_with(degree, gens, limits)
    }
}

pub(crate) fn check_characteristic(p: u64) -> Result<(), GroupError> {
    if p == 0 || is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::BadCharacteristic(p))
    }
}

pub(crate) fn order_allowed(m: u64, p: u64) -> bool {
    p == 0 || !m.is_multiple_of(p)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
