//! Character tables by the Dixon-Schneider method.
//!
//! The class sums span the center of the group algebra. Their structure
//! constants are reduced modulo a prime `p = 1 (mod exp G)` and the
//! common eigenvectors of the class matrices (the central characters) are
//! found by repeated eigenspace splitting over `F_p`. Character values are
//! lifted back to cyclotomic numbers by recovering, for every class, the
//! eigenvalue multiplicities of a representing matrix through the powers of
//! a fixed primitive `exp(G)`-th root of unity in `F_p`.
//!
//! Abelian groups with a small enough generating set take a direct route:
//! every assignment of roots of unity to the generators is tried and kept
//! when it extends to a homomorphism.

use num_integer::Roots;
use num_traits::One;

use super::modp::{prime_congruent_one, PrimeField};
use super::CharError;
use crate::groups::{ClassPartition, ConjClass, FiniteGroup, Perm};
use crate::scalar::ExactField;
use crate::{Cyclotomic, Rational};

/// Upper bound on `candidates * |G|` for the abelian enumeration.
const ABELIAN_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: FiniteGroup,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
    inverse_class: Vec<usize>,
    rows: Vec<Vec<Cyclotomic>>,
    degrees: Vec<u64>,
}

/// Which algorithm produced a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableMethod {
    DixonSchneider,
    Abelian,
}

pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable, CharError> {
    let method = if group.is_abelian() && abelian_cost(group) <= ABELIAN_BUDGET {
        TableMethod::Abelian
    } else {
        TableMethod::DixonSchneider
    };
    character_table_by(group, method)
}

/// Forces one of the two construction routes; the abelian route rejects
/// non-abelian groups.
pub fn character_table_by(
    group: &FiniteGroup,
    method: TableMethod,
) -> Result<CharacterTable, CharError> {
    let ClassPartition { classes, class_of } = group.class_partition();
    let inverse_class: Vec<usize> = classes
        .iter()
        .map(|c| class_of[group.index_of(&c.representative.inverse()).expect("closed")])
        .collect();
    let rows = match method {
        TableMethod::Abelian => {
            if !group.is_abelian() {
                return Err(CharError::Internal(
                    "abelian route on a non-abelian group".into(),
                ));
            }
            abelian_rows(group, &classes)?
        }
        TableMethod::DixonSchneider => dixon_rows(group, &classes, &class_of, &inverse_class)?,
    };
    let mut rows: Vec<(u64, Vec<Cyclotomic>)> = rows
        .into_iter()
        .map(|r| {
            let d = r[0].as_rational().and_then(|q| q.as_integer()).unwrap_or(0) as u64;
            (d, r)
        })
        .collect();
    let one = Cyclotomic::one();
    rows.sort_by(|(da, a), (db, b)| {
        let ta = a.iter().all(|x| *x == one);
        let tb = b.iter().all(|x| *x == one);
        da.cmp(db).then(tb.cmp(&ta)).then_with(|| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.canonical_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    let (degrees, rows) = rows.into_iter().unzip();
    let table = CharacterTable {
        group: group.clone(),
        classes,
        class_of,
        inverse_class,
        rows,
        degrees,
    };
    table.check_basic()?;
    Ok(table)
}

fn abelian_cost(group: &FiniteGroup) -> u64 {
    let gens = independent_generators(group);
    gens.iter()
        .try_fold(group.order() as u64, |acc, g| acc.checked_mul(g.order()))
        .unwrap_or(u64::MAX)
}

/// Drops generators that already lie in the span of the earlier ones.
fn independent_generators(group: &FiniteGroup) -> Vec<Perm> {
    let mut kept: Vec<Perm> = Vec::new();
    let mut span = group.subgroup_generated(&[]).expect("trivial subgroup");
    for g in group.generators() {
        if span.contains(g) {
            continue;
        }
        kept.push(g.clone());
        span = group
            .subgroup_generated(&kept)
            .expect("generators are elements");
    }
    kept
}

fn abelian_rows(
    group: &FiniteGroup,
    classes: &[ConjClass],
) -> Result<Vec<Vec<Cyclotomic>>, CharError> {
    let e = group.exponent();
    let gens = independent_generators(group);
    let gen_orders: Vec<u64> = gens.iter().map(Perm::order).collect();
    let n = group.order();
    let gen_idx: Vec<usize> = gens
        .iter()
        .map(|g| group.index_of(g).expect("element"))
        .collect();
    let total: u64 = gen_orders.iter().product();
    let mut rows = Vec::new();
    let mut exps = vec![0u64; n];
    for code in 0..total {
        let mut c = code;
        let steps: Vec<u64> = gen_orders
            .iter()
            .map(|&o| {
                let a = c % o;
                c /= o;
                a * (e / o)
            })
            .collect();
        let mut set = vec![false; n];
        set[0] = true;
        exps[0] = 0;
        let mut stack = vec![0usize];
        let mut ok = true;
        'bfs: while let Some(x) = stack.pop() {
            for (k, &s) in gen_idx.iter().enumerate() {
                let y = group.mul_idx(s, x);
                let val = (exps[x] + steps[k]) % e;
                if !set[y] {
                    set[y] = true;
                    exps[y] = val;
                    stack.push(y);
                } else if exps[y] != val {
                    ok = false;
                    break 'bfs;
                }
            }
        }
        if !ok {
            continue;
        }
        let row = classes
            .iter()
            .map(|cl| {
                let idx = group.index_of(&cl.representative).expect("element");
                let o = cl.order;
                // exps is a multiple of e / o
                Cyclotomic::root_of_unity(o, exps[idx] / (e / o))
            })
            .collect();
        rows.push(row);
    }
    if rows.len() != n {
        return Err(CharError::Internal(format!(
            "abelian enumeration found {} characters for a group of order {n}",
            rows.len()
        )));
    }
    Ok(rows)
}

fn dixon_rows(
    group: &FiniteGroup,
    classes: &[ConjClass],
    class_of: &[usize],
    inverse_class: &[usize],
) -> Result<Vec<Vec<Cyclotomic>>, CharError> {
    let r = classes.len();
    let order = group.order() as u64;
    let e = group.exponent();
    let field = PrimeField::new(prime_congruent_one(e, order.max(2 * r as u64)));
    let p = field.p;

    // a[j][i][k] = #{ (x, y) : x in C_i, y in C_j, x y = z_k }
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (k, cl) in classes.iter().enumerate() {
        let z = &cl.representative;
        for (xi, x) in group.elements().iter().enumerate() {
            let y = &x.inverse() * z;
            let yi = group.index_of(&y).expect("closed");
            a[class_of[yi]][class_of[xi]][k] += 1;
        }
    }

    // common eigenspaces of the class matrices M_j with (M_j)_{ik} = a[j][i][k]
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| (0..r).map(|k| u64::from(i == k)).collect())
        .collect()];
    for mj in a.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split_space(&field, mj, space)?);
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.len() != 1) {
        return Err(CharError::Internal(
            "class matrices did not separate the central characters".into(),
        ));
    }

    let sizes: Vec<u64> = classes.iter().map(|c| c.size() as u64).collect();
    let omega = field.pow(field.primitive_root(), (p - 1) / e);
    let omega_pows: Vec<u64> = (0..e).map(|t| field.pow(omega, t)).collect();
    let power_class: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            (0..c.order)
                .map(|l| class_of[group.index_of(&c.representative.pow(l)).expect("closed")])
                .collect()
        })
        .collect();

    let mut rows = Vec::with_capacity(r);
    for space in spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(CharError::Internal(
                "central character vanishes at 1".into(),
            ));
        }
        let inv0 = field.inv(v[0]);
        let w: Vec<u64> = v.iter().map(|&x| field.mul(x, inv0)).collect();
        // sum_i w_i w_{i*} / |C_i| = |G| / d^2
        let s = (0..r).fold(0u64, |acc, i| {
            let t = field.mul(
                field.mul(w[i], w[inverse_class[i]]),
                field.inv(sizes[i] % p),
            );
            field.add(acc, t)
        });
        if s == 0 {
            return Err(CharError::Internal("degenerate degree equation".into()));
        }
        let d2 = field.mul(field.reduce(order), field.inv(s));
        let degree = (1..=order.sqrt())
            .find(|&d| field.mul(d, d) == d2)
            .ok_or_else(|| CharError::Internal("no integral degree".into()))?;
        let chi: Vec<u64> = (0..r)
            .map(|i| field.mul(field.mul(degree, w[i]), field.inv(sizes[i] % p)))
            .collect();
        let mut row = Vec::with_capacity(r);
        for (i, cl) in classes.iter().enumerate() {
            let o = cl.order;
            let step = e / o;
            let inv_o = field.inv(o % p);
            let mut mults = Vec::with_capacity(o as usize);
            for k in 0..o {
                let mut acc = 0u64;
                for l in 0..o {
                    let t = ((e - (k * l) % o * step % e) % e) as usize;
                    acc = field.add(
                        acc,
                        field.mul(chi[power_class[i][l as usize]], omega_pows[t]),
                    );
                }
                let m = field.mul(acc, inv_o);
                if m > degree {
                    return Err(CharError::Internal(format!(
                        "eigenvalue multiplicity {m} exceeds degree {degree}"
                    )));
                }
                mults.push(Rational::from_int(m as i64));
            }
            row.push(Cyclotomic::from_poly(o, mults));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Splits a subspace (rows in reduced echelon form) into eigenspaces of `m`.
fn split_space(
    field: &PrimeField,
    m: &[Vec<u64>],
    mut basis: Vec<Vec<u64>>,
) -> Result<Vec<Vec<Vec<u64>>>, CharError> {
    let pivots = field.rref(&mut basis);
    let d = basis.len();
    let r = m.len();
    // image of each basis vector, in basis coordinates read at the pivots
    let mut restricted = vec![vec![0u64; d]; d];
    for (t, b) in basis.iter().enumerate() {
        let image: Vec<u64> = (0..r)
            .map(|i| (0..r).fold(0u64, |acc, k| field.add(acc, field.mul(m[i][k], b[k]))))
            .collect();
        for (s, &pc) in pivots.iter().enumerate() {
            restricted[s][t] = image[pc];
        }
    }
    let cp = field.charpoly(&restricted);
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in field.roots(&cp) {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|s| {
                (0..d)
                    .map(|t| {
                        if s == t {
                            field.sub(restricted[s][t], lambda)
                        } else {
                            restricted[s][t]
                        }
                    })
                    .collect()
            })
            .collect();
        let kernel = field.kernel(&shifted);
        found += kernel.len();
        let mut vectors: Vec<Vec<u64>> = kernel
            .iter()
            .map(|u| {
                (0..r)
                    .map(|i| {
                        (0..d).fold(0u64, |acc, t| field.add(acc, field.mul(u[t], basis[t][i])))
                    })
                    .collect()
            })
            .collect();
        field.rref(&mut vectors);
        out.push(vectors);
    }
    if found != d {
        return Err(CharError::Internal(
            "class matrix is not diagonalizable over the chosen prime".into(),
        ));
    }
    Ok(out)
}

impl CharacterTable {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn rows(&self) -> &[Vec<Cyclotomic>] {
        &self.rows
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Class index of an arbitrary group element.
    pub fn class_of(&self, g: &Perm) -> Option<usize> {
        self.group.index_of(g).map(|i| self.class_of[i])
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    /// `(1/|G|) sum_c |c| phi(c) conj(psi(c))`.
    pub fn inner_product(
        &self,
        phi: &[Cyclotomic],
        psi: &[Cyclotomic],
    ) -> Result<Cyclotomic, CharError> {
        if phi.len() != self.classes.len() || psi.len() != self.classes.len() {
            return Err(CharError::ShapeMismatch {
                expected: self.classes.len(),
                found: phi.len().max(psi.len()),
            });
        }
        let sum: Cyclotomic = self
            .classes
            .iter()
            .zip(phi.iter().zip(psi))
            .map(|(c, (a, b))| (a * &b.conj()).scale(&Rational::from_int(c.size() as i64)))
            .sum();
        Ok(sum.scale(&Rational::from_ratio(1, self.group.order() as i64)))
    }

    /// Inner product asserted to be rational.
    pub fn inner_product_rational(
        &self,
        phi: &[Cyclotomic],
        psi: &[Cyclotomic],
    ) -> Result<Rational, CharError> {
        let v = self.inner_product(phi, psi)?;
        v.as_rational().ok_or(CharError::NotRational(v.to_string()))
    }

    /// Permutation character of the group's action on its points, from
    /// fixed-point counts. Used only to validate tables.
    pub fn permutation_character(&self) -> Vec<Cyclotomic> {
        self.classes
            .iter()
            .map(|c| Cyclotomic::from_i64(c.representative.fixed_points().len() as i64))
            .collect()
    }

    /// The regular character `(|G|, 0, .., 0)`.
    pub fn regular_character(&self) -> Vec<Cyclotomic> {
        let mut v = vec![Cyclotomic::zero(); self.classes.len()];
        v[0] = Cyclotomic::from_i64(self.group.order() as i64);
        v
    }

    fn check_basic(&self) -> Result<(), CharError> {
        let r = self.classes.len();
        if self.rows.len() != r {
            return Err(CharError::Internal(format!(
                "{} rows for {r} classes",
                self.rows.len()
            )));
        }
        let sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sq != self.group.order() as u64 {
            return Err(CharError::Internal(format!(
                "sum of squared degrees is {sq}, group order {}",
                self.group.order()
            )));
        }
        if !self.rows[0].iter().all(is_one_value) {
            return Err(CharError::Internal(
                "first row is not the trivial character".into(),
            ));
        }
        self.check_row_orthogonality()
    }

    /// `<chi_i, chi_j> = delta_ij`, exactly.
    pub fn check_row_orthogonality(&self) -> Result<(), CharError> {
        for i in 0..self.rows.len() {
            for j in i..self.rows.len() {
                let ip = self.inner_product(&self.rows[i], &self.rows[j])?;
                let expect = if i == j {
                    Cyclotomic::one()
                } else {
                    Cyclotomic::zero()
                };
                if ip != expect {
                    return Err(CharError::Internal(format!("<chi_{i}, chi_{j}> = {ip}")));
                }
            }
        }
        Ok(())
    }

    /// `sum_i chi_i(g) conj(chi_i(h)) = delta_{[g],[h]} |C_G(g)|`, exactly.
    pub fn check_column_orthogonality(&self) -> Result<(), CharError> {
        let order = self.group.order() as i64;
        for a in 0..self.classes.len() {
            for b in a..self.classes.len() {
                let s: Cyclotomic = self.rows.iter().map(|row| &row[a] * &row[b].conj()).sum();
                let expect = if a == b {
                    Cyclotomic::from_i64(order / self.classes[a].size() as i64)
                } else {
                    Cyclotomic::zero()
                };
                if s != expect {
                    return Err(CharError::Internal(format!(
                        "column orthogonality fails at classes {a}, {b}: {s}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn is_one_value(x: &Cyclotomic) -> bool {
    x.as_rational().is_some_and(|q| q.is_one())
}
