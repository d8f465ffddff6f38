//! The representation ring: structure constants of tensor products of
//! irreducible characters.

use rayon::prelude::*;

use super::{CharError, CharacterTable};
use crate::scalar::ExactField;
use crate::{Cyclotomic, Rational};

/// `chi_i * chi_j = sum_k n[i][j][k] chi_k`.
#[derive(Clone, Debug)]
pub struct RepRing {
    table: CharacterTable,
    rank: usize,
    constants: Vec<u64>,
}

pub fn rep_ring(table: &CharacterTable) -> Result<RepRing, CharError> {
    let r = table.len();
    let rows = table.rows();
    if rows.iter().any(|row| row.len() != table.classes().len()) {
        return Err(CharError::ShapeMismatch {
            expected: table.classes().len(),
            found: rows.iter().map(Vec::len).max().unwrap_or(0),
        });
    }
    // <phi, chi_k> = sum_c phi(c) w_k(c) with w_k(c) = |c| conj(chi_k(c)) / |G|
    let order = table.group().order() as i64;
    let weights: Vec<Vec<Cyclotomic>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .zip(table.classes())
                .map(|(v, c)| {
                    v.conj()
                        .scale(&Rational::from_ratio(c.size() as i64, order))
                })
                .collect()
        })
        .collect();
    // the constants are symmetric in i and j, so only i <= j is computed
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect();
    let computed: Vec<Vec<u64>> = pairs
        .par_iter()
        .map(|&(i, j)| pair_constants(rows, &weights, i, j))
        .collect::<Result<_, _>>()?;
    let mut constants = vec![0u64; r * r * r];
    for (&(i, j), ns) in pairs.iter().zip(&computed) {
        for (k, &n) in ns.iter().enumerate() {
            constants[(i * r + j) * r + k] = n;
            constants[(j * r + i) * r + k] = n;
        }
    }
    Ok(RepRing {
        table: table.clone(),
        rank: r,
        constants,
    })
}

/// Multiplicities of every irreducible in `chi_i chi_j`, checked to rebuild
/// the product on every class.
fn pair_constants(
    rows: &[Vec<Cyclotomic>],
    weights: &[Vec<Cyclotomic>],
    i: usize,
    j: usize,
) -> Result<Vec<u64>, CharError> {
    let product: Vec<Cyclotomic> = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).collect();
    let constants = weights
        .iter()
        .enumerate()
        .map(|(k, w)| {
            let ip: Cyclotomic = product.iter().zip(w).map(|(a, b)| a * b).sum();
            ip.as_rational()
                .and_then(|q| q.as_integer())
                .filter(|&n| n >= 0)
                .map(|n| n as u64)
                .ok_or_else(|| CharError::NonIntegralConstant {
                    i,
                    j,
                    k,
                    value: ip.to_string(),
                })
        })
        .collect::<Result<Vec<u64>, _>>()?;
    if !rebuilds(rows, &product, &constants) {
        return Err(CharError::NonIntegralConstant {
            i,
            j,
            k: 0,
            value: "pointwise mismatch".into(),
        });
    }
    Ok(constants)
}

/// `sum_k n_k chi_k(c) == product(c)` on every class `c`.
fn rebuilds(rows: &[Vec<Cyclotomic>], product: &[Cyclotomic], constants: &[u64]) -> bool {
    product.iter().enumerate().all(|(c, value)| {
        let rebuilt: Cyclotomic = constants
            .iter()
            .zip(rows)
            .filter(|(&n, _)| n != 0)
            .map(|(&n, row)| row[c].scale(&Rational::from_int(n as i64)))
            .sum();
        &rebuilt == value
    })
}

impl RepRing {
    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> u64 {
        self.constants[(i * self.rank + j) * self.rank + k]
    }

    /// Multiplicities of the irreducibles in `rho_i (x) rho_j`.
    pub fn product(&self, i: usize, j: usize) -> Vec<u64> {
        (0..self.rank).map(|k| self.constant(i, j, k)).collect()
    }

    /// The `r^2 x r` matrix with row `i * r + j` equal to `product(i, j)`.
    pub fn product_matrix(&self) -> Vec<Vec<u64>> {
        (0..self.rank * self.rank)
            .map(|ij| self.product(ij / self.rank, ij % self.rank))
            .collect()
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank;
        (0..r).all(|i| {
            (0..r).all(|j| (0..r).all(|k| self.constant(i, j, k) == self.constant(j, i, k)))
        })
    }

    /// `(rho_i rho_j) rho_k = rho_i (rho_j rho_k)` as an identity on
    /// structure constants.
    pub fn is_associative(&self) -> bool {
        let r = self.rank;
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for m in 0..r {
                        let left: u64 = (0..r)
                            .map(|l| self.constant(i, j, l) * self.constant(l, k, m))
                            .sum();
                        let right: u64 = (0..r)
                            .map(|l| self.constant(j, k, l) * self.constant(i, l, m))
                            .sum();
                        if left != right {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Row 0 (the trivial character) is the unit.
    pub fn has_unit(&self) -> bool {
        let r = self.rank;
        (0..r).all(|j| (0..r).all(|k| self.constant(0, j, k) == u64::from(j == k)))
    }

    /// Checks `chi_i(g) chi_j(g) = sum_k n^{ij}_k chi_k(g)` on every class.
    pub fn pointwise_identity_holds(&self) -> bool {
        let rows = self.table.rows();
        let r = self.rank;
        (0..r * r).into_par_iter().all(|ij| {
            let (i, j) = (ij / r, ij % r);
            let product: Vec<Cyclotomic> =
                rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).collect();
            rebuilds(rows, &product, &self.product(i, j))
        })
    }
}
