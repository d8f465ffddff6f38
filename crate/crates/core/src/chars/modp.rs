//! Arithmetic and linear algebra over a prime field `F_p` with `p < 2^31`.

use crate::groups::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime(p) && p < (1 << 31));
        PrimeField { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn reduce(&self, a: u64) -> u64 {
        a % self.p
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(&self) -> u64 {
        let n = self.p - 1;
        let mut factors = Vec::new();
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, n / q) != 1))
            .unwrap_or(1)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&self, rows: &mut [Vec<u64>]) -> Vec<usize> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == rows.len() {
                break;
            }
            let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x = self.sub(*x, self.mul(f, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of the null space `{ u : A u = 0 }` of a square matrix.
    pub fn kernel(&self, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = a.first().map_or(0, Vec::len);
        let mut m = a.to_vec();
        let pivots = self.rref(&mut m);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; n];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.neg(m[r][f]);
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial `det(x I - A)`, lowest degree first, via
    /// reduction to upper Hessenberg form.
    pub fn charpoly(&self, a: &[Vec<u64>]) -> Vec<u64> {
        let n = a.len();
        let mut h = a.to_vec();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let t_inv = self.inv(h[m][m - 1]);
            for i in m + 1..n {
                let u = self.mul(h[i][m - 1], t_inv);
                if u == 0 {
                    continue;
                }
                let pivot = h[m].clone();
                for (x, &y) in h[i].iter_mut().zip(&pivot) {
                    *x = self.sub(*x, self.mul(u, y));
                }
                for row in h.iter_mut() {
                    let v = self.mul(u, row[i]);
                    row[m] = self.add(row[m], v);
                }
            }
        }
        // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 0..n {
            let prev = &polys[k];
            let mut next = vec![0u64; k + 2];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = self.add(next[d + 1], c);
                next[d] = self.sub(next[d], self.mul(h[k][k], c));
            }
            let mut prod = 1u64;
            for i in (0..k).rev() {
                prod = self.mul(prod, h[i + 1][i]);
                let coef = self.mul(h[i][k], prod);
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = self.sub(next[d], self.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().expect("nonempty")
    }

    pub fn eval(&self, poly: &[u64], x: u64) -> u64 {
        poly.iter()
            .rev()
            .fold(0u64, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// All roots in `F_p`, by exhaustive evaluation.
    pub fn roots(&self, poly: &[u64]) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(poly, x) == 0).collect()
    }
}

/// Smallest prime `p > lower` with `p = 1 mod modulus`.
pub(crate) fn prime_congruent_one(modulus: u64, lower: u64) -> u64 {
    let mut p = (lower / modulus) * modulus + 1;
    while p <= lower || !is_prime(p) {
        p += modulus;
    }
    p
}
