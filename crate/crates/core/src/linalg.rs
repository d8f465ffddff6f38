//! Dense matrices over an exact field.
//!
//! Shapes with zero rows or zero columns are legal; they show up as blocks
//! of correspondences between motives that have no term at some twist.

use std::fmt;
use std::ops::Mul;

use crate::scalar::ExactField;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: ExactField> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| T::from_int(x)).collect())
                .collect(),
        )
    }

    /// Builds a matrix with an explicit shape, so that `0 x n` and `n x 0`
    /// can be expressed.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * k.clone()).collect(),
        }
    }

    /// Matrix product, or `None` when the inner dimensions differ.
    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        if self.cols != rhs.rows {
            return None;
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Some(out)
    }

    pub fn add(&self, rhs: &Self) -> Option<Self> {
        if self.shape() != rhs.shape() {
            return None;
        }
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    /// Selects the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    /// Selects the given rows, in order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self[(rows[i], j)].clone())
    }

    /// Rank by fraction-free (Bareiss) elimination.
    ///
    /// Every update is `(pivot * a_ij - a_ic * a_rj) / previous_pivot`; on
    /// integer input all intermediate entries stay integral.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut prev = T::one();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let pivot = a[(r, c)].clone();
            for i in r + 1..a.rows {
                let lead = a[(i, c)].clone();
                for j in c + 1..a.cols {
                    let v = (pivot.clone() * a[(i, j)].clone() - lead.clone() * a[(r, j)].clone())
                        / prev.clone();
                    a[(i, j)] = v;
                }
                a[(i, c)] = T::zero();
            }
            prev = pivot;
            r += 1;
        }
        r
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv = a[(r, c)].inv();
            for j in c..a.cols {
                a[(r, j)] = a[(r, j)].clone() * inv.clone();
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    let v = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                    a[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// Factors `self = left * right` with `left` of full column rank and
    /// `right` of full row rank.
    ///
    /// The columns of `left` are the reduced echelon basis of the column
    /// space; `right` collects the rows of `self` at the pivot positions of
    /// that basis.
    pub fn rank_factorization(&self) -> (Self, Self) {
        let (basis, pivots) = self.transpose().rref();
        let k = pivots.len();
        let left = Self::from_fn(self.rows, k, |i, j| basis[(j, i)].clone());
        let right = self.select_rows(&pivots);
        (left, right)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: ExactField> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: Self) -> Matrix<T> {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(ToString::to_string)
                .collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::Ratio;

    type Q = Ratio<BigInt>;

    #[test]
    fn rank_of_singular_matrices() {
        let m = Matrix::<Q>::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rref().1.len(), 2);
        assert_eq!(Matrix::<Q>::zeros(3, 4).rank(), 0);
        assert_eq!(Matrix::<Q>::zeros(0, 4).rank(), 0);
    }

    #[test]
    fn bareiss_stays_integral_on_integer_input() {
        let m = Matrix::<Ratio<i64>>::from_i64_rows(&[&[2, 3, 1], &[4, 1, 5], &[6, 7, 2]]);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn rank_factorization_reconstructs() {
        let m = Matrix::<Q>::from_i64_rows(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 3]]);
        let (l, r) = m.rank_factorization();
        assert_eq!(l.shape(), (3, 2));
        assert_eq!(r.shape(), (2, 3));
        assert_eq!(&l * &r, m);
    }

    #[test]
    fn empty_shapes_multiply() {
        let a = Matrix::<Q>::zeros(2, 0);
        let b = Matrix::<Q>::zeros(0, 3);
        assert_eq!(&a * &b, Matrix::zeros(2, 3));
    }
}
