//! Elements of cyclotomic fields `Q(zeta_n)` in the reduced power basis.
//!
//! A number with conductor `n` is stored as its coordinates on
//! `1, zeta_n, .., zeta_n^(phi(n) - 1)` after reduction modulo the `n`-th
//! cyclotomic polynomial. Binary operations promote both operands to the
//! lcm of their conductors, so equality is exact and canonical at that
//! level.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use crate::scalar::ExactField;

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn mobius(n: u64) -> i32 {
    let mut m = n;
    let mut k = 0;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if m > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Integer coefficients (lowest degree first) of the `n`-th cyclotomic
/// polynomial, via `prod_{d | n} (x^d - 1)^mu(n/d)`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "conductor must be positive");
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut num = vec![1i64];
    let mut den = vec![1i64];
    for &d in &divisors {
        let factor = {
            let mut f = vec![0i64; d as usize + 1];
            f[0] = -1;
            f[d as usize] = 1;
            f
        };
        match mobius(n / d) {
            1 => num = poly_mul(&num, &factor),
            -1 => den = poly_mul(&den, &factor),
            _ => {}
        }
    }
    poly_div_exact(&num, &den)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a polynomial with leading coefficient +-1.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let lead = *den.last().expect("nonzero divisor");
    debug_assert!(lead == 1 || lead == -1);
    let mut rem = num.to_vec();
    let dq = num.len() - den.len();
    let mut q = vec![0i64; dq + 1];
    for k in (0..=dq).rev() {
        let c = rem[k + den.len() - 1] * lead;
        q[k] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact division");
    q
}

#[derive(Clone)]
pub struct CycloNum<T> {
    conductor: u64,
    coeffs: Vec<T>,
}

impl<T: ExactField> CycloNum<T> {
    /// Wraps coordinates that are already reduced; `coeffs.len()` must be
    /// `phi(conductor)`.
    pub fn from_coeffs(conductor: u64, coeffs: Vec<T>) -> Self {
        assert_eq!(coeffs.len() as u64, totient(conductor));
        CycloNum { conductor, coeffs }
    }

    /// Reduces an arbitrary polynomial in `zeta_n`.
    pub fn from_poly(conductor: u64, poly: Vec<T>) -> Self {
        CycloNum {
            conductor,
            coeffs: reduce(poly, conductor),
        }
    }

    pub fn from_rational(q: T) -> Self {
        CycloNum {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(T::from_int(n))
    }

    pub fn zero() -> Self {
        Self::from_rational(T::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(T::one())
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u64, k: u64) -> Self {
        let mut poly = vec![T::zero(); (k % n) as usize + 1];
        poly[(k % n) as usize] = T::one();
        Self::from_poly(n, poly)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<T> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Rewrites the number with conductor `target`, a multiple of the
    /// current one.
    pub fn promote(&self, target: u64) -> Self {
        assert!(
            target.is_multiple_of(self.conductor),
            "conductor {} does not divide {}",
            self.conductor,
            target
        );
        if target == self.conductor {
            return self.clone();
        }
        let step = (target / self.conductor) as usize;
        let mut poly = vec![T::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::from_poly(target, poly)
    }

    fn unify(&self, other: &Self) -> (Self, Self) {
        let n = self.conductor.lcm(&other.conductor);
        (self.promote(n), other.promote(n))
    }

    pub fn scale(&self, k: &T) -> Self {
        CycloNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
        }
    }

    /// Complex conjugation, `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let n = self.conductor as usize;
        let mut poly = vec![T::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = (n - i) % n;
            poly[j] = poly[j].clone() + c.clone();
        }
        Self::from_poly(self.conductor, poly)
    }

    /// Galois action `zeta_n -> zeta_n^k` for `k` prime to the conductor.
    pub fn galois(&self, k: u64) -> Self {
        let n = self.conductor as usize;
        let mut poly = vec![T::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = (i * k as usize) % n;
            poly[j] = poly[j].clone() + c.clone();
        }
        Self::from_poly(self.conductor, poly)
    }

    /// Lexicographic comparison of coordinates after promotion to a common
    /// conductor. Only meant for canonical ordering.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.unify(other);
        a.coeffs.cmp(&b.coeffs)
    }
}

/// `poly mod Phi_n`.
fn reduce<T: ExactField>(mut poly: Vec<T>, n: u64) -> Vec<T> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    // first fold exponents modulo n, since zeta^n = 1
    if poly.len() > n as usize {
        let n = n as usize;
        for i in n..poly.len() {
            let c = std::mem::replace(&mut poly[i], T::zero());
            poly[i % n] = poly[i % n].clone() + c;
        }
        poly.truncate(n);
    }
    for top in (deg..poly.len()).rev() {
        let c = std::mem::replace(&mut poly[top], T::zero());
        if c.is_zero() {
            continue;
        }
        for (j, &p) in phi[..deg].iter().enumerate() {
            if p != 0 {
                let k = top - deg + j;
                poly[k] = poly[k].clone() - c.clone() * T::from_int(p);
            }
        }
    }
    poly.resize(deg, T::zero());
    poly
}

impl<T: ExactField> PartialEq for CycloNum<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.unify(other);
        a.coeffs == b.coeffs
    }
}

impl<T: ExactField> Eq for CycloNum<T> {}

impl<T: ExactField> Add for &CycloNum<T> {
    type Output = CycloNum<T>;

    fn add(self, rhs: Self) -> CycloNum<T> {
        let (a, b) = self.unify(rhs);
        CycloNum {
            conductor: a.conductor,
            coeffs: a
                .coeffs
                .into_iter()
                .zip(b.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl<T: ExactField> Sub for &CycloNum<T> {
    type Output = CycloNum<T>;

    fn sub(self, rhs: Self) -> CycloNum<T> {
        self + &(-rhs)
    }
}

impl<T: ExactField> Neg for &CycloNum<T> {
    type Output = CycloNum<T>;

    fn neg(self) -> CycloNum<T> {
        CycloNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: ExactField> Mul for &CycloNum<T> {
    type Output = CycloNum<T>;

    fn mul(self, rhs: Self) -> CycloNum<T> {
        if let Some(q) = rhs.as_rational() {
            return self.scale(&q);
        }
        if let Some(q) = self.as_rational() {
            return rhs.scale(&q);
        }
        let (a, b) = self.unify(rhs);
        let mut poly = vec![T::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] = poly[i + j].clone() + x.clone() * y.clone();
                }
            }
        }
        CycloNum::from_poly(a.conductor, poly)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: ExactField> $tr for CycloNum<T> {
            type Output = CycloNum<T>;

            fn $m(self, rhs: Self) -> CycloNum<T> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: ExactField> Neg for CycloNum<T> {
    type Output = CycloNum<T>;

    fn neg(self) -> CycloNum<T> {
        -&self
    }
}

impl<T: ExactField> std::iter::Sum for CycloNum<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(CycloNum::zero(), |acc, x| &acc + &x)
    }
}

impl<T: ExactField> fmt::Display for CycloNum<T> {
    /// Rationals print plainly; other values as sums of `c*E(n)^i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let root = match i {
                0 => String::new(),
                1 => format!("E({})", self.conductor),
                _ => format!("E({})^{}", self.conductor, i),
            };
            let term = if i == 0 {
                c.to_string()
            } else if c.is_one() {
                root
            } else if (-c.clone()).is_one() {
                format!("-{root}")
            } else {
                format!("{c}*{root}")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            match t.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(t);
                }
            }
        }
        write!(f, "{out}")
    }
}

impl<T: ExactField> fmt::Debug for CycloNum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::Ratio;

    type C = CycloNum<Ratio<BigInt>>;

    #[test]
    fn known_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // first polynomial with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn totients() {
        let brute = |n: u64| (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64;
        for n in 1..60 {
            assert_eq!(totient(n), brute(n), "n = {n}");
            assert_eq!(cyclotomic_polynomial(n).len() as u64 - 1, totient(n));
        }
    }

    #[test]
    fn sum_of_primitive_cube_roots() {
        let z = C::root_of_unity(3, 1);
        let z2 = C::root_of_unity(3, 2);
        assert_eq!(&z + &z2, C::from_i64(-1));
    }

    #[test]
    fn i_squared() {
        let i = C::root_of_unity(4, 1);
        assert_eq!(&i * &i, C::from_i64(-1));
    }

    #[test]
    fn conj_of_rational_is_itself() {
        let q = C::from_rational(Ratio::new(BigInt::from(3), BigInt::from(7)));
        assert_eq!(q.conj(), q);
    }

    #[test]
    fn promotion_is_lossless() {
        let z3 = C::root_of_unity(3, 1);
        let z6 = C::root_of_unity(6, 2);
        assert_eq!(z3, z6);
        assert_eq!(z3.promote(12), C::root_of_unity(12, 4));
        assert_eq!(
            (&C::root_of_unity(4, 1) * &C::root_of_unity(3, 1)),
            C::root_of_unity(12, 7)
        );
    }

    #[test]
    fn display() {
        assert_eq!(C::root_of_unity(3, 2).to_string(), "-1 - E(3)");
        assert_eq!(C::from_i64(0).to_string(), "0");
        assert_eq!(C::root_of_unity(8, 3).to_string(), "E(8)^3");
    }
}
