use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use super::GroupError;

/// A permutation of `{0, .., degree - 1}`, stored as its image array.
///
/// Products read right to left: `(a * b).apply(i) == a.apply(b.apply(i))`.
/// Ordering is lexicographic on the image arrays, so the identity is the
/// minimum among permutations of a given degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(GroupError::NonBijection { images });
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).collect())
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a >= degree || b >= degree || touched[a] {
                    return Err(GroupError::NonBijection {
                        images: cycle.to_vec(),
                    });
                }
                touched[a] = true;
                images[a] = b;
            }
        }
        Perm::new(images)
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.0[point]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn pow(&self, k: u64) -> Perm {
        let n = self.degree();
        let mut images = vec![0; n];
        let mut done = vec![false; n];
        for start in 0..n {
            if done[start] {
                continue;
            }
            let mut cycle = vec![start];
            let mut x = self.0[start];
            while x != start {
                cycle.push(x);
                x = self.0[x];
            }
            let len = cycle.len() as u64;
            let shift = (k % len) as usize;
            for (pos, &pt) in cycle.iter().enumerate() {
                images[pt] = cycle[(pos + shift) % cycle.len()];
                done[pt] = true;
            }
        }
        Perm(images)
    }

    /// `g * self * g^-1`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut done = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if done[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !done[x] {
                done[x] = true;
                x = self.0[x];
                len += 1;
            }
            lens.push(len);
        }
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.0[i] == i).collect()
    }

    /// Places `self` on points `offset..offset + degree` of a larger set,
    /// fixing everything else.
    pub fn embed(&self, offset: usize, total_degree: usize) -> Perm {
        let mut images: Vec<usize> = (0..total_degree).collect();
        for (i, &x) in self.0.iter().enumerate() {
            images[offset + i] = offset + x;
        }
        Perm(images)
    }
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

impl fmt::Display for Perm {
    /// Cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut done = vec![false; n];
        let mut any = false;
        for start in 0..n {
            if done[start] || self.0[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !done[x] {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                done[x] = true;
                first = false;
                x = self.0[x];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert!(Perm::new(vec![0, 3, 1]).is_err());
        assert!(Perm::new(vec![]).is_ok());
    }

    #[test]
    fn composition_reads_right_to_left() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        // b first: 0 -> 1, then a: 1 -> 0
        assert_eq!((&a * &b).apply(0), 0);
        assert_eq!((&a * &b).apply(1), 2);
    }

    #[test]
    fn conjugating_a_three_cycle_by_a_transposition_inverts_it() {
        let t = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let g = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(g.conjugate_by(&t), g.pow(2));
        assert_eq!(g.pow(2).to_string(), "(0 2 1)");
    }

    #[test]
    fn order_and_pow() {
        let g = Perm::from_cycles(5, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.pow(6).is_identity());
        assert_eq!(g.pow(7), g);
        assert_eq!(Perm::identity(4).to_string(), "()");
    }
}
