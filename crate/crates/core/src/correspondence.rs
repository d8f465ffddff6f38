//! Correspondences between Tate motives.
//!
//! `Hom(L^a, L^b)` vanishes for `a != b` and is one-dimensional for
//! `a = b`, so a correspondence between Unit-only motives is a family of
//! matrices, one per twist, of shape (target multiplicity) x (source
//! multiplicity). Composition is blockwise matrix product.
//!
//! `x.compose(y)` applies `y` first: it maps `y.source` to `x.target`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::motive::{Atom, Motive};
use crate::scalar::ExactField;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorrError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("map is not total: point {point} has image {image}, target has {target} points")]
    NotTotal {
        point: usize,
        image: usize,
        target: usize,
    },
    #[error("correspondence is not idempotent")]
    NotIdempotent,
    #[error("fiber over {point} has {found} points, expected {expected}")]
    NotEquidegree {
        point: usize,
        found: usize,
        expected: usize,
    },
    #[error("correspondences are only modeled between Unit-only motives")]
    NonUnitMotive,
}

#[derive(Clone, PartialEq, Eq)]
pub struct TateCorrespondence<T> {
    source: Motive,
    target: Motive,
    blocks: BTreeMap<i64, Matrix<T>>,
}

impl<T: fmt::Display> fmt::Debug for TateCorrespondence<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TateCorrespondence")
            .field("source", &self.source.to_string())
            .field("target", &self.target.to_string())
            .field("blocks", &self.blocks)
            .finish()
    }
}

/// An idempotent written as `inclusion o retraction` through its image.
#[derive(Clone, PartialEq, Eq)]
pub struct SplitFactor<T> {
    pub image: Motive,
    pub inclusion: TateCorrespondence<T>,
    pub retraction: TateCorrespondence<T>,
}

impl<T: fmt::Display> fmt::Debug for SplitFactor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SplitFactor")
            .field("image", &self.image.to_string())
            .field("inclusion", &self.inclusion)
            .field("retraction", &self.retraction)
            .finish()
    }
}

fn twists(a: &Motive, b: &Motive) -> Vec<i64> {
    let mut t: Vec<i64> = a
        .tate_ranks()
        .keys()
        .chain(b.tate_ranks().keys())
        .copied()
        .collect();
    t.sort_unstable();
    t.dedup();
    t
}

impl<T: ExactField> TateCorrespondence<T> {
    /// Builds a correspondence from its blocks; missing twists are zero.
    pub fn new(
        source: Motive,
        target: Motive,
        mut blocks: BTreeMap<i64, Matrix<T>>,
    ) -> Result<Self, CorrError> {
        if !source.is_unit_only() || !target.is_unit_only() {
            return Err(CorrError::NonUnitMotive);
        }
        let (src, tgt) = (source.tate_ranks(), target.tate_ranks());
        if let Some(t) = blocks
            .keys()
            .find(|t| !src.contains_key(t) && !tgt.contains_key(t))
        {
            return Err(CorrError::ShapeMismatch(format!(
                "block at twist {t} where both motives vanish"
            )));
        }
        for t in twists(&source, &target) {
            let shape = (
                tgt.get(&t).copied().unwrap_or(0) as usize,
                src.get(&t).copied().unwrap_or(0) as usize,
            );
            let block = blocks
                .entry(t)
                .or_insert_with(|| Matrix::zeros(shape.0, shape.1));
            if block.shape() != shape {
                return Err(CorrError::ShapeMismatch(format!(
                    "block at twist {t} is {:?}, expected {shape:?}",
                    block.shape()
                )));
            }
        }
        Ok(TateCorrespondence {
            source,
            target,
            blocks,
        })
    }

    /// A correspondence between `Unit^{+cols}` and `Unit^{+rows}` at twist 0.
    pub fn at_twist_zero(matrix: Matrix<T>) -> Self {
        let source = Motive::tate(0, matrix.cols() as u64);
        let target = Motive::tate(0, matrix.rows() as u64);
        TateCorrespondence::new(source, target, BTreeMap::from([(0, matrix)]))
            .expect("shapes match")
    }

    pub fn identity(m: &Motive) -> Result<Self, CorrError> {
        let blocks = m
            .tate_ranks()
            .into_iter()
            .map(|(t, n)| (t, Matrix::identity(n as usize)))
            .collect();
        TateCorrespondence::new(m.clone(), m.clone(), blocks)
    }

    pub fn zero(source: &Motive, target: &Motive) -> Result<Self, CorrError> {
        TateCorrespondence::new(source.clone(), target.clone(), BTreeMap::new())
    }

    pub fn source(&self) -> &Motive {
        &self.source
    }

    pub fn target(&self) -> &Motive {
        &self.target
    }

    pub fn blocks(&self) -> &BTreeMap<i64, Matrix<T>> {
        &self.blocks
    }

    pub fn block(&self, twist: i64) -> Option<&Matrix<T>> {
        self.blocks.get(&twist)
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    /// `self o other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self, CorrError> {
        if self.source != other.target {
            return Err(CorrError::ShapeMismatch(format!(
                "cannot compose: source {} differs from target {}",
                self.source, other.target
            )));
        }
        let blocks = twists(&other.source, &self.target)
            .into_iter()
            .map(|t| {
                let shape = (
                    self.target.multiplicity(&Atom::Unit, t) as usize,
                    other.source.multiplicity(&Atom::Unit, t) as usize,
                );
                let m = match (self.blocks.get(&t), other.blocks.get(&t)) {
                    (Some(a), Some(b)) => a.checked_mul(b).expect("middle shapes agree"),
                    _ => Matrix::zeros(shape.0, shape.1),
                };
                (t, m)
            })
            .collect();
        TateCorrespondence::new(other.source.clone(), self.target.clone(), blocks)
    }

    pub fn transpose(&self) -> Self {
        TateCorrespondence {
            source: self.target.clone(),
            target: self.source.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|(&t, m)| (t, m.transpose()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        TateCorrespondence {
            blocks: self.blocks.iter().map(|(&t, m)| (t, m.scale(k))).collect(),
            ..self.clone()
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_endomorphism() && self.compose(self).is_ok_and(|sq| sq == *self)
    }

    /// Total rank over all twists.
    pub fn rank(&self) -> usize {
        self.blocks.values().map(Matrix::rank).sum()
    }

    /// Splits an idempotent through its image, verifying `i o r = p` and
    /// `r o i = id` before returning.
    pub fn split_idempotent(&self) -> Result<SplitFactor<T>, CorrError> {
        if !self.is_idempotent() {
            return Err(CorrError::NotIdempotent);
        }
        let mut inc = BTreeMap::new();
        let mut ret = BTreeMap::new();
        let mut ranks = BTreeMap::new();
        for (&t, block) in &self.blocks {
            let (i, r) = block.rank_factorization();
            ranks.insert(t, i.cols() as u64);
            inc.insert(t, i);
            ret.insert(t, r);
        }
        let image = Motive::from_tate_ranks(&ranks);
        let inclusion = TateCorrespondence::new(image.clone(), self.target.clone(), inc)?;
        let retraction = TateCorrespondence::new(self.source.clone(), image.clone(), ret)?;
        let split = SplitFactor {
            image,
            inclusion,
            retraction,
        };
        split.verify(self)?;
        Ok(split)
    }
}

impl<T: ExactField> SplitFactor<T> {
    /// Checks `i o r = p` and `r o i = id` exactly.
    pub fn verify(&self, p: &TateCorrespondence<T>) -> Result<(), CorrError> {
        let ir = self.inclusion.compose(&self.retraction)?;
        let ri = self.retraction.compose(&self.inclusion)?;
        if ir != *p || ri != TateCorrespondence::identity(&self.image)? {
            return Err(CorrError::NotIdempotent);
        }
        Ok(())
    }
}

/// A map between finite sets, `source_size` points to `target_size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMap {
    images: Vec<usize>,
    target_size: usize,
}

impl FiniteMap {
    pub fn new(images: Vec<usize>, target_size: usize) -> Result<Self, CorrError> {
        if let Some((point, &image)) = images.iter().enumerate().find(|(_, &y)| y >= target_size) {
            return Err(CorrError::NotTotal {
                point,
                image,
                target: target_size,
            });
        }
        Ok(FiniteMap {
            images,
            target_size,
        })
    }

    pub fn identity(n: usize) -> Self {
        FiniteMap {
            images: (0..n).collect(),
            target_size: n,
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn source_size(&self) -> usize {
        self.images.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    /// `self o other`.
    pub fn after(&self, other: &FiniteMap) -> Result<FiniteMap, CorrError> {
        if other.target_size != self.source_size() {
            return Err(CorrError::ShapeMismatch("maps do not compose".into()));
        }
        FiniteMap::new(
            other.images.iter().map(|&x| self.images[x]).collect(),
            self.target_size,
        )
    }

    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.target_size];
        for &y in &self.images {
            sizes[y] += 1;
        }
        sizes
    }

    /// Fails unless every fiber has exactly `m` points.
    pub fn check_equidegree(&self, m: usize) -> Result<(), CorrError> {
        match self
            .fiber_sizes()
            .into_iter()
            .enumerate()
            .find(|&(_, s)| s != m)
        {
            Some((point, found)) => Err(CorrError::NotEquidegree {
                point,
                found,
                expected: m,
            }),
            None => Ok(()),
        }
    }
}

/// `([f^*], [f_*])`. The pullback maps `Unit^{+k}` to `Unit^{+n}` by
/// copying each target point to its fiber; the pushforward is its transpose.
pub fn graph_correspondences<T: ExactField>(
    f: &FiniteMap,
) -> (TateCorrespondence<T>, TateCorrespondence<T>) {
    let pull = Matrix::from_fn(f.source_size(), f.target_size(), |i, j| {
        if f.images[i] == j {
            T::one()
        } else {
            T::zero()
        }
    });
    let pull = TateCorrespondence::at_twist_zero(pull);
    let push = pull.transpose();
    (pull, push)
}

/// For a cover whose fibers all have `m` points, `(1/m)[f_*]` is a left
/// inverse of `[f^*]`, so `(1/m)[f^*][f_*]` is an idempotent on the source
/// whose image is the target. Returns its splitting.
pub fn splitting_certificate<T: ExactField>(
    f: &FiniteMap,
    m: usize,
) -> Result<SplitFactor<T>, CorrError> {
    if m == 0 {
        return Err(CorrError::NotEquidegree {
            point: 0,
            found: 0,
            expected: 0,
        });
    }
    f.check_equidegree(m)?;
    let (pull, push) = graph_correspondences::<T>(f);
    let retraction = push.scale(&T::from_ratio(1, m as i64));
    let split = SplitFactor {
        image: pull.source().clone(),
        inclusion: pull.clone(),
        retraction: retraction.clone(),
    };
    let p = pull.compose(&retraction)?;
    split.verify(&p)?;
    Ok(split)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type C = TateCorrespondence<Rational>;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn swap_is_an_involution() {
        let s = C::at_twist_zero(m(&[&[0, 1], &[1, 0]]));
        assert_eq!(
            s.compose(&s).unwrap(),
            C::identity(&Motive::tate(0, 2)).unwrap()
        );
    }

    #[test]
    fn push_pull_through_two_points() {
        let f = FiniteMap::new(vec![0, 0], 1).unwrap();
        let (pull, push) = graph_correspondences::<Rational>(&f);
        assert_eq!(pull.block(0).unwrap(), &m(&[&[1], &[1]]));
        assert_eq!(push.compose(&pull).unwrap().block(0).unwrap(), &m(&[&[2]]));
    }

    #[test]
    fn averaging_projector_splits() {
        let half = Rational::from_ratio(1, 2);
        let p = C::at_twist_zero(m(&[&[1, 1], &[1, 1]]).scale(&half));
        let s = p.split_idempotent().unwrap();
        assert_eq!(s.image, Motive::unit());
        assert_eq!(s.inclusion.block(0).unwrap(), &m(&[&[1], &[1]]));
        assert_eq!(s.retraction.block(0).unwrap(), &m(&[&[1, 1]]).scale(&half));
    }

    #[test]
    fn zero_idempotent_has_empty_image() {
        let z = C::zero(&Motive::tate(0, 2), &Motive::tate(0, 2)).unwrap();
        let s = z.split_idempotent().unwrap();
        assert!(s.image.is_zero());
    }

    #[test]
    fn not_idempotent_and_not_total() {
        let p = C::at_twist_zero(m(&[&[2]]));
        assert_eq!(p.split_idempotent(), Err(CorrError::NotIdempotent));
        assert!(matches!(
            FiniteMap::new(vec![0, 3], 2),
            Err(CorrError::NotTotal { .. })
        ));
    }

    #[test]
    fn non_unit_motives_are_rejected() {
        let c = Motive::curve(1);
        assert_eq!(C::identity(&c), Err(CorrError::NonUnitMotive));
    }
}
