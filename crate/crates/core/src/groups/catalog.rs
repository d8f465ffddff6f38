//! Small named permutation groups.

use super::{generate_group, FiniteGroup, GroupError, Perm};

pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::Invalid("cyclic group of order 0".into()));
    }
    let images: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    generate_group(n, vec![Perm::new(images)?])
}

/// Symmetries of a regular `n`-gon, order `2n`, acting on its vertices.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n < 3 {
        return Err(GroupError::Invalid(format!("dihedral group of a {n}-gon")));
    }
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    generate_group(n, vec![Perm::new(rot)?, Perm::new(refl)?])
}

pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if n < 2 {
        return Ok(FiniteGroup::trivial(n));
    }
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let swap = Perm::from_cycles(n, &[&[0, 1]])?;
    generate_group(n, vec![swap, Perm::new(cycle)?])
}

pub fn alternating(n: usize) -> Result<FiniteGroup, GroupError> {
    if n < 3 {
        return Ok(FiniteGroup::trivial(n));
    }
    let gens = (2..n)
        .map(|k| Perm::from_cycles(n, &[&[0, 1, k]]))
        .collect::<Result<Vec<_>, _>>()?;
    generate_group(n, gens)
}

/// The quaternion group in its regular representation on
/// `1, i, j, k, -1, -i, -j, -k`.
pub fn quaternion() -> Result<FiniteGroup, GroupError> {
    let left_i = Perm::new(vec![1, 4, 3, 6, 5, 0, 7, 2])?;
    let left_j = Perm::new(vec![2, 7, 4, 1, 6, 3, 0, 5])?;
    generate_group(8, vec![left_i, left_j])
}

/// Parses names such as `C5`, `D4`, `S3`, `A4`, `Q8`, `1`.
pub fn by_name(name: &str) -> Result<FiniteGroup, GroupError> {
    let bad = || GroupError::Invalid(format!("unknown group name {name:?}"));
    if name == "1" || name == "trivial" {
        return Ok(FiniteGroup::trivial(1));
    }
    if name == "Q8" {
        return quaternion();
    }
    let (head, tail) = name.split_at(1);
    let n: usize = tail.parse().map_err(|_| bad())?;
    match head {
        "C" | "Z" => cyclic(n),
        "D" => dihedral(n),
        "S" => symmetric(n),
        "A" => alternating(n),
        _ => Err(bad()),
    }
}
