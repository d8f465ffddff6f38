use std::collections::HashMap;

use super::{GroupError, Perm};

/// Number of orbits of a group acting on `points` points.
///
/// `action(g, x)` is the image of point `x` under `g`. The tabulated action
/// is checked against the composition law, then counted twice: once by
/// flood fill and once as the Burnside average of fixed-point counts.
/// Disagreement is reported as an internal error.
pub fn orbit_count<F>(elements: &[Perm], points: usize, action: F) -> Result<usize, GroupError>
where
    F: Fn(&Perm, usize) -> usize,
{
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|g| (0..points).map(|x| action(g, x)).collect())
        .collect();
    for (g, row) in elements.iter().zip(&table) {
        let mut seen = vec![false; points];
        for &y in row {
            if y >= points || seen[y] {
                return Err(GroupError::NotAnAction(format!(
                    "{g} does not act as a bijection"
                )));
            }
            seen[y] = true;
        }
        if g.is_identity() && row.iter().enumerate().any(|(i, &y)| i != y) {
            return Err(GroupError::NotAnAction(
                "identity moves a point".to_string(),
            ));
        }
    }
    spot_check_composition(elements, &table)?;
    count_orbits(&table, points)
}

/// Checks `act(xy) = act(x) . act(y)` on a deterministic sample of pairs.
fn spot_check_composition(elements: &[Perm], table: &[Vec<usize>]) -> Result<(), GroupError> {
    const PAIRS: usize = 4096;
    let n = elements.len();
    if n == 0 {
        return Ok(());
    }
    let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let stride = ((n * n) / PAIRS).max(1);
    let mut k = 0;
    while k < n * n {
        let (a, b) = (k / n, k % n);
        let prod = &elements[a] * &elements[b];
        let Some(&ab) = index.get(&prod) else {
            return Err(GroupError::NotAnAction(
                "element list is not closed under products".to_string(),
            ));
        };
        let points = table[a].len();
        for x in 0..points {
            if table[ab][x] != table[a][table[b][x]] {
                return Err(GroupError::NotAnAction(format!(
                    "composition law fails for {} * {} at point {x}",
                    elements[a], elements[b]
                )));
            }
        }
        k += stride;
    }
    Ok(())
}

/// Orbit count of a tabulated action (one image row per group element),
/// confirmed against the Burnside average.
pub fn count_orbits(table: &[Vec<usize>], points: usize) -> Result<usize, GroupError> {
    if table.is_empty() {
        return Err(GroupError::NotAnAction("empty group".to_string()));
    }
    let mut parent: Vec<usize> = (0..points).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for row in table {
        for (x, &y) in row.iter().enumerate() {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
    }
    let orbits = (0..points).filter(|&x| find(&mut parent, x) == x).count();
    let fixed: usize = table
        .iter()
        .map(|row| row.iter().enumerate().filter(|(i, &y)| *i == y).count())
        .sum();
    if !fixed.is_multiple_of(table.len()) || fixed / table.len() != orbits {
        return Err(GroupError::Internal(format!(
            "flood fill found {orbits} orbits, Burnside average is {fixed}/{}",
            table.len()
        )));
    }
    Ok(orbits)
}
