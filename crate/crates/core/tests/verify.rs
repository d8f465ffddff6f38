//! Verification reports and the randomized suite.

use stacky::correspondence::FiniteMap;
use stacky::groups::{catalog, FiniteGroup};
use stacky::motive::EquivariantModel;
use stacky::verify::{
    check_degree_splitting, check_inertia_dimension, check_kunneth, check_rep_ring_vs_classes,
    random_suite,
};

fn natural(g: &FiniteGroup) -> EquivariantModel {
    EquivariantModel::hset(g.clone(), g.degree(), g.generators().to_vec()).unwrap()
}

#[test]
fn inertia_dimension_examples() {
    let r = check_inertia_dimension(&natural(&catalog::symmetric(3).unwrap()), 0).unwrap();
    assert!(r.pass);
    assert_eq!((r.lhs.as_str(), r.rhs.as_str()), ("2", "2"));
    let free = check_inertia_dimension(&natural(&catalog::cyclic(5).unwrap()), 0).unwrap();
    assert_eq!((free.lhs.as_str(), free.pass), ("1", true));
    let e = EquivariantModel::trivial_hset(FiniteGroup::trivial(1), 4);
    assert_eq!(check_inertia_dimension(&e, 0).unwrap().lhs, "4");
}

#[test]
fn kunneth_examples() {
    let c2 = catalog::cyclic(2).unwrap();
    let r = check_kunneth(&EquivariantModel::point(c2.clone()), &c2, 0).unwrap();
    assert!(r.pass);
    assert_eq!(r.lhs, "4");
    let r = check_kunneth(&natural(&catalog::symmetric(3).unwrap()), &c2, 0).unwrap();
    assert_eq!((r.lhs.as_str(), r.pass), ("4", true));
    let r = check_kunneth(
        &natural(&catalog::symmetric(3).unwrap()),
        &FiniteGroup::trivial(1),
        0,
    )
    .unwrap();
    assert!(r.pass);
}

#[test]
fn rep_ring_examples() {
    for (name, rank) in [("S3", 3), ("C2", 2), ("1", 1)] {
        let r = check_rep_ring_vs_classes(&catalog::by_name(name).unwrap()).unwrap();
        assert!(r.pass, "{name}");
        assert_eq!(r.lhs, format!("rank {rank}; pointwise true"));
    }
}

#[test]
fn splitting_examples() {
    assert!(check_degree_splitting(&FiniteMap::new(vec![0, 0], 1).unwrap(), 2).pass);
    assert!(check_degree_splitting(&FiniteMap::new(vec![0, 1, 2, 0, 1, 2], 3).unwrap(), 2).pass);
    assert!(check_degree_splitting(&FiniteMap::identity(4), 1).pass);
    assert!(!check_degree_splitting(&FiniteMap::new(vec![0, 0, 1], 2).unwrap(), 2).pass);
}

#[test]
fn suite_is_reproducible_and_passes() {
    let a = random_suite(7, 30).unwrap();
    let b = random_suite(7, 30).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 90);
    let failing: Vec<_> = a.iter().filter(|r| !r.pass).collect();
    assert!(failing.is_empty(), "{failing:#?}");
    assert_ne!(random_suite(8, 30).unwrap(), a);
}
