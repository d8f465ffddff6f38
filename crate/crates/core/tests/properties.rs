//! Property tests: algebraic laws of motives and correspondences, and the
//! invariants of quotient motives.

use proptest::prelude::*;

use stacky::cli::{CellDoc, CellsDoc, GroupDoc, HSetDoc, InputDocument, ModelDoc};
use stacky::correspondence::{graph_correspondences, FiniteMap};
use stacky::groups::{catalog, orbit_count, FiniteGroup, Perm};
use stacky::motive::{model_motive, Atom, EquivariantModel, Motive, Term};
use stacky::scalar::ExactField;
use stacky::stack::{motive_chi_quotient, motive_quotient};
use stacky::verify::check_inertia_dimension;
use stacky::{Correspondence, Rational, RationalMatrix};

fn arb_atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        Just(Atom::Unit),
        (1u32..4).prop_map(|g| Atom::h1(g).unwrap()),
        (2u32..4).prop_map(|d| Atom::cover("X", d).unwrap()),
        Just(Atom::opaque("Y").unwrap()),
    ]
}

fn arb_motive() -> impl Strategy<Value = Motive> {
    prop::collection::vec((arb_atom(), -2i64..4, 0u64..4), 0..6).prop_map(|terms| {
        Motive::from_terms(terms.into_iter().map(|(atom, twist, multiplicity)| Term {
            atom,
            twist,
            multiplicity,
        }))
    })
}

fn arb_tate() -> impl Strategy<Value = Motive> {
    prop::collection::btree_map(-2i64..4, 0u64..4, 0..4).prop_map(|r| Motive::from_tate_ranks(&r))
}

fn arb_group() -> impl Strategy<Value = FiniteGroup> {
    prop::sample::select(vec!["C1", "C2", "C3", "C4", "C6", "D3", "D4", "Q8", "A4"])
        .prop_map(|n| catalog::by_name(n).unwrap())
}

/// A catalog group acting on one or two copies of its cosets of a random
/// cyclic subgroup.
fn arb_hset() -> impl Strategy<Value = EquivariantModel> {
    (arb_group(), any::<prop::sample::Index>(), 1usize..3).prop_map(|(g, idx, copies)| {
        let h = g.elements()[idx.index(g.order())].clone();
        let k = g.subgroup_generated(&[h]).unwrap();
        let mut reps: Vec<Perm> = Vec::new();
        for x in g.elements() {
            let coset: Vec<Perm> = k.elements().iter().map(|y| x * y).collect();
            if !reps.iter().any(|r| coset.contains(r)) {
                reps.push(x.clone());
            }
        }
        let label = |x: &Perm| {
            reps.iter()
                .position(|r| k.contains(&(&x.inverse() * r)))
                .unwrap()
        };
        let n = reps.len();
        let imgs = g
            .generators()
            .iter()
            .map(|s| {
                Perm::new(
                    (0..copies * n)
                        .map(|pt| (pt / n) * n + label(&(s * &reps[pt % n])))
                        .collect(),
                )
                .unwrap()
            })
            .collect();
        EquivariantModel::hset(g, copies * n, imgs).unwrap()
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..5, 1i64..4).prop_map(|(a, b)| Rational::from_ratio(a, b))
}

fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(small_rational(), rows * cols)
        .prop_map(move |v| RationalMatrix::from_fn(rows, cols, |i, j| v[i * cols + j].clone()))
}

/// Three composable correspondences at twist zero, sizes `a -> b -> c -> d`.
fn arb_chain() -> impl Strategy<Value = (Correspondence, Correspondence, Correspondence)> {
    (1usize..4, 1usize..4, 1usize..4, 1usize..4).prop_flat_map(|(a, b, c, d)| {
        (arb_matrix(b, a), arb_matrix(c, b), arb_matrix(d, c)).prop_map(|(x, y, z)| {
            (
                Correspondence::at_twist_zero(x),
                Correspondence::at_twist_zero(y),
                Correspondence::at_twist_zero(z),
            )
        })
    })
}

fn arb_map(source: usize, target: usize) -> impl Strategy<Value = FiniteMap> {
    prop::collection::vec(0..target, source).prop_map(move |v| FiniteMap::new(v, target).unwrap())
}

/// `S D S^-1` for a diagonal 0/1 matrix `D` and a unipotent `S`.
fn arb_idempotent() -> impl Strategy<Value = RationalMatrix> {
    (1usize..6).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec((0..n, 0..n, small_rational()), 0..10),
        )
            .prop_map(move |(diag, ops)| {
                let mut s = RationalMatrix::identity(n);
                let mut s_inv = RationalMatrix::identity(n);
                for (i, j, a) in ops.into_iter().filter(|(i, j, _)| i != j) {
                    let mut e = RationalMatrix::identity(n);
                    e[(i, j)] = a.clone();
                    let mut e_inv = RationalMatrix::identity(n);
                    e_inv[(i, j)] = -a;
                    s = s.checked_mul(&e).unwrap();
                    s_inv = e_inv.checked_mul(&s_inv).unwrap();
                }
                let d = RationalMatrix::diagonal(
                    &diag
                        .iter()
                        .map(|&b| Rational::from_int(b as i64))
                        .collect::<Vec<_>>(),
                );
                s.checked_mul(&d).unwrap().checked_mul(&s_inv).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn direct_sum_is_a_commutative_monoid(a in arb_motive(), b in arb_motive(), c in arb_motive()) {
        prop_assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
        prop_assert_eq!(a.direct_sum(&b).direct_sum(&c), a.direct_sum(&b.direct_sum(&c)));
        prop_assert_eq!(a.direct_sum(&Motive::zero()), a.clone());
    }

    #[test]
    fn terms_are_canonical(a in arb_motive()) {
        let terms = a.terms();
        prop_assert!(terms.iter().all(|t| t.multiplicity > 0));
        prop_assert!(terms.windows(2).all(|w| (w[0].twist, &w[0].atom) < (w[1].twist, &w[1].atom)));
        prop_assert_eq!(Motive::from_terms(terms.iter().cloned()), a.clone());
    }

    #[test]
    fn tensor_is_a_commutative_semiring_on_tate_motives(a in arb_tate(), b in arb_tate(), c in arb_tate()) {
        let ab = a.tensor(&b).unwrap();
        prop_assert_eq!(&ab, &b.tensor(&a).unwrap());
        prop_assert_eq!(ab.tensor(&c).unwrap(), a.tensor(&b.tensor(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.tensor(&b.direct_sum(&c)).unwrap(),
            ab.direct_sum(&a.tensor(&c).unwrap())
        );
        prop_assert_eq!(a.tensor(&Motive::unit()).unwrap(), a.clone());
        prop_assert!(a.tensor(&Motive::zero()).unwrap().is_zero());
    }

    #[test]
    fn tensor_with_tate_twists_and_scales(a in arb_motive(), t in -2i64..3, n in 0u64..4) {
        prop_assert_eq!(a.tensor(&Motive::lefschetz(t)).unwrap(), a.twist(t));
        prop_assert_eq!(a.tensor(&Motive::tate(0, n)).unwrap(), a.times(n));
        prop_assert_eq!(a.twist(t).twist(-t), a.clone());
    }

    #[test]
    fn chow_dims_sum_to_the_tate_rank(a in arb_motive()) {
        let total: u64 = a.twists().into_iter().map(|t| a.chow_dim(t).tate_dim).sum();
        prop_assert_eq!(total, a.tate_rank());
        for t in a.twists() {
            let opaque = a.chow_dim(t).opaque;
            prop_assert!(opaque.iter().all(|o| !o.atom.is_unit() && o.twist <= t));
        }
    }

    #[test]
    fn invariants_count_orbits(x in arb_hset()) {
        let action = model_motive(&x);
        let expected = orbit_count(x.group().elements(), x.len(), |g, pt| x.action_of(g).unwrap().apply(pt)).unwrap();
        prop_assert_eq!(action.invariants(), Motive::tate(0, expected as u64));
        prop_assert_eq!(motive_quotient(&x), Motive::tate(0, expected as u64));
    }

    #[test]
    fn quotient_is_a_direct_factor(x in arb_hset(), p in prop::sample::select(vec![0u64, 2, 3])) {
        let chi = motive_chi_quotient(&x, p).unwrap();
        prop_assert_eq!(chi.trivial_component(), &motive_quotient(&x));
        prop_assert!(check_inertia_dimension(&x, p).unwrap().pass);
    }

    #[test]
    fn composition_is_associative((x, y, z) in arb_chain()) {
        let left = z.compose(&y).unwrap().compose(&x).unwrap();
        let right = z.compose(&y.compose(&x).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn transpose_reverses_composition((x, y, _) in arb_chain()) {
        prop_assert_eq!(y.compose(&x).unwrap().transpose(), x.transpose().compose(&y.transpose()).unwrap());
        prop_assert_eq!(x.transpose().transpose(), x.clone());
    }

    #[test]
    fn identity_is_neutral((x, _, _) in arb_chain()) {
        let id_s = Correspondence::identity(x.source()).unwrap();
        let id_t = Correspondence::identity(x.target()).unwrap();
        prop_assert_eq!(x.compose(&id_s).unwrap(), x.clone());
        prop_assert_eq!(id_t.compose(&x).unwrap(), x.clone());
    }

    #[test]
    fn pullback_and_pushforward_are_functorial(
        (f, g) in (1usize..6, 1usize..6, 1usize..6)
            .prop_flat_map(|(a, b, c)| (arb_map(a, b), arb_map(b, c)))
    ) {
        let gf = g.after(&f).unwrap();
        let (pull_f, push_f) = graph_correspondences::<Rational>(&f);
        let (pull_g, push_g) = graph_correspondences::<Rational>(&g);
        let (pull_gf, push_gf) = graph_correspondences::<Rational>(&gf);
        prop_assert_eq!(pull_gf, pull_f.compose(&pull_g).unwrap());
        prop_assert_eq!(push_gf, push_g.compose(&push_f).unwrap());
    }

    #[test]
    fn idempotents_split(p in arb_idempotent()) {
        let n = p.rows() as u64;
        let p = Correspondence::at_twist_zero(p);
        prop_assert!(p.is_idempotent());
        let split = p.split_idempotent().unwrap();
        prop_assert_eq!(split.image.tate_rank(), p.rank() as u64);
        prop_assert_eq!(split.inclusion.compose(&split.retraction).unwrap(), p.clone());
        prop_assert_eq!(
            split.retraction.compose(&split.inclusion).unwrap(),
            Correspondence::identity(&split.image).unwrap()
        );
        prop_assert!(split.verify(&p).is_ok());
        prop_assert!(split.image.tate_rank() <= n);
    }

    #[test]
    fn documents_round_trip(
        degree in 1usize..5,
        gens in prop::collection::vec(Just(()), 0..3),
        cells in prop::collection::vec(0u32..3, 0..4),
        characteristic in prop::sample::select(vec![0u64, 2, 3, 5]),
        use_cells in any::<bool>(),
    ) {
        let id: Vec<usize> = (0..degree).collect();
        let generators = gens.iter().map(|_| id.clone()).collect::<Vec<_>>();
        let images: Vec<Vec<usize>> = gens.iter().map(|_| (0..cells.len()).collect()).collect();
        let model = if use_cells {
            ModelDoc::Cells(CellsDoc {
                cells: cells.iter().map(|&dim| CellDoc { dim }).collect(),
                generator_images: images,
                fixed_locus: None,
            })
        } else {
            ModelDoc::Hset(HSetDoc { size: cells.len(), generator_images: images })
        };
        let doc = InputDocument {
            characteristic,
            group: Some(GroupDoc { degree, generators }),
            model: Some(model),
            ..Default::default()
        };
        let once = InputDocument::parse(&doc.render()).unwrap();
        prop_assert_eq!(&once, &doc);
        prop_assert_eq!(InputDocument::parse(&once.render()).unwrap(), once);
    }
}
