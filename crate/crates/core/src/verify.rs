//! Independent cross-checks packaged as reports.
//!
//! A failing comparison is a report with `pass == false`, never an error;
//! errors are reserved for invalid inputs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::chars::{character_table, rep_ring};
use crate::correspondence::{
    graph_correspondences, splitting_certificate, FiniteMap, TateCorrespondence,
};
use crate::groups::{catalog, FiniteGroup, Perm};
use crate::motive::{EquivariantModel, ModelKind, Motive};
use crate::stack::{inertia, motive_chi_bh, motive_chi_quotient, motive_quotient, StackError};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub check_name: String,
    pub input_digest: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl VerificationReport {
    fn new(check: &str, digest: String, lhs: String, rhs: String) -> Self {
        let pass = lhs == rhs;
        VerificationReport {
            check_name: check.into(),
            input_digest: digest,
            lhs,
            rhs,
            pass,
        }
    }
}

fn perms_json(ps: &[Perm]) -> serde_json::Value {
    json!(ps.iter().map(|p| p.images().to_vec()).collect::<Vec<_>>())
}

/// A canonical JSON description of a group.
pub fn group_fingerprint(g: &FiniteGroup) -> serde_json::Value {
    json!({ "degree": g.degree(), "generators": perms_json(g.generators()) })
}

/// A canonical JSON description of a model, used for input digests.
pub fn model_fingerprint(x: &EquivariantModel) -> serde_json::Value {
    let kind = match x.kind() {
        ModelKind::HSet { size } => json!({ "hset": size }),
        ModelKind::CellComplex { dims, fixed_locus } => json!({
            "cells": dims,
            "fixedLocus": fixed_locus.as_ref().map(|fl| json!({
                "cells": fl.dims(),
                "stabilizers": fl.stabilizers().iter().map(|s| perms_json(s.elements())).collect::<Vec<_>>(),
                "kernel": perms_json(fl.kernel().elements()),
                "generatorImages": perms_json(fl.generator_images()),
            })),
        }),
    };
    json!({
        "group": group_fingerprint(x.group()),
        "kind": kind,
        "generatorImages": perms_json(x.generator_images()),
    })
}

/// Hex SHA-256 of a canonical JSON value.
pub fn digest(value: &serde_json::Value) -> String {
    let bytes = Sha256::digest(value.to_string().as_bytes());
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Per-twist ranks of `h_chi([X/H])` against the sum over conjugacy classes
/// of elements of `h(X^h)^{Z_h}`.
pub fn check_inertia_dimension(
    x: &EquivariantModel,
    p: u64,
) -> Result<VerificationReport, StackError> {
    let lhs = motive_chi_quotient(x, p)?.motive;
    let rhs = inertia(x, p)?
        .iter()
        .fold(Motive::zero(), |acc, c| acc.direct_sum(&c.motive));
    let d = digest(&json!({ "model": model_fingerprint(x), "p": p }));
    Ok(VerificationReport::new(
        "inertia-dim",
        d,
        lhs.to_string(),
        rhs.to_string(),
    ))
}

/// The trivial-subgroup summand of `h_chi([X/H])` against `h([X/H])`; for
/// free actions the full motives are compared as well.
pub fn check_direct_factor(x: &EquivariantModel, p: u64) -> Result<VerificationReport, StackError> {
    let chi = motive_chi_quotient(x, p)?;
    let quotient = motive_quotient(x);
    let mut lhs = chi.trivial_component().to_string();
    let mut rhs = quotient.to_string();
    if chi.is_free() {
        lhs = format!("{lhs}; free: {}", chi.motive);
        rhs = format!("{rhs}; free: {quotient}");
    }
    let d = digest(&json!({ "model": model_fingerprint(x), "p": p }));
    Ok(VerificationReport::new("direct-factor", d, lhs, rhs))
}

/// `X` with `G x H` acting, `H` trivially.
pub fn product_model(
    x: &EquivariantModel,
    h: &FiniteGroup,
) -> Result<EquivariantModel, StackError> {
    let g = x.group();
    let gh = g.direct_product(h)?;
    let n = gh.degree();
    let lift_g = |p: &Perm| p.embed(0, n);
    let h_gens: Vec<Perm> = h
        .generators()
        .iter()
        .map(|p| p.embed(g.degree(), n))
        .collect();
    let extend = |images: &[Perm], points: usize| -> Vec<Perm> {
        images
            .iter()
            .cloned()
            .chain(std::iter::repeat_n(Perm::identity(points), h_gens.len()))
            .collect()
    };
    let model = match x.kind() {
        ModelKind::HSet { size } => {
            EquivariantModel::hset(gh, *size, extend(x.generator_images(), *size))?
        }
        ModelKind::CellComplex { dims, fixed_locus } => {
            let base = EquivariantModel::cells(
                gh,
                dims.clone(),
                extend(x.generator_images(), dims.len()),
            )?;
            match fixed_locus {
                None => base,
                Some(fl) => {
                    let stabs = fl
                        .stabilizers()
                        .iter()
                        .map(|s| {
                            s.elements()
                                .iter()
                                .map(lift_g)
                                .chain(h_gens.iter().cloned())
                                .collect()
                        })
                        .collect();
                    let kernel = fl
                        .kernel()
                        .elements()
                        .iter()
                        .map(lift_g)
                        .chain(h_gens.iter().cloned())
                        .collect();
                    base.with_fixed_locus(
                        fl.dims().to_vec(),
                        stabs,
                        kernel,
                        extend(fl.generator_images(), fl.dims().len()),
                    )?
                }
            }
        }
    };
    Ok(model)
}

/// Per-twist ranks of `h_chi([X/(G x H)])` against the product of
/// `h_chi([X/G])` and `h_chi(BH)`.
pub fn check_kunneth(
    x: &EquivariantModel,
    h: &FiniteGroup,
    p: u64,
) -> Result<VerificationReport, StackError> {
    let lhs = motive_chi_quotient(&product_model(x, h)?, p)?.motive;
    let left = motive_chi_quotient(x, p)?.motive;
    let right = motive_chi_bh(h, p)?.motive;
    let rhs = left.tensor(&right)?;
    let d = digest(&json!({ "model": model_fingerprint(x), "h": group_fingerprint(h), "p": p }));
    Ok(VerificationReport::new(
        "kunneth",
        d,
        lhs.to_string(),
        rhs.to_string(),
    ))
}

/// Rank of the representation ring against the rank of `h_chi(BH)`, and
/// the pointwise identity `chi_i chi_j = sum_k n^{ij}_k chi_k` on classes.
pub fn check_rep_ring_vs_classes(h: &FiniteGroup) -> Result<VerificationReport, StackError> {
    let ring = rep_ring(&character_table(h)?)?;
    let bh = motive_chi_bh(h, 0)?;
    let lhs = format!(
        "rank {}; pointwise {}",
        ring.rank(),
        ring.pointwise_identity_holds()
    );
    let rhs = format!("rank {}; pointwise true", bh.rank);
    let d = digest(&json!({ "h": group_fingerprint(h) }));
    Ok(VerificationReport::new("rep-ring", d, lhs, rhs))
}

/// `[f_*] o [f^*] = m id` and the round trip of the splitting certificate.
pub fn check_degree_splitting(f: &FiniteMap, m: usize) -> VerificationReport {
    let (pull, push) = graph_correspondences::<Rational>(f);
    let lhs = push.compose(&pull).expect("shapes agree");
    let target = Motive::tate(0, f.target_size() as u64);
    let rhs = TateCorrespondence::identity(&target)
        .expect("unit motive")
        .scale(&Rational::from_integer((m as i64).into()));
    let cert = splitting_certificate::<Rational>(f, m);
    let render = |c: &TateCorrespondence<Rational>| {
        format!(
            "{:?}",
            c.block(0)
                .cloned()
                .unwrap_or_else(|| crate::linalg::Matrix::zeros(0, 0))
        )
    };
    let lhs_s = format!(
        "{}; certificate {}",
        render(&lhs),
        cert.as_ref()
            .map_or_else(|e| e.to_string(), |_| "ok".into())
    );
    let rhs_s = format!("{}; certificate ok", render(&rhs));
    let d = digest(&json!({ "map": f.images(), "target": f.target_size(), "m": m }));
    VerificationReport::new("splitting", d, lhs_s, rhs_s)
}

/// Groups the randomized suite draws from.
pub const SUITE_GROUPS: &[&str] = &[
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "D3", "D4", "D5",
    "D6", "S3", "S4", "A4", "Q8",
];

/// Second factors used by the Kunneth checks of the suite.
pub const SUITE_SECOND_FACTORS: &[&str] = &["C1", "C2", "C3", "C4", "S3", "Q8", "D4"];

/// One generated input of the randomized suite.
#[derive(Clone, Debug)]
pub struct SuiteCase {
    pub group_name: String,
    pub model: EquivariantModel,
    pub second_factor: String,
    pub characteristic: u64,
}

type CosetUnion = (usize, Vec<Vec<usize>>, Vec<usize>, Vec<Vec<Perm>>);

/// Disjoint union of coset spaces `G/K_1 + G/K_2 + ..`, with each `K_i`
/// generated by random elements, up to `max_points` points in total.
/// Returns the point count with the generator images, plus the coset block
/// and stabilizer of every point.
fn random_coset_union(g: &FiniteGroup, rng: &mut ChaCha8Rng, max_points: usize) -> CosetUnion {
    let mut images: Vec<Vec<usize>> = vec![Vec::new(); g.generators().len()];
    let mut block_of = Vec::new();
    let mut stabs: Vec<Vec<Perm>> = Vec::new();
    let blocks = rng.gen_range(1..=3);
    for block in 0..blocks {
        let mut chosen = None;
        for _ in 0..8 {
            let k: Vec<Perm> = (0..rng.gen_range(0..=2))
                .map(|_| g.elements().choose(rng).expect("nonempty").clone())
                .collect();
            let sub = g.subgroup_generated(&k).expect("elements");
            if g.order() / sub.order() + block_of.len() <= max_points {
                chosen = Some(sub);
                break;
            }
        }
        let Some(k) = chosen else { break };
        // left cosets x K, labelled by their smallest element
        let mut reps: Vec<Perm> = Vec::new();
        let mut coset_of = std::collections::BTreeMap::new();
        for x in g.elements() {
            let coset: Vec<Perm> = k.elements().iter().map(|y| x * y).collect();
            let min = coset.iter().min().expect("nonempty").clone();
            if !coset_of.contains_key(&min) {
                coset_of.insert(min.clone(), reps.len());
                reps.push(min);
            }
        }
        let offset = block_of.len();
        let label = |x: &Perm| -> usize {
            let min = k.elements().iter().map(|y| x * y).min().expect("nonempty");
            coset_of[&min]
        };
        for (gi, s) in g.generators().iter().enumerate() {
            for r in &reps {
                images[gi].push(offset + label(&(s * r)));
            }
        }
        for r in &reps {
            block_of.push(block);
            stabs.push(k.elements().iter().map(|y| y.conjugate_by(r)).collect());
        }
    }
    (block_of.len(), images, block_of, stabs)
}

/// Builds the suite inputs for `seed`, deterministically.
pub fn suite_cases(seed: u64, count: usize) -> Vec<SuiteCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let name = *SUITE_GROUPS.choose(&mut rng).expect("nonempty");
            let g = catalog::by_name(name).expect("catalog group");
            let (n, images, blocks, stabs) = random_coset_union(&g, &mut rng, 20);
            let perms: Vec<Perm> = images
                .into_iter()
                .map(|v| Perm::new(v).expect("coset action"))
                .collect();
            let model = match rng.gen_range(0..3) {
                0 => EquivariantModel::hset(g.clone(), n, perms).expect("coset action"),
                shape => {
                    let nblocks = blocks.iter().max().map_or(0, |b| b + 1);
                    let block_dims: Vec<u32> = (0..nblocks).map(|_| rng.gen_range(0..=2)).collect();
                    let dims: Vec<u32> = blocks.iter().map(|&b| block_dims[b]).collect();
                    let cells = EquivariantModel::cells(g.clone(), dims.clone(), perms.clone())
                        .expect("dims are block-constant");
                    if shape == 1 {
                        cells
                    } else {
                        // the same coset union reused as fixed-locus cells
                        cells
                            .with_fixed_locus(dims, stabs, vec![], perms)
                            .expect("stabilizers of a coset action")
                    }
                }
            };
            let second = *SUITE_SECOND_FACTORS.choose(&mut rng).expect("nonempty");
            let characteristic = *[0u64, 2, 3].choose(&mut rng).expect("nonempty");
            SuiteCase {
                group_name: name.into(),
                model,
                second_factor: second.into(),
                characteristic,
            }
        })
        .collect()
}

/// Runs the inertia, direct-factor and Kunneth checks on `count` seeded
/// inputs. Report order follows case order regardless of scheduling.
pub fn random_suite(seed: u64, count: usize) -> Result<Vec<VerificationReport>, StackError> {
    let cases = suite_cases(seed, count);
    let per_case: Vec<Vec<VerificationReport>> = cases
        .par_iter()
        .enumerate()
        .map(|(i, case)| {
            let h = catalog::by_name(&case.second_factor)?;
            let p = case.characteristic;
            let mut reports = vec![
                check_inertia_dimension(&case.model, p)?,
                check_direct_factor(&case.model, p)?,
                check_kunneth(&case.model, &h, p)?,
            ];
            for r in &mut reports {
                r.input_digest =
                    digest(&json!({ "seed": seed, "case": i, "input": r.input_digest }));
            }
            Ok(reports)
        })
        .collect::<Result<_, StackError>>()?;
    Ok(per_case.into_iter().flatten().collect())
}
