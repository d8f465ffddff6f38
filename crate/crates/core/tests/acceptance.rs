//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stacky::chars::{character_table, rep_ring};
use stacky::correspondence::{
    graph_correspondences, splitting_certificate, FiniteMap, TateCorrespondence,
};
use stacky::groups::{catalog, FiniteGroup, Perm};
use stacky::motive::{Atom, EquivariantModel, Motive};
use stacky::scalar::ExactField;
use stacky::stack::{
    gerbe_rset, motive_chi_bh, motive_chi_gerbe, motive_chi_quotient, motive_quotient,
    orbifold_curve_motive, Automorphism, GerbeDatum,
};
use stacky::verify::{check_inertia_dimension, check_kunneth, suite_cases};
use stacky::{Correspondence, Rational, RationalMatrix};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

const BH_RANKS: &[(&str, usize)] = &[
    ("C2", 2),
    ("S3", 3),
    ("A4", 4),
    ("S4", 5),
    ("Q8", 5),
    ("D4", 5),
];
const SUITE_SEED: u64 = 2024;
const SUITE_SIZE: usize = 120;

fn group(name: &str) -> FiniteGroup {
    catalog::by_name(name).expect("catalog group")
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn bh_ranks() -> Outcome {
    for &(name, rank) in BH_RANKS {
        let g = group(name);
        let bh = motive_chi_bh(&g, 0).map_err(|e| e.to_string())?;
        expect_eq(&format!("{name} rank"), bh.rank, rank)?;
        expect_eq(
            &format!("{name} motive"),
            bh.motive.clone(),
            Motive::tate(0, rank as u64),
        )?;
        expect_eq(
            &format!("{name} classes"),
            g.conjugacy_classes().len(),
            rank,
        )?;
        let orbit_sum: usize = bh.components.iter().map(|c| c.chars.orbits().len()).sum();
        expect_eq(&format!("{name} orbits on s(c)"), orbit_sum, rank)?;
        let table = character_table(&g).map_err(|e| e.to_string())?;
        expect_eq(&format!("{name} table rows"), table.len(), rank)?;
    }
    Ok(())
}

fn product_structure() -> Outcome {
    let c2 = rep_ring(&character_table(&group("C2")).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let sign = (0..2).find(|&i| i != 0).expect("two characters");
    expect_eq("C2 sign^2", c2.product(sign, sign), vec![1, 0])?;

    let s3_table = character_table(&group("S3")).map_err(|e| e.to_string())?;
    let s3 = rep_ring(&s3_table).map_err(|e| e.to_string())?;
    let degrees = s3_table.degrees();
    let std = degrees
        .iter()
        .position(|&d| d == 2)
        .ok_or("no degree-2 character")?;
    let sgn = (1..3)
        .find(|&i| degrees[i] == 1)
        .ok_or("no sign character")?;
    let mut want = vec![0; 3];
    want[0] = 1;
    want[sgn] = 1;
    want[std] = 1;
    expect_eq("S3 std^2", s3.product(std, std), want)?;
    expect_eq("S3 trivial row first", degrees[0], 1)?;

    for &(name, _) in BH_RANKS {
        let ring = rep_ring(&character_table(&group(name)).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        expect_eq(
            &format!("{name} pointwise identity"),
            ring.pointwise_identity_holds(),
            true,
        )?;
    }
    Ok(())
}

fn mu3_on_p1() -> EquivariantModel {
    let c3 = group("C3");
    let g = c3.generators()[0].clone();
    EquivariantModel::cells(c3, vec![0, 1], vec![Perm::identity(2)])
        .and_then(|x| {
            x.with_fixed_locus(
                vec![0, 0],
                vec![vec![g.clone()], vec![g]],
                vec![],
                vec![Perm::identity(2)],
            )
        })
        .expect("valid model")
}

fn dual_route_orbifold() -> Outcome {
    let chi = motive_chi_quotient(&mu3_on_p1(), 0)
        .map_err(|e| e.to_string())?
        .motive;
    let curve = orbifold_curve_motive(0, &[3, 3])
        .map_err(|e| e.to_string())?
        .motive;
    let want = Motive::unit()
        .direct_sum(&Motive::lefschetz(1))
        .direct_sum(&Motive::tate(0, 4));
    expect_eq("cell model vs curve formula", chi.terms(), curve.terms())?;
    expect_eq("curve formula vs 1 + L + 4", curve.terms(), want.terms())
}

fn inertia_double_count() -> Outcome {
    let cases = suite_cases(SUITE_SEED, SUITE_SIZE);
    for (i, case) in cases.iter().enumerate() {
        let r =
            check_inertia_dimension(&case.model, case.characteristic).map_err(|e| e.to_string())?;
        if !r.pass {
            return Err(format!(
                "case {i} ({}): {} vs {}",
                case.group_name, r.lhs, r.rhs
            ));
        }
    }
    Ok(())
}

fn kunneth() -> Outcome {
    for (i, case) in suite_cases(SUITE_SEED, SUITE_SIZE).iter().enumerate() {
        let r = check_kunneth(
            &case.model,
            &group(&case.second_factor),
            case.characteristic,
        )
        .map_err(|e| e.to_string())?;
        if !r.pass {
            return Err(format!(
                "case {i} ({} x {}): {} vs {}",
                case.group_name, case.second_factor, r.lhs, r.rhs
            ));
        }
    }
    for &(a, ra) in BH_RANKS {
        for &(b, rb) in BH_RANKS {
            let gh = group(a)
                .direct_product(&group(b))
                .map_err(|e| e.to_string())?;
            let bh = motive_chi_bh(&gh, 0).map_err(|e| e.to_string())?;
            expect_eq(&format!("rank B({a} x {b})"), bh.rank, ra * rb)?;
        }
    }
    Ok(())
}

fn direct_factor() -> Outcome {
    let mut models: Vec<(EquivariantModel, u64)> = suite_cases(SUITE_SEED, SUITE_SIZE)
        .into_iter()
        .map(|c| (c.model, c.characteristic))
        .collect();
    // regular actions are free
    for &(name, _) in BH_RANKS {
        let g = group(name);
        let imgs = g
            .generators()
            .iter()
            .map(|s| {
                Perm::new(
                    g.elements()
                        .iter()
                        .map(|x| g.index_of(&(s * x)).expect("closed"))
                        .collect(),
                )
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        models.push((
            EquivariantModel::hset(g.clone(), g.order(), imgs).map_err(|e| e.to_string())?,
            0,
        ));
    }
    let mut free = 0;
    for (i, (x, p)) in models.iter().enumerate() {
        let chi = motive_chi_quotient(x, *p).map_err(|e| e.to_string())?;
        let h = motive_quotient(x);
        expect_eq(
            &format!("model {i} trivial component"),
            chi.trivial_component(),
            &h,
        )?;
        if chi.is_free() {
            free += 1;
            expect_eq(&format!("model {i} free action"), &chi.motive, &h)?;
        }
    }
    if free < BH_RANKS.len() {
        return Err(format!("only {free} free actions checked"));
    }
    Ok(())
}

/// Every map from `n` points onto `n / m` points with all fibers of size `m`.
fn all_equidegree(n: usize, m: usize) -> Vec<Vec<usize>> {
    let k = n / m;
    let mut out = Vec::new();
    let mut images = vec![0; n];
    let mut counts = vec![0; k];
    fn go(
        i: usize,
        m: usize,
        images: &mut [usize],
        counts: &mut [usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == images.len() {
            out.push(images.to_vec());
            return;
        }
        for t in 0..counts.len() {
            if counts[t] < m {
                counts[t] += 1;
                images[i] = t;
                go(i + 1, m, images, counts, out);
                counts[t] -= 1;
            }
        }
    }
    go(0, m, &mut images, &mut counts, &mut out);
    out
}

fn check_cover(images: Vec<usize>, target: usize, m: usize) -> Outcome {
    let f = FiniteMap::new(images, target).map_err(|e| e.to_string())?;
    let (pull, push) = graph_correspondences::<Rational>(&f);
    let composed = push.compose(&pull).map_err(|e| e.to_string())?;
    let want = Correspondence::identity(&Motive::tate(0, target as u64))
        .map_err(|e| e.to_string())?
        .scale(&Rational::from_int(m as i64));
    if composed != want {
        return Err(format!("f_* f^* != {m} id for {:?}", f.images()));
    }
    let cert = splitting_certificate::<Rational>(&f, m).map_err(|e| e.to_string())?;
    let p = cert
        .inclusion
        .compose(&cert.retraction)
        .map_err(|e| e.to_string())?;
    cert.verify(&p).map_err(|e| e.to_string())
}

/// `S diag(1,..,1,0,..,0) S^-1` with `S` a product of random elementary
/// matrices, so the inverse is exact and cheap.
fn random_idempotent(rng: &mut ChaCha8Rng, n: usize, rank: usize) -> RationalMatrix {
    let mut s = RationalMatrix::identity(n);
    let mut s_inv = RationalMatrix::identity(n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let a = Rational::new(
            rng.gen_range(-3i64..=3).into(),
            rng.gen_range(1i64..=3).into(),
        );
        let mut e = RationalMatrix::identity(n);
        e[(i, j)] = a.clone();
        let mut e_inv = RationalMatrix::identity(n);
        e_inv[(i, j)] = -a;
        s = s.checked_mul(&e).expect("square");
        s_inv = e_inv.checked_mul(&s_inv).expect("square");
    }
    let d = RationalMatrix::diagonal(
        &(0..n)
            .map(|i| Rational::from_int((i < rank) as i64))
            .collect::<Vec<_>>(),
    );
    s.checked_mul(&d)
        .and_then(|x| x.checked_mul(&s_inv))
        .expect("square")
}

fn splitting_certificates() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    for n in 1..=12 {
        for m in (1..=n).filter(|m| n % m == 0) {
            if n <= 8 {
                for images in all_equidegree(n, m) {
                    check_cover(images, n / m, m)?;
                }
            } else {
                // up to relabeling there is one cover per (n, m); sample relabelings
                for _ in 0..40 {
                    let mut images: Vec<usize> = (0..n).map(|i| i / m).collect();
                    rand::seq::SliceRandom::shuffle(images.as_mut_slice(), &mut rng);
                    check_cover(images, n / m, m)?;
                }
            }
        }
    }
    for trial in 0..200 {
        // a motive with terms at up to three twists, total size at most 8
        let mut ranks = BTreeMap::new();
        let mut blocks = BTreeMap::new();
        let mut budget = 6;
        for twist in 0..rng.gen_range(1..=3i64) {
            let size = rng.gen_range(1..=4usize);
            let rank = rng.gen_range(0..=size.min(budget));
            budget -= rank;
            ranks.insert(twist, size as u64);
            blocks.insert(twist, random_idempotent(&mut rng, size, rank));
        }
        let m = Motive::from_tate_ranks(&ranks);
        let p = TateCorrespondence::new(m.clone(), m, blocks).map_err(|e| e.to_string())?;
        if !p.is_idempotent() {
            return Err(format!("trial {trial}: generated matrix is not idempotent"));
        }
        let split = p
            .split_idempotent()
            .map_err(|e| format!("trial {trial}: {e}"))?;
        let ir = split
            .inclusion
            .compose(&split.retraction)
            .map_err(|e| e.to_string())?;
        let ri = split
            .retraction
            .compose(&split.inclusion)
            .map_err(|e| e.to_string())?;
        expect_eq(&format!("trial {trial} i o r"), &ir, &p)?;
        let id = Correspondence::identity(&split.image).map_err(|e| e.to_string())?;
        expect_eq(&format!("trial {trial} r o i"), &ri, &id)?;
        expect_eq(
            &format!("trial {trial} image rank"),
            split.image.tate_rank() as usize,
            p.rank(),
        )?;
    }
    Ok(())
}

fn characteristic_filter() -> Outcome {
    let s3 = group("S3");
    expect_eq(
        "|c(S3, 3)|",
        s3.cyclic_subgroup_classes(3)
            .map_err(|e| e.to_string())?
            .len(),
        2,
    )?;
    let bh = |g: &FiniteGroup, p| {
        motive_chi_bh(g, p)
            .map(|b| b.rank)
            .map_err(|e| e.to_string())
    };
    expect_eq("S3 rank at p=0,3", (bh(&s3, 0)?, bh(&s3, 3)?), (3, 2))?;
    let a4 = group("A4");
    expect_eq("A4 rank at p=0,3", (bh(&a4, 0)?, bh(&a4, 3)?), (4, 2))?;
    let orders: Vec<u64> = a4
        .cyclic_subgroup_classes(3)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|c| c.order)
        .collect();
    expect_eq("A4 cyclic orders at p=3", orders, vec![1, 2])
}

fn gerbe_example() -> Outcome {
    let c3 = group("C3");
    let g = c3.generators()[0].clone();
    let inversion = Automorphism::new(&c3, vec![g.inverse()]).map_err(|e| e.to_string())?;
    let base = Motive::curve(1);
    let datum = |monodromy: Vec<Automorphism>| GerbeDatum {
        group: c3.clone(),
        monodromy,
        base: base.clone(),
        base_label: "E".into(),
    };
    let twisted = motive_chi_gerbe(&datum(vec![inversion]), 0).map_err(|e| e.to_string())?;
    let cover = Motive::atom(Atom::cover("E", 2).map_err(|e| e.to_string())?, 0, 1);
    expect_eq(
        "inversion monodromy",
        twisted.motive,
        base.direct_sum(&cover),
    )?;
    let plain = motive_chi_gerbe(&datum(vec![]), 0).map_err(|e| e.to_string())?;
    expect_eq("trivial monodromy", plain.motive, base.times(3))?;
    let r = gerbe_rset(&c3, 0, &[]).map_err(|e| e.to_string())?.len();
    let rank = motive_chi_bh(&c3, 0).map_err(|e| e.to_string())?.rank;
    expect_eq("|R(C3)| vs rank", (r, rank), (3, 3))
}

fn examples_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples")
}

fn run_cli(args: &[&str], serial: bool) -> Result<Vec<u8>, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_stacky"));
    cmd.args(args).arg("--format").arg("json");
    if serial {
        cmd.env("RAYON_NUM_THREADS", "1");
    }
    let out = cmd.output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "{args:?} exited with {}: {}",
            out.status,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let mut docs: Vec<PathBuf> = std::fs::read_dir(examples_dir())
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    docs.sort();
    if docs.len() < 3 {
        return Err(format!(
            "expected at least three example documents, found {}",
            docs.len()
        ));
    }
    let mut runs = 0;
    for doc in &docs {
        let path = doc.to_str().ok_or("non-UTF-8 path")?;
        let text = std::fs::read_to_string(doc).map_err(|e| e.to_string())?;
        let mut commands: Vec<Vec<&str>> = Vec::new();
        if text.contains("\"group\"") {
            commands.push(vec!["group", "--chars", "--input", path]);
            commands.push(vec!["motive", "bh", "--input", path]);
            commands.push(vec!["verify", "--check", "all", "--input", path]);
        }
        if text.contains("\"model\"") {
            commands.push(vec!["motive", "quotient", "--input", path]);
        }
        if text.contains("\"gerbe\"") {
            commands.push(vec!["motive", "gerbe", "--input", path]);
        }
        if text.contains("\"curve\"") {
            commands.push(vec!["motive", "curve", "--input", path]);
        }
        for args in commands {
            let first = run_cli(&args, false)?;
            let second = run_cli(&args, false)?;
            let serial = run_cli(&args, true)?;
            if first != second || first != serial {
                return Err(format!("output of {args:?} differs between runs"));
            }
            runs += 1;
        }
    }
    let suite = ["verify", "--check", "suite", "--seed", "5"];
    if run_cli(&suite, false)? != run_cli(&suite, true)? {
        return Err("suite output differs between parallel and serial runs".into());
    }
    if runs == 0 {
        return Err("no commands were run".into());
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("BH ranks by three routes", bh_ranks),
        ("representation ring product structure", product_structure),
        ("dual-route orbifold curve", dual_route_orbifold),
        ("inertia double count on the suite", inertia_double_count),
        ("Kunneth on the suite and for BH pairs", kunneth),
        ("direct-factor law", direct_factor),
        ("splitting certificates", splitting_certificates),
        ("characteristic filter", characteristic_filter),
        ("gerbe example", gerbe_example),
        ("deterministic JSON output", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS criterion {}: {name} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
