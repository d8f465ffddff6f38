//! Command implementations behind the `stacky` binary.
//!
//! Every command reads an [`InputDocument`] and produces an
//! [`OutputDocument`], rendered either as JSON or as plain text.

mod document;

pub use document::{
    CellDoc, CellsDoc, CoverDoc, CurveDoc, FixedCellDoc, FixedLocusDoc, GerbeDoc, GroupDoc,
    HSetDoc, InputDocument, ModelDoc, MotiveDoc,
};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::chars::character_table;
use crate::correspondence::FiniteMap;
use crate::groups::{FiniteGroup, Perm};
use crate::motive::{ChowDim, EquivariantModel, Motive, Term};
use crate::stack::{
    motive_chi_bh, motive_chi_gerbe, motive_chi_quotient, motive_quotient, orbifold_curve_motive,
    CycloInertiaComponent, StackError,
};
use crate::verify::{
    check_degree_splitting, check_direct_factor, check_inertia_dimension, check_kunneth,
    check_rep_ring_vs_classes, random_suite, VerificationReport,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error(transparent)]
    Compute(#[from] StackError),
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OutputDocument {
    pub command: String,
    pub characteristic: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub motive: Option<Vec<Term>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poincare: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chow_dims: Option<BTreeMap<i64, ChowDim>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_factor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentInfo>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_matrix: Option<Vec<Vec<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reports: Option<Vec<VerificationReport>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComponentInfo {
    pub label: String,
    pub order: u64,
    pub fixed_cells: usize,
    pub acting_group_order: usize,
    pub characters: usize,
    pub poincare: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassInfo {
    pub representative: Vec<usize>,
    pub cycles: String,
    pub size: usize,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CyclicInfo {
    pub generator: Vec<usize>,
    pub cycles: String,
    pub order: u64,
    pub normalizer_order: usize,
    pub conjugates: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TableInfo {
    pub degrees: Vec<u64>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupInfo {
    pub degree: usize,
    pub order: usize,
    pub conjugacy_classes: Vec<ClassInfo>,
    pub cyclic_subgroup_classes: Vec<CyclicInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character_table: Option<TableInfo>,
}

fn motive_fields(out: &mut OutputDocument, m: &Motive) {
    out.motive = Some(m.terms().to_vec());
    out.poincare = Some(m.poincare_polynomial());
    out.chow_dims = Some(m.twists().into_iter().map(|t| (t, m.chow_dim(t))).collect());
}

fn component_info(c: &CycloInertiaComponent) -> ComponentInfo {
    ComponentInfo {
        label: format!("<{}>", c.class.generator),
        order: c.class.order,
        fixed_cells: c.fixed_model.len(),
        acting_group_order: c.class.normalizer.order(),
        characters: c.chars.size(),
        poincare: c.motive.poincare_polynomial(),
    }
}

fn group_of(doc: &InputDocument) -> Result<FiniteGroup, CliError> {
    doc.group()
}

/// Class data of the document's group, with the character table on
/// request.
pub fn cmd_group_info(
    doc: &InputDocument,
    p: u64,
    with_chars: bool,
) -> Result<OutputDocument, CliError> {
    let g = group_of(doc)?;
    let classes = g
        .conjugacy_classes()
        .into_iter()
        .map(|c| ClassInfo {
            representative: c.representative.images().to_vec(),
            cycles: c.representative.to_string(),
            size: c.size(),
            order: c.order,
        })
        .collect();
    let cyclic = g
        .cyclic_subgroup_classes(p)
        .map_err(StackError::from)?
        .into_iter()
        .map(|c| CyclicInfo {
            generator: c.generator.images().to_vec(),
            cycles: c.generator.to_string(),
            order: c.order,
            normalizer_order: c.normalizer.order(),
            conjugates: c.conjugates,
        })
        .collect();
    let character_table = if with_chars {
        let t = character_table(&g).map_err(StackError::from)?;
        Some(TableInfo {
            degrees: t.degrees().to_vec(),
            rows: t
                .rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        })
    } else {
        None
    };
    Ok(OutputDocument {
        command: "group".into(),
        characteristic: p,
        group: Some(GroupInfo {
            degree: g.degree(),
            order: g.order(),
            conjugacy_classes: classes,
            cyclic_subgroup_classes: cyclic,
            character_table,
        }),
        ..Default::default()
    })
}

pub fn cmd_motive_bh(doc: &InputDocument, p: u64) -> Result<OutputDocument, CliError> {
    let g = group_of(doc)?;
    let bh = motive_chi_bh(&g, p)?;
    let mut out = OutputDocument {
        command: "motive bh".into(),
        characteristic: p,
        components: Some(bh.components.iter().map(component_info).collect()),
        product_matrix: bh.product_matrix,
        h_factor: Some(Motive::unit().poincare_polynomial()),
        ..Default::default()
    };
    motive_fields(&mut out, &bh.motive);
    Ok(out)
}

pub fn cmd_motive_quotient(doc: &InputDocument, p: u64) -> Result<OutputDocument, CliError> {
    let g = group_of(doc)?;
    if doc.model.is_none() {
        return Err(CliError::Validation("model: missing".into()));
    }
    let x = doc.model(&g)?;
    let chi = motive_chi_quotient(&x, p)?;
    let mut out = OutputDocument {
        command: "motive quotient".into(),
        characteristic: p,
        components: Some(chi.components.iter().map(component_info).collect()),
        h_factor: Some(motive_quotient(&x).poincare_polynomial()),
        ..Default::default()
    };
    motive_fields(&mut out, &chi.motive);
    Ok(out)
}

pub fn cmd_motive_gerbe(doc: &InputDocument, p: u64) -> Result<OutputDocument, CliError> {
    let g = group_of(doc)?;
    let datum = doc.gerbe(&g)?;
    let gm = motive_chi_gerbe(&datum, p)?;
    let components = gm
        .orbits
        .iter()
        .map(|orbit| {
            let e = gm.rset.elements[orbit[0]];
            let c = &gm.rset.classes[e.class];
            ComponentInfo {
                label: format!("<{}>^{}", c.generator, e.exponent),
                order: c.order,
                fixed_cells: 0,
                acting_group_order: c.normalizer.order(),
                characters: orbit.len(),
                poincare: if orbit.len() == 1 {
                    datum.base.poincare_polynomial()
                } else {
                    format!("[Cover({},{})]", datum.base_label, orbit.len())
                },
            }
        })
        .collect();
    let mut out = OutputDocument {
        command: "motive gerbe".into(),
        characteristic: p,
        components: Some(components),
        h_factor: Some(gm.h_factor.poincare_polynomial()),
        ..Default::default()
    };
    motive_fields(&mut out, &gm.motive);
    Ok(out)
}

pub fn cmd_motive_curve(genus: u32, orders: &[u32]) -> Result<OutputDocument, CliError> {
    let cm = orbifold_curve_motive(genus, orders)?;
    let mut out = OutputDocument {
        command: "motive curve".into(),
        h_factor: Some(cm.h_factor.poincare_polynomial()),
        ..Default::default()
    };
    motive_fields(&mut out, &cm.motive);
    Ok(out)
}

/// Which verification to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    InertiaDim,
    DirectFactor,
    Kunneth,
    RepRing,
    Splitting,
    All,
    Suite,
}

/// Number of inputs in the randomized suite.
pub const SUITE_CASES: usize = 120;

/// The map `g -> g(x0)` from group elements onto the orbit of ambient cell
/// 0; its fibers are cosets of the stabilizer, so it is equidegree.
fn default_cover(x: &EquivariantModel) -> FiniteMap {
    let g = x.group();
    if x.is_empty() {
        return FiniteMap::new(vec![0; g.order()], 1).expect("total");
    }
    let images: Vec<usize> = g
        .elements()
        .iter()
        .map(|e| x.action_of(e).expect("element").apply(0))
        .collect();
    let mut orbit = images.clone();
    orbit.sort_unstable();
    orbit.dedup();
    let relabel: Vec<usize> = images
        .iter()
        .map(|i| orbit.binary_search(i).expect("in orbit"))
        .collect();
    FiniteMap::new(relabel, orbit.len()).expect("total")
}

pub fn cmd_verify(
    doc: &InputDocument,
    p: u64,
    check: Check,
    seed: u64,
) -> Result<OutputDocument, CliError> {
    let mut reports = Vec::new();
    if check == Check::Suite {
        reports = random_suite(seed, SUITE_CASES)?;
    } else {
        let g = group_of(doc)?;
        let x = doc.model(&g)?;
        let want = |c: Check| check == c || check == Check::All;
        if want(Check::InertiaDim) {
            reports.push(check_inertia_dimension(&x, p)?);
        }
        if want(Check::DirectFactor) {
            reports.push(check_direct_factor(&x, p)?);
        }
        if want(Check::Kunneth) {
            reports.push(check_kunneth(&x, &doc.kunneth_group()?, p)?);
        }
        if want(Check::RepRing) {
            reports.push(check_rep_ring_vs_classes(&g)?);
        }
        if want(Check::Splitting) {
            let f = match doc.cover()? {
                Some(f) => f,
                None => default_cover(&x),
            };
            let m = f.source_size() / f.target_size().max(1);
            reports.push(check_degree_splitting(&f, m.max(1)));
        }
    }
    Ok(OutputDocument {
        command: "verify".into(),
        characteristic: p,
        reports: Some(reports),
        ..Default::default()
    })
}

impl OutputDocument {
    /// Whether every report passed (vacuously true without reports).
    pub fn passed(&self) -> bool {
        self.reports
            .as_ref()
            .is_none_or(|rs| rs.iter().all(|r| r.pass))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("output serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(g) = &self.group {
            let _ = writeln!(s, "order {} on {} points", g.order, g.degree);
            let _ = writeln!(s, "conjugacy classes:");
            for c in &g.conjugacy_classes {
                let _ = writeln!(s, "  {}  size {}  order {}", c.cycles, c.size, c.order);
            }
            let _ = writeln!(
                s,
                "cyclic subgroups (characteristic {}):",
                self.characteristic
            );
            for c in &g.cyclic_subgroup_classes {
                let _ = writeln!(
                    s,
                    "  <{}>  order {}  normalizer {}  conjugates {}",
                    c.cycles, c.order, c.normalizer_order, c.conjugates
                );
            }
            if let Some(t) = &g.character_table {
                let _ = writeln!(s, "character table:");
                for row in &t.rows {
                    let _ = writeln!(s, "  {}", row.join("  "));
                }
            }
        }
        if let Some(p) = &self.poincare {
            let _ = writeln!(s, "motive: {p}");
        }
        if let Some(h) = &self.h_factor {
            let _ = writeln!(s, "h factor: {h}");
        }
        if let Some(dims) = &self.chow_dims {
            for (t, d) in dims {
                let opaque: Vec<String> = d.opaque.iter().map(|o| o.atom.to_string()).collect();
                if opaque.is_empty() {
                    let _ = writeln!(s, "A^{t}: {}", d.tate_dim);
                } else {
                    let _ = writeln!(s, "A^{t}: {} plus opaque {}", d.tate_dim, opaque.join(", "));
                }
            }
        }
        if let Some(cs) = &self.components {
            let _ = writeln!(s, "components:");
            for c in cs {
                let _ = writeln!(s, "  {}  order {}: {}", c.label, c.order, c.poincare);
            }
        }
        if let Some(pm) = &self.product_matrix {
            let _ = writeln!(
                s,
                "product matrix (row i*r + j holds the coefficients of x_i x_j):"
            );
            let r = pm.first().map_or(0, Vec::len);
            for (k, row) in pm.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(u64::to_string).collect();
                let _ = writeln!(
                    s,
                    "  {},{}: {}",
                    k / r.max(1),
                    k % r.max(1),
                    cells.join(" ")
                );
            }
        }
        if let Some(rs) = &self.reports {
            for r in rs {
                let verdict = if r.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    s,
                    "{verdict} {}  lhs: {}  rhs: {}",
                    r.check_name, r.lhs, r.rhs
                );
            }
            let failed = rs.iter().filter(|r| !r.pass).count();
            let _ = writeln!(s, "{} checks, {failed} failed", rs.len());
        }
        s
    }
}

/// Parses a comma-separated list of cone point orders.
pub fn parse_orders(s: &str) -> Result<Vec<u32>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .enumerate()
        .map(|(i, x)| {
            x.trim()
                .parse()
                .map_err(|_| CliError::Validation(format!("orders[{i}]: {x:?} is not a number")))
        })
        .collect()
}

/// Identity permutations, one per generator; handy for building documents.
pub fn identity_images(g: &FiniteGroup, points: usize) -> Vec<Vec<usize>> {
    vec![Perm::identity(points).images().to_vec(); g.generators().len()]
}
