use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::MotiveError;

/// An indecomposable building block of a motive.
///
/// The derived order (`Unit < H1 < Cover < Opaque`, then by payload) is the
/// canonical order of terms sharing a twist.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Atom {
    /// The motive of a point.
    Unit,
    /// Weight-one part of a curve of the given genus; rank `2 * genus`.
    H1 {
        genus: u32,
    },
    /// A degree-`degree` etale cover of the variety labelled `base`, not
    /// decomposed further.
    Cover {
        base: String,
        degree: u32,
    },
    Opaque {
        label: String,
    },
}

impl Atom {
    pub fn h1(genus: u32) -> Result<Self, MotiveError> {
        if genus == 0 {
            return Err(MotiveError::BadAtom(
                "H1 of genus 0 is the zero motive".into(),
            ));
        }
        Ok(Atom::H1 { genus })
    }

    pub fn cover(base: impl Into<String>, degree: u32) -> Result<Self, MotiveError> {
        let base = base.into();
        if base.is_empty() {
            return Err(MotiveError::BadAtom("cover base label is empty".into()));
        }
        if degree < 2 {
            return Err(MotiveError::BadAtom(format!(
                "cover degree {degree} is below 2"
            )));
        }
        Ok(Atom::Cover { base, degree })
    }

    pub fn opaque(label: impl Into<String>) -> Result<Self, MotiveError> {
        let label = label.into();
        if label.is_empty() {
            return Err(MotiveError::BadAtom("opaque label is empty".into()));
        }
        Ok(Atom::Opaque { label })
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Atom::Unit)
    }

    /// Checks the invariants of atoms that arrived through deserialization.
    pub fn validate(&self) -> Result<(), MotiveError> {
        match self {
            Atom::Unit => Ok(()),
            Atom::H1 { genus } => Atom::h1(*genus).map(drop),
            Atom::Cover { base, degree } => Atom::cover(base.clone(), *degree).map(drop),
            Atom::Opaque { label } => Atom::opaque(label.clone()).map(drop),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Unit => write!(f, "1"),
            Atom::H1 { genus } => write!(f, "[H1_{genus}]"),
            Atom::Cover { base, degree } => write!(f, "[Cover({base},{degree})]"),
            Atom::Opaque { label } => write!(f, "[{label}]"),
        }
    }
}

/// `multiplicity` copies of `atom` twisted by `L^twist`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub atom: Atom,
    pub twist: i64,
    #[serde(rename = "mult")]
    pub multiplicity: u64,
}

impl Term {
    fn key(&self) -> (i64, &Atom) {
        (self.twist, &self.atom)
    }
}

/// A finite direct sum of twisted atoms, kept sorted by `(twist, atom)` with
/// equal keys merged and zero multiplicities dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Motive {
    terms: Vec<Term>,
}

/// Rank of `Hom(L^m, M)` split into its Tate part and the atoms whose
/// contribution is not determined by the decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChowDim {
    pub tate_dim: u64,
    pub opaque: Vec<Term>,
}

impl Motive {
    pub fn zero() -> Self {
        Motive::default()
    }

    /// The motive of a point.
    pub fn unit() -> Self {
        Motive::tate(0, 1)
    }

    /// `L^twist`.
    pub fn lefschetz(twist: i64) -> Self {
        Motive::tate(twist, 1)
    }

    /// `(L^twist)^{+mult}`.
    pub fn tate(twist: i64, mult: u64) -> Self {
        Motive::atom(Atom::Unit, twist, mult)
    }

    pub fn atom(atom: Atom, twist: i64, mult: u64) -> Self {
        Motive::from_terms([Term {
            atom,
            twist,
            multiplicity: mult,
        }])
    }

    /// `1 + H1(g) + L`, the motive of a smooth projective curve of genus `g`.
    pub fn curve(genus: u32) -> Self {
        let mut m = Motive::unit().direct_sum(&Motive::lefschetz(1));
        if genus > 0 {
            m = m.direct_sum(&Motive::atom(Atom::H1 { genus }, 0, 1));
        }
        m
    }

    /// Sorts and merges arbitrary terms.
    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut merged: BTreeMap<(i64, Atom), u64> = BTreeMap::new();
        for t in terms {
            if t.multiplicity > 0 {
                *merged.entry((t.twist, t.atom)).or_default() += t.multiplicity;
            }
        }
        Motive {
            terms: merged
                .into_iter()
                .map(|((twist, atom), multiplicity)| Term {
                    atom,
                    twist,
                    multiplicity,
                })
                .collect(),
        }
    }

    /// Per-twist multiplicities of a Unit-only motive.
    pub fn from_tate_ranks(ranks: &BTreeMap<i64, u64>) -> Self {
        Motive::from_terms(ranks.iter().map(|(&twist, &m)| Term {
            atom: Atom::Unit,
            twist,
            multiplicity: m,
        }))
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_unit_only(&self) -> bool {
        self.terms.iter().all(|t| t.atom.is_unit())
    }

    /// Multiplicity of `atom` at `twist`.
    pub fn multiplicity(&self, atom: &Atom, twist: i64) -> u64 {
        self.terms
            .binary_search_by(|t| t.key().cmp(&(twist, atom)))
            .map_or(0, |i| self.terms[i].multiplicity)
    }

    /// Unit multiplicities by twist.
    pub fn tate_ranks(&self) -> BTreeMap<i64, u64> {
        self.terms
            .iter()
            .filter(|t| t.atom.is_unit())
            .map(|t| (t.twist, t.multiplicity))
            .collect()
    }

    /// Sum of all Unit multiplicities.
    pub fn tate_rank(&self) -> u64 {
        self.tate_ranks().values().sum()
    }

    pub fn direct_sum(&self, other: &Motive) -> Motive {
        Motive::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    /// `self^{+n}`.
    pub fn times(&self, n: u64) -> Motive {
        Motive::from_terms(self.terms.iter().map(|t| Term {
            multiplicity: t.multiplicity * n,
            ..t.clone()
        }))
    }

    /// `self (x) L^k`.
    pub fn twist(&self, k: i64) -> Motive {
        Motive::from_terms(self.terms.iter().map(|t| Term {
            twist: t.twist + k,
            ..t.clone()
        }))
    }

    /// Tensor product; at least one factor must be Unit-only.
    pub fn tensor(&self, other: &Motive) -> Result<Motive, MotiveError> {
        if !self.is_unit_only() && !other.is_unit_only() {
            return Err(MotiveError::OpaqueTensor);
        }
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let atom = if a.atom.is_unit() { &b.atom } else { &a.atom };
                out.push(Term {
                    atom: atom.clone(),
                    twist: a.twist + b.twist,
                    multiplicity: a.multiplicity * b.multiplicity,
                });
            }
        }
        Ok(Motive::from_terms(out))
    }

    pub fn chow_dim(&self, m: i64) -> ChowDim {
        ChowDim {
            tate_dim: self.multiplicity(&Atom::Unit, m),
            opaque: self
                .terms
                .iter()
                .filter(|t| !t.atom.is_unit() && t.twist <= m)
                .cloned()
                .collect(),
        }
    }

    /// Twists at which `chow_dim` can be nonzero: every twist carrying a
    /// term.
    pub fn twists(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.terms.iter().map(|t| t.twist).collect();
        v.dedup();
        v
    }

    /// Renders the motive as a polynomial in `L`, e.g. `4 + L`,
    /// `1 + [H1_1] + L`, `2L^2`, `[Cover(X,2)]`.
    pub fn poincare_polynomial(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self.terms.iter().map(render_term).collect();
        parts.join(" + ")
    }
}

fn render_power(twist: i64) -> String {
    match twist {
        0 => String::new(),
        1 => "L".into(),
        k => format!("L^{k}"),
    }
}

fn render_term(t: &Term) -> String {
    let power = render_power(t.twist);
    let coeff = if t.multiplicity == 1 {
        String::new()
    } else {
        t.multiplicity.to_string()
    };
    if t.atom.is_unit() {
        if power.is_empty() {
            t.multiplicity.to_string()
        } else {
            format!("{coeff}{power}")
        }
    } else if power.is_empty() {
        format!("{coeff}{}", t.atom)
    } else {
        format!("{coeff}{}·{power}", t.atom)
    }
}

impl fmt::Display for Motive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poincare_polynomial())
    }
}
