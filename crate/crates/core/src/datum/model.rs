use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exact::LaurentPoly;

/// Which variable the pairing raises to the orbit statistic `tau`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    /// `v^tau`; the convention matching the sheaf-theoretic pairing.
    #[default]
    PlusV,
    /// `(-v)^tau`.
    PrintedMinusV,
}

/// How a word of weights is read as a Borel subgroup of `GL_m`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlagOrder {
    /// The word lists the lines of the stabilised flag, first line first.
    #[default]
    Ascending,
    /// The word lists them last line first.
    Descending,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Conventions {
    pub sign: SignConvention,
    pub flag_order: FlagOrder,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub index: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveClass {
    pub id: usize,
    pub dual: usize,
    pub c_f: i64,
    pub members: Vec<usize>,
    /// `theta_L / (1 - v^2)^rank` for the Levi carrying the class.
    pub theta_ratio: LaurentPoly,
}

/// One orbit of the Weyl group on pairs of positive systems, given by its
/// two projections and the statistic `tau`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingOrbit {
    pub s: usize,
    pub s_prime: usize,
    pub tau: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitLabel {
    pub name: String,
    pub dim: i64,
}

/// A class of `n`-good parabolics: orbit, Levi datum and the induction map
/// on basis indices.
#[derive(Clone, Debug)]
pub struct EtaClass {
    pub d: i64,
    pub orbit: String,
    pub child: Arc<GradedDatum>,
    /// Pairs `(child basis index, parent basis index)`.
    pub induction: Vec<(usize, usize)>,
}

impl EtaClass {
    pub fn induce_index(&self, child: usize) -> Option<usize> {
        self.induction.iter().find(|p| p.0 == child).map(|p| p.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPrimeEntry {
    pub s_f: usize,
    pub r_f: LaurentPoly,
    pub kappa_label: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Leaf {
    pub rigid: bool,
    pub cprime: Vec<CPrimeEntry>,
}

/// Everything attached to one degree `n` of `Delta`.
#[derive(Clone, Debug)]
pub struct Grading {
    pub n: i64,
    pub orbits: Vec<OrbitLabel>,
    /// Pairs `(lower, upper)` with `lower` in the closure of `upper`.
    pub closure: Vec<(String, String)>,
    pub etas: Vec<EtaClass>,
    /// Basis index whose standard element is the constant sheaf on the open
    /// orbit, when known; used only to name local systems.
    pub constant_sheaf_word: Option<usize>,
}

impl Grading {
    pub fn orbit(&self, name: &str) -> Option<&OrbitLabel> {
        self.orbits.iter().find(|o| o.name == name)
    }

    /// The orbit of largest dimension.
    pub fn open_orbit(&self) -> &OrbitLabel {
        self.orbits.iter().max_by_key(|o| o.dim).expect("no orbits")
    }

    /// Reflexive-transitive closure of the closure relation, as the set of
    /// pairs `(a, b)` with `a` contained in the closure of `b`.
    pub fn closure_order(&self) -> BTreeSet<(String, String)> {
        let names: Vec<&str> = self.orbits.iter().map(|o| o.name.as_str()).collect();
        let idx: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let k = names.len();
        let mut rel = vec![vec![false; k]; k];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in &self.closure {
            if let (Some(&i), Some(&j)) = (idx.get(a.as_str()), idx.get(b.as_str())) {
                rel[i][j] = true;
            }
        }
        for m in 0..k {
            for i in 0..k {
                if rel[i][m] {
                    for j in 0..k {
                        if rel[m][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
        }
        let mut out = BTreeSet::new();
        for i in 0..k {
            for j in 0..k {
                if rel[i][j] {
                    out.insert((names[i].to_string(), names[j].to_string()));
                }
            }
        }
        out
    }
}

/// A graded datum in table form: the finite data from which the engine
/// computes everything else.
#[derive(Clone, Debug)]
pub struct GradedDatum {
    pub name: String,
    /// `[n, -n]`.
    pub delta: [i64; 2],
    pub basis: Vec<BasisElement>,
    pub primitive_classes: Vec<PrimitiveClass>,
    pub pairing: Vec<PairingOrbit>,
    pub sigma: Vec<usize>,
    /// Indexed like `delta`.
    pub gradings: [Grading; 2],
    pub leaf: Leaf,
}

impl GradedDatum {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn grading_index(&self, n: i64) -> Option<usize> {
        self.delta.iter().position(|&d| d == n)
    }

    /// Class id of each basis element.
    pub fn class_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.basis.len()];
        for c in &self.primitive_classes {
            for &m in &c.members {
                if m < out.len() {
                    out[m] = c.id;
                }
            }
        }
        out
    }

    pub fn class(&self, id: usize) -> Option<&PrimitiveClass> {
        self.primitive_classes.iter().find(|c| c.id == id)
    }

    /// All data reachable through the eta classes, each once, children
    /// first.
    pub fn descendants(self: &Arc<Self>) -> Vec<Arc<GradedDatum>> {
        fn walk(
            d: &Arc<GradedDatum>,
            seen: &mut BTreeSet<String>,
            out: &mut Vec<Arc<GradedDatum>>,
        ) {
            if !seen.insert(d.name.clone()) {
                return;
            }
            for g in &d.gradings {
                for eta in &g.etas {
                    walk(&eta.child, seen, out);
                }
            }
            out.push(d.clone());
        }
        let mut out = Vec::new();
        walk(self, &mut BTreeSet::new(), &mut out);
        out
    }
}

/// A failed check, reported rather than raised.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub datum: String,
    pub check: String,
    pub detail: String,
}

impl Finding {
    pub fn new(datum: &str, check: &str, detail: impl Into<String>) -> Self {
        Finding {
            datum: datum.to_string(),
            check: check.to_string(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.datum, self.check, self.detail)
    }
}
