//! The recursive computation of the bases `Z_n`, their bar-invariant
//! companions and every matrix derived from them.

mod invariants;
mod run;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use serde::Serialize;

use crate::datum::{Conventions, GradedDatum, KVector, Pairing};
use crate::error::Result;
use crate::exact::LaurentPoly;

pub use invariants::{check_run, check_run_tree};

/// A simple perverse sheaf: support orbit and local system.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Kappa {
    pub orbit: String,
    pub ls: String,
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.orbit, self.ls)
    }
}

/// Where an element of `Z_n` came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Induced from element `child_element` of the child run of eta class
    /// `eta`.
    Induced { eta: usize, child_element: usize },
    /// Built from element `source` of `Z_{-n}` by projecting its
    /// bar-invariant companion away from `Z'_n`.
    Fourier { source: usize },
    /// Primitive pair `entry` of the leaf.
    Primitive { entry: usize },
}

impl Origin {
    pub fn tag(&self) -> &'static str {
        match self {
            Origin::Induced { .. } => "induced",
            Origin::Fourier { .. } => "fourier",
            Origin::Primitive { .. } => "primitive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ZElement {
    pub vector: KVector,
    pub kappa: Kappa,
    pub d: i64,
    pub origin: Origin,
}

/// `L_kappa = t(r^-1 I_s)` in both bases.
#[derive(Clone, Debug)]
pub struct LEntry {
    pub s: usize,
    pub r: LaurentPoly,
    /// Coordinates on `Z_n`.
    pub standard: Vec<LaurentPoly>,
    /// Coordinates on the bar-invariant basis.
    pub canonical: Vec<LaurentPoly>,
}

/// Everything computed for one degree `n`.
#[derive(Clone, Debug)]
pub struct GradingRun {
    pub n: i64,
    pub open_orbit: String,
    pub z: Vec<ZElement>,
    /// Indices (into `z`) of the induced elements, in the order used by
    /// `a_matrix`.
    pub z_prime: Vec<usize>,
    /// `beta(xi) = sum a xi'` on `Z'_n`.
    pub a_matrix: Vec<Vec<LaurentPoly>>,
    /// `W^xi = sum c xi'` on `Z_n`; the multiplicity matrix.
    pub c_matrix: Vec<Vec<LaurentPoly>>,
    pub w: Vec<KVector>,
    /// `I_s = sum e xi` modulo the radical; rows are basis elements.
    pub e_matrix: Vec<Vec<LaurentPoly>>,
    pub weight_dims: Vec<Vec<BigInt>>,
    /// `leq[i][j]` iff `z[i] <= z[j]`.
    pub leq: Vec<Vec<bool>>,
    pub l_table: Vec<LEntry>,
    pub xi: Vec<usize>,
}

impl GradingRun {
    pub fn find(&self, kappa: &Kappa) -> Option<usize> {
        self.z.iter().position(|z| &z.kappa == kappa)
    }

    pub fn labels(&self) -> Vec<String> {
        self.z.iter().map(|z| z.kappa.to_string()).collect()
    }
}

#[derive(Debug)]
pub struct RunResult {
    pub datum: Arc<GradedDatum>,
    pub conventions: Conventions,
    pub pairing: Pairing,
    /// Indexed like `datum.delta`.
    pub gradings: [GradingRun; 2],
    /// `fourier[i]` is the element of `Z_{-n}` matched with `Z_n[i]`.
    pub fourier: Vec<usize>,
    /// Runs of the children, per grading and eta class.
    pub children: [Vec<Arc<RunResult>>; 2],
}

impl RunResult {
    pub fn grading(&self, n: i64) -> Option<&GradingRun> {
        self.datum.grading_index(n).map(|i| &self.gradings[i])
    }

    /// Fourier partner of element `i` of grading `gi`.
    pub fn partner(&self, gi: usize, i: usize) -> usize {
        if gi == 0 {
            self.fourier[i]
        } else {
            self.fourier
                .iter()
                .position(|&j| j == i)
                .expect("fourier is a bijection")
        }
    }
}

/// Memoising driver. Results are keyed by datum name.
pub struct Engine {
    conv: Conventions,
    memo: Mutex<HashMap<String, Arc<RunResult>>>,
}

impl Engine {
    pub fn new(conv: Conventions) -> Self {
        Engine {
            conv,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn conventions(&self) -> Conventions {
        self.conv
    }

    pub fn run(&self, datum: &Arc<GradedDatum>) -> Result<Arc<RunResult>> {
        if let Some(r) = self.memo.lock().unwrap().get(&datum.name) {
            return Ok(r.clone());
        }
        let r = Arc::new(run::compute(self, datum)?);
        self.memo
            .lock()
            .unwrap()
            .entry(datum.name.clone())
            .or_insert(r.clone());
        Ok(r)
    }
}
