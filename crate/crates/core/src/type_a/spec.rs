use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One `GL(V)` factor with a grading of `V` by integral weights, kept as a
/// sorted multiset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GlFactor {
    weights: Vec<i64>,
}

impl GlFactor {
    pub fn new(mut weights: Vec<i64>) -> Self {
        assert!(!weights.is_empty(), "empty factor");
        weights.sort_unstable();
        GlFactor { weights }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn multiplicities(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for &w in &self.weights {
            *m.entry(w).or_insert(0) += 1;
        }
        m
    }

    /// Same factor shifted so that its smallest weight is 0, with the shift.
    pub fn normalised(&self) -> (GlFactor, i64) {
        let s = self.weights[0];
        (
            GlFactor {
                weights: self.weights.iter().map(|w| w - s).collect(),
            },
            s,
        )
    }
}

/// `G = prod GL(V_f)` with gradings, and the degree `n`; `Delta = {n, -n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeASpec {
    pub factors: Vec<GlFactor>,
    pub n: i64,
}

impl TypeASpec {
    pub fn new(factors: Vec<Vec<i64>>, n: i64) -> Self {
        assert!(n != 0, "n must be nonzero");
        TypeASpec {
            factors: factors.into_iter().map(GlFactor::new).collect(),
            n,
        }
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(GlFactor::rank).sum()
    }

    pub fn with_n(&self, n: i64) -> TypeASpec {
        TypeASpec {
            factors: self.factors.clone(),
            n,
        }
    }
}

impl fmt::Display for TypeASpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|g| {
                g.weights
                    .iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "glq:{};n={}", parts.join("|"), self.n)
    }
}

impl FromStr for TypeASpec {
    type Err = Error;

    /// `glq:w1,w2|w3;n=K`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| Error::Parse(format!("GL spec '{s}': {why}"));
        let body = s
            .strip_prefix("glq:")
            .ok_or_else(|| bad("must start with 'glq:'"))?;
        let (ws, ns) = body.split_once(";n=").ok_or_else(|| bad("missing ';n='"))?;
        let n: i64 = ns.parse().map_err(|_| bad("n is not an integer"))?;
        if n == 0 {
            return Err(bad("n must be nonzero"));
        }
        let mut factors = Vec::new();
        for part in ws.split('|') {
            if part.is_empty() {
                return Err(bad("empty factor"));
            }
            let weights = part
                .split(',')
                .map(|w| w.parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad("weights must be integers"))?;
            factors.push(GlFactor::new(weights));
        }
        Ok(TypeASpec { factors, n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let s: TypeASpec = "glq:1,0|0;n=1".parse().unwrap();
        assert_eq!(s.to_string(), "glq:0,1|0;n=1");
        assert_eq!(s.rank(), 3);
        assert!("glq:0,1;n=0".parse::<TypeASpec>().is_err());
        assert!("gl:0,1;n=1".parse::<TypeASpec>().is_err());
        assert!("glq:0,,1;n=1".parse::<TypeASpec>().is_err());
        assert!("glq:|0;n=1".parse::<TypeASpec>().is_err());
    }
}
