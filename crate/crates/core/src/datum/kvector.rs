use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::RatFunc;

/// Element of `Q(v) (x) K_G`, sparse over basis indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KVector(BTreeMap<usize, RatFunc>);

impl KVector {
    pub fn zero() -> Self {
        KVector(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Self {
        KVector::monomial(i, RatFunc::one())
    }

    pub fn monomial(i: usize, c: RatFunc) -> Self {
        let mut v = KVector::zero();
        v.add_term(i, &c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> RatFunc {
        self.0.get(&i).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &RatFunc)> {
        self.0.iter().map(|(i, c)| (*i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn add_term(&mut self, i: usize, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        let next = &self.get(i) + c;
        if next.is_zero() {
            self.0.remove(&i);
        } else {
            self.0.insert(i, next);
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &RatFunc, other: &KVector) -> KVector {
        let mut out = self.clone();
        if c.is_zero() {
            return out;
        }
        for (i, x) in other.iter() {
            out.add_term(i, &(c * x));
        }
        out
    }

    pub fn add(&self, other: &KVector) -> KVector {
        self.axpy(&RatFunc::one(), other)
    }

    pub fn sub(&self, other: &KVector) -> KVector {
        self.axpy(&RatFunc::from_int(-1), other)
    }

    pub fn scale(&self, c: &RatFunc) -> KVector {
        KVector::zero().axpy(c, self)
    }

    /// Coordinate-wise bar involution.
    pub fn bar(&self) -> KVector {
        KVector(self.0.iter().map(|(i, c)| (*i, c.bar())).collect())
    }

    /// Re-indexes through `f`; used for induction along a Levi.
    pub fn map_indices(&self, mut f: impl FnMut(usize) -> usize) -> KVector {
        let mut out = KVector::zero();
        for (i, c) in self.iter() {
            out.add_term(f(i), c);
        }
        out
    }
}

impl fmt::Display for KVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(i, c)| format!("({c})*I{i}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
