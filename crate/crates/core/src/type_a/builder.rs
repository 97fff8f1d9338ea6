use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;

use super::orbits::{child_data, closure_leq, induction_map, multisegments, orbit_dim};
use super::{pairing_orbits, word_label, words, GlFactor, TypeASpec, Word};
use crate::datum::{
    BasisElement, CPrimeEntry, Conventions, EtaClass, FlagOrder, GradedDatum, Grading, Leaf,
    OrbitLabel, PrimitiveClass,
};
use crate::error::{Error, Result};
use crate::exact::LaurentPoly;

/// Largest total rank the builder accepts; the basis grows factorially.
pub const MAX_BUILDER_RANK: usize = 8;

/// `[m]_{v^2}! = prod_{i=1}^m (1 + v^2 + ... + v^{2(i-1)})`.
pub fn v2_factorial(m: usize) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for i in 1..=m {
        let q = LaurentPoly::from_terms((0..i as i64).map(|k| (2 * k, BigInt::from(1))));
        out = &out * &q;
    }
    out
}

/// `theta_{G_0} / (1 - v^2)^rank`.
pub fn theta_ratio(spec: &TypeASpec) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for f in &spec.factors {
        for &m in f.multiplicities().values() {
            out = &out * &v2_factorial(m);
        }
    }
    out
}

fn dims(spec: &TypeASpec) -> (i64, i64, i64) {
    let (mut l0, mut ln, mut rank) = (0i64, 0i64, 0i64);
    for f in &spec.factors {
        let m = f.multiplicities();
        for (&w, &k) in &m {
            l0 += (k * k) as i64;
            ln += (k * m.get(&(w + spec.n)).copied().unwrap_or(0)) as i64;
            rank += k as i64;
        }
    }
    (l0, ln, rank)
}

/// `dim L_n G - dim L_0 G + rank`.
pub fn c_f(spec: &TypeASpec) -> i64 {
    let (l0, ln, rank) = dims(spec);
    ln - l0 + rank
}

/// For some center `c` the values `(2w - c) / n` form a union of strings
/// `{k, k-2, ..., -k}`; checked factor by factor.
pub fn factor_is_rigid(f: &GlFactor, n: i64) -> bool {
    let u: Vec<i64> = f.weights().iter().map(|w| 2 * w).collect();
    let c = (u[0] + u[u.len() - 1]) / 2;
    let step = n.abs();
    let mut h: BTreeMap<i64, usize> = BTreeMap::new();
    for x in &u {
        if (x - c) % step != 0 {
            return false;
        }
        *h.entry((x - c) / step).or_insert(0) += 1;
    }
    h.iter().all(|(&k, &m)| {
        let mirror = h.get(&-k).copied().unwrap_or(0);
        let inner = if k.abs() >= 2 {
            h.get(&(k.abs() - 2)).copied().unwrap_or(0)
        } else {
            m
        };
        mirror == m && inner >= m
    })
}

pub fn is_rigid(spec: &TypeASpec) -> bool {
    spec.factors.iter().all(|f| factor_is_rigid(f, spec.n))
}

/// The word of the Borel with `L_n B = L_n G`.
pub fn constant_sheaf_word(spec: &TypeASpec, order: FlagOrder) -> Word {
    spec.factors
        .iter()
        .map(|f| {
            let mut w = f.weights().to_vec();
            let descending = (spec.n > 0) == (order == FlagOrder::Ascending);
            if descending {
                w.reverse();
            }
            w
        })
        .collect()
}

/// Builds the table datum of `spec`, with children built recursively.
pub fn build_datum(spec: &TypeASpec, conv: Conventions) -> Result<Arc<GradedDatum>> {
    if spec.rank() > MAX_BUILDER_RANK {
        return Err(Error::TooLarge(format!(
            "{spec}: total rank {} exceeds {MAX_BUILDER_RANK}",
            spec.rank()
        )));
    }
    let mut cache = HashMap::new();
    build_cached(spec, conv, &mut cache)
}

fn build_cached(
    spec: &TypeASpec,
    conv: Conventions,
    cache: &mut HashMap<String, Arc<GradedDatum>>,
) -> Result<Arc<GradedDatum>> {
    let name = spec.to_string();
    if let Some(d) = cache.get(&name) {
        return Ok(d.clone());
    }
    let basis_words = words(spec);
    let index: HashMap<&Word, usize> = basis_words
        .iter()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let rigid = is_rigid(spec);

    let mut gradings = Vec::with_capacity(2);
    for n in [spec.n, -spec.n] {
        let sp = spec.with_n(n);
        let ms = multisegments(&sp);
        let orbits: Vec<OrbitLabel> = ms
            .iter()
            .map(|m| OrbitLabel {
                name: m.name(),
                dim: orbit_dim(&sp, m),
            })
            .collect();
        let mut closure = Vec::new();
        for (i, a) in ms.iter().enumerate() {
            for (j, b) in ms.iter().enumerate() {
                if i != j && closure_leq(&sp, a, b) {
                    closure.push((orbits[i].name.clone(), orbits[j].name.clone()));
                }
            }
        }
        let mut etas = Vec::new();
        for (m, o) in ms.iter().zip(&orbits) {
            let cd = child_data(&sp, m, conv.flag_order);
            if cd.is_whole {
                continue;
            }
            let child = build_cached(&cd.spec.with_n(spec.n), conv, cache)?;
            let induction = induction_map(&sp, &basis_words, &cd);
            etas.push(EtaClass {
                d: o.dim,
                orbit: o.name.clone(),
                child,
                induction,
            });
        }
        let csw = constant_sheaf_word(&sp, conv.flag_order);
        gradings.push(Grading {
            n,
            orbits,
            closure,
            etas,
            constant_sheaf_word: index.get(&csw).copied(),
        });
    }

    let cprime = if spec.factors.iter().all(|f| f.multiplicities().len() == 1) {
        let mut r = LaurentPoly::one();
        for f in &spec.factors {
            let m = f.rank();
            r = &r * &v2_factorial(m);
            r = r.shift(-((m * (m - 1) / 2) as i64));
        }
        vec![CPrimeEntry {
            s_f: 0,
            r_f: r,
            kappa_label: "triv".to_string(),
        }]
    } else {
        Vec::new()
    };

    let g1 = gradings.pop().unwrap();
    let g0 = gradings.pop().unwrap();
    let datum = Arc::new(GradedDatum {
        name: name.clone(),
        delta: [spec.n, -spec.n],
        basis: basis_words
            .iter()
            .enumerate()
            .map(|(index, w)| BasisElement {
                index,
                label: word_label(w),
            })
            .collect(),
        primitive_classes: vec![PrimitiveClass {
            id: 0,
            dual: 0,
            c_f: c_f(spec),
            members: (0..basis_words.len()).collect(),
            theta_ratio: theta_ratio(spec),
        }],
        pairing: pairing_orbits(spec, &basis_words),
        sigma: basis_words
            .iter()
            .map(|w| {
                let r: Word = w
                    .iter()
                    .map(|f| f.iter().rev().copied().collect())
                    .collect();
                index[&r]
            })
            .collect(),
        gradings: [g0, g1],
        leaf: Leaf { rigid, cprime },
    });
    cache.insert(name, datum.clone());
    Ok(datum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rigidity() {
        let r = |w: &[i64], n| factor_is_rigid(&GlFactor::new(w.to_vec()), n);
        assert!(r(&[0, 1], 1));
        assert!(!r(&[0, 0, 1], 1));
        assert!(r(&[0, 1, 1, 2], 1));
        assert!(r(&[0, 0], 3));
        assert!(!r(&[0, 1], 2));
        assert!(r(&[0, 2], 2));
        assert!(r(&[0, 2, 2, 2, 4], 2));
        assert!(!r(&[0, 4], 2));
        assert!(r(&[0, 1, 1, 1, 2], 1));
    }

    #[test]
    fn rank_one_datum() {
        let spec: TypeASpec = "glq:0,1;n=1".parse().unwrap();
        let d = build_datum(&spec, Conventions::default()).unwrap();
        assert_eq!(d.dim(), 2);
        assert!(d.leaf.rigid);
        assert!(d.leaf.cprime.is_empty());
        assert_eq!(d.primitive_classes[0].c_f, 1);
        assert_eq!(d.gradings[0].etas.len(), 1);
        assert_eq!(d.gradings[0].constant_sheaf_word, Some(1));
    }

    #[test]
    fn central_leaf() {
        let spec: TypeASpec = "glq:0,0;n=1".parse().unwrap();
        let d = build_datum(&spec, Conventions::default()).unwrap();
        assert_eq!(d.leaf.cprime[0].r_f.to_string(), "v^-1+v");
    }
}
