#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use gic::datum::{Conventions, GradedDatum};
use gic::engine::{Engine, RunResult};
use gic::exact::LaurentPoly;
use gic::type_a::{build_datum, TypeASpec};

pub fn poly(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

pub fn run_gl(spec: &str) -> (TypeASpec, Arc<RunResult>) {
    let spec: TypeASpec = spec.parse().unwrap();
    let conv = Conventions::default();
    let d = build_datum(&spec, conv).unwrap();
    let r = Engine::new(conv).run(&d).unwrap();
    (spec, r)
}

pub fn strings(m: &[Vec<LaurentPoly>]) -> Vec<Vec<String>> {
    m.iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

/// Roots of `C_2` on the basis `e1, e2`, one per sign pair.
const ROOTS: [(i64, i64); 4] = [(1, -1), (1, 1), (2, 0), (0, 2)];
/// The grading cocharacter.
const H: (i64, i64) = (1, 1);

fn pair(a: (i64, i64), x: (i64, i64)) -> i64 {
    a.0 * x.0 + a.1 * x.1
}

/// The statistic of two Weyl chambers: each root pair separating them adds
/// 1 in degree `+-2` and -2 in degree 0.
fn tau(x: (i64, i64), y: (i64, i64)) -> i64 {
    ROOTS
        .iter()
        .filter(|&&a| pair(a, x).signum() != pair(a, y).signum())
        .map(|&a| match pair(a, H).abs() {
            0 => -2,
            2 => 1,
            _ => 0,
        })
        .sum()
}

/// Pairing orbits of the principal block, recomputed from root data: the
/// basis element `Bk` is the class, modulo the reflection in `e1 - e2`, of
/// the chambers with `k` positive roots of degree 2.
pub fn sp4_taus_from_roots() -> BTreeMap<(String, String), Vec<i64>> {
    // chambers with x1 > x2
    let chambers = [(3, 1), (3, -1), (1, -3), (-1, -3)];
    let label = |x: (i64, i64)| {
        let k = ROOTS
            .iter()
            .filter(|&&a| pair(a, H) == 2 && pair(a, x) > 0)
            .count();
        format!("B{k}")
    };
    let mut out = BTreeMap::new();
    for &x in &chambers {
        for &y in &chambers {
            let swapped = (y.1, y.0);
            let mut t = vec![tau(x, y), tau(x, swapped)];
            t.sort();
            out.insert((label(x), label(y)), t);
        }
    }
    out
}

pub fn datum_taus(d: &GradedDatum) -> BTreeMap<(String, String), Vec<i64>> {
    let mut out: BTreeMap<(String, String), Vec<i64>> = BTreeMap::new();
    for o in &d.pairing {
        out.entry((d.basis[o.s].label.clone(), d.basis[o.s_prime].label.clone()))
            .or_default()
            .push(o.tau);
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}
