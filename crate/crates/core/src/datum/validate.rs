use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{gram_laurent, Finding, GradedDatum, SignConvention};

/// Structural checks on a datum and all of its descendants.
pub fn validate_datum(datum: &Arc<GradedDatum>, sign: SignConvention) -> Vec<Finding> {
    let mut out = Vec::new();
    for d in datum.descendants() {
        validate_one(&d, sign, &mut out);
    }
    out
}

fn validate_one(d: &GradedDatum, sign: SignConvention, out: &mut Vec<Finding>) {
    let mut bad = |check: &str, detail: String| out.push(Finding::new(&d.name, check, detail));
    let n = d.dim();

    for (i, b) in d.basis.iter().enumerate() {
        if b.index != i {
            bad("basis", format!("entry {i} has index {}", b.index));
        }
    }
    let labels: BTreeSet<&str> = d.basis.iter().map(|b| b.label.as_str()).collect();
    if labels.len() != n {
        bad("basis", "labels are not distinct".into());
    }

    let class_of = d.class_of();
    let mut seen = vec![0usize; n];
    let mut ids = BTreeSet::new();
    for c in &d.primitive_classes {
        if !ids.insert(c.id) {
            bad("classes", format!("duplicate class id {}", c.id));
        }
        for &m in &c.members {
            if m >= n {
                bad(
                    "classes",
                    format!("class {} lists member {m} out of range", c.id),
                );
            } else {
                seen[m] += 1;
            }
        }
        match d.class(c.dual) {
            None => bad(
                "classes",
                format!("class {} has unknown dual {}", c.id, c.dual),
            ),
            Some(dual) => {
                if dual.dual != c.id {
                    bad(
                        "classes",
                        format!("duality is not an involution at {}", c.id),
                    );
                }
                if dual.c_f != c.c_f || dual.theta_ratio != c.theta_ratio {
                    bad(
                        "classes",
                        format!("class {} and its dual disagree on c_F or theta", c.id),
                    );
                }
            }
        }
        if c.theta_ratio.is_zero() {
            bad("classes", format!("class {} has zero theta ratio", c.id));
        }
    }
    if let Some(i) = seen.iter().position(|&k| k != 1) {
        bad(
            "classes",
            format!("basis element {i} lies in {} classes", seen[i]),
        );
        return;
    }

    if d.sigma.len() != n {
        bad("sigma", format!("length {} != {n}", d.sigma.len()));
        return;
    }
    for s in 0..n {
        let t = d.sigma[s];
        if t >= n || d.sigma[t] != s {
            bad("sigma", format!("not an involution at {s}"));
            return;
        }
        if class_of[t] != class_of[s] {
            bad("sigma", format!("moves {s} out of its class"));
        }
    }

    let mut taus: BTreeMap<(usize, usize), Vec<i64>> = BTreeMap::new();
    for o in &d.pairing {
        if o.s >= n || o.s_prime >= n {
            bad(
                "pairing",
                format!("orbit ({}, {}) out of range", o.s, o.s_prime),
            );
            return;
        }
        let dual = d.class(class_of[o.s]).map(|c| c.dual);
        if dual != Some(class_of[o.s_prime]) {
            bad(
                "pairing",
                format!("orbit over ({}, {}) joins non-dual classes", o.s, o.s_prime),
            );
        }
        taus.entry((o.s, o.s_prime)).or_default().push(o.tau);
    }
    for v in taus.values_mut() {
        v.sort_unstable();
    }
    // tau(O) + tau(O~) = c_F, where O~ replaces the first positive system by
    // its negative; on projections this is (s, s') -> (sigma s, s').
    for s in 0..n {
        let Some(cls) = d.class(class_of[s]) else {
            continue;
        };
        for t in 0..n {
            let here = taus.get(&(s, t)).cloned().unwrap_or_default();
            let mut there: Vec<i64> = taus
                .get(&(d.sigma[s], t))
                .map(|v| v.iter().map(|x| cls.c_f - x).collect())
                .unwrap_or_default();
            there.sort_unstable();
            if here != there {
                bad(
                    "tau-duality",
                    format!("tau over ({s},{t}) is {here:?} but c_F - tau over (sigma {s},{t}) is {there:?}"),
                );
            }
        }
    }
    let g = gram_laurent(d, sign);
    for s in 0..n {
        for t in 0..s {
            if g[s][t] != g[t][s] {
                bad("gram", format!("not symmetric at ({s},{t})"));
            }
        }
    }

    for gr in &d.gradings {
        let names: BTreeSet<&str> = gr.orbits.iter().map(|o| o.name.as_str()).collect();
        if names.len() != gr.orbits.len() {
            bad("orbits", format!("n={}: duplicate orbit names", gr.n));
        }
        if gr.orbits.is_empty() {
            bad("orbits", format!("n={}: no orbits", gr.n));
            continue;
        }
        let top = gr.open_orbit().dim;
        if gr.orbits.iter().filter(|o| o.dim == top).count() != 1 {
            bad("orbits", format!("n={}: open orbit is not unique", gr.n));
        }
        for (a, b) in &gr.closure {
            if !names.contains(a.as_str()) || !names.contains(b.as_str()) {
                bad(
                    "closure",
                    format!("n={}: unknown orbit in ({a}, {b})", gr.n),
                );
            }
        }
        let order = gr.closure_order();
        for (a, b) in &order {
            if a != b && order.contains(&(b.clone(), a.clone())) {
                bad(
                    "closure",
                    format!("n={}: {a} and {b} contain each other", gr.n),
                );
            }
        }
        if let Some(w) = gr.constant_sheaf_word {
            if w >= n {
                bad(
                    "constant_sheaf_word",
                    format!("n={}: index {w} out of range", gr.n),
                );
            }
        }
        let open = gr.open_orbit().name.clone();
        let mut covered = BTreeSet::new();
        for eta in &gr.etas {
            let Some(o) = gr.orbit(&eta.orbit) else {
                bad("eta", format!("n={}: unknown orbit {}", gr.n, eta.orbit));
                continue;
            };
            if !covered.insert(eta.orbit.clone()) {
                bad(
                    "eta",
                    format!("n={}: two classes on orbit {}", gr.n, eta.orbit),
                );
            }
            if o.dim != eta.d {
                bad(
                    "eta",
                    format!(
                        "n={}: d={} but orbit {} has dim {}",
                        gr.n, eta.d, o.name, o.dim
                    ),
                );
            }
            let mut cd = eta.child.delta;
            let mut pd = d.delta;
            cd.sort_unstable();
            pd.sort_unstable();
            if cd != pd {
                bad(
                    "eta",
                    format!("n={}: child {} has different delta", gr.n, eta.child.name),
                );
            }
            let cn = eta.child.dim();
            let dom: BTreeSet<usize> = eta.induction.iter().map(|p| p.0).collect();
            let img: BTreeSet<usize> = eta.induction.iter().map(|p| p.1).collect();
            if dom.len() != eta.induction.len() || dom != (0..cn).collect() {
                bad("eta", format!("n={}: induction from {} is not defined on every child basis element exactly once", gr.n, eta.child.name));
            }
            if img.len() != eta.induction.len() || img.iter().any(|&p| p >= n) {
                bad(
                    "eta",
                    format!(
                        "n={}: induction from {} is not injective into the basis",
                        gr.n, eta.child.name
                    ),
                );
            }
        }
        for o in &gr.orbits {
            let expect = !(d.leaf.rigid && o.name == open);
            if expect && !covered.contains(&o.name) {
                bad(
                    "eta",
                    format!("n={}: orbit {} has no parabolic class", gr.n, o.name),
                );
            }
            if !expect && covered.contains(&o.name) {
                bad(
                    "eta",
                    format!(
                        "n={}: open orbit of a rigid datum has a proper parabolic",
                        gr.n
                    ),
                );
            }
        }
    }

    if !d.leaf.rigid && !d.leaf.cprime.is_empty() {
        bad("leaf", "non-rigid datum lists primitive pairs".into());
    }
    let mut sf = BTreeSet::new();
    for c in &d.leaf.cprime {
        if c.s_f >= n || !sf.insert(c.s_f) {
            bad("leaf", format!("bad or repeated s_F {}", c.s_f));
        }
        if c.r_f.is_zero() {
            bad("leaf", format!("zero r_F for s_F {}", c.s_f));
        }
    }
}
