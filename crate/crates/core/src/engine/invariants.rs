use std::collections::BTreeSet;

use super::{Origin, RunResult};
use crate::datum::{Finding, KVector, SignConvention};
use crate::exact::{solve_linear, LaurentPoly, RFMatrix, RatFunc};

/// Series order used for the Gram positivity check.
const SERIES_ORDER: i64 = 10;

fn is_identity_like(m: &[Vec<LaurentPoly>]) -> Result<(), String> {
    // entries in Z[v], constant terms an involutive permutation matrix
    let k = m.len();
    let mut perm = vec![None; k];
    for i in 0..k {
        for j in 0..k {
            if !m[i][j].exps_at_least(0) {
                return Err(format!("entry ({i},{j}) = {} has negative powers", m[i][j]));
            }
            let c = m[i][j].coeff(0);
            if c == 1.into() {
                if perm[i].is_some() {
                    return Err(format!("row {i} has two constant terms"));
                }
                perm[i] = Some(j);
            } else if c != 0.into() {
                return Err(format!("entry ({i},{j}) has constant term {c}"));
            }
        }
    }
    for (i, p) in perm.iter().enumerate() {
        match p {
            Some(j) if perm[*j] == Some(i) => {}
            _ => return Err(format!("constant terms do not pair row {i}")),
        }
    }
    Ok(())
}

/// Coordinates of `x` on the vectors `zs` modulo the radical, if `x` lies
/// in their span.
fn coords(run: &RunResult, gram: &RFMatrix, zs: &[KVector], x: &KVector) -> Option<Vec<RatFunc>> {
    let k = zs.len();
    let row = run.pairing.row(x);
    let rhs = RFMatrix::from_fn(k, 1, |j, _| {
        let mut acc = RatFunc::zero();
        for (t, c) in zs[j].iter() {
            acc = &acc + &(&row[t] * c);
        }
        acc
    });
    let sol = solve_linear(gram, &rhs).ok()?;
    let cs: Vec<RatFunc> = (0..k).map(|j| sol.get(j, 0).clone()).collect();
    let mut y = x.clone();
    for (c, z) in cs.iter().zip(zs) {
        y = y.axpy(&(-c), z);
    }
    run.pairing.in_radical(&y).then_some(cs)
}

/// Checks the structural properties every run must have. Returns one
/// finding per violation.
pub fn check_run(run: &RunResult) -> Vec<Finding> {
    let d = &run.datum;
    let mut out = Vec::new();
    let mut bad = |check: &str, detail: String| out.push(Finding::new(&d.name, check, detail));
    let class_of = d.class_of();

    // bar(Gram(s,s') / theta) = eps^-c_F Gram(sigma s, s') / theta
    let g = run.pairing.gram_laurent();
    for s in 0..d.dim() {
        let Some(cls) = d.class(class_of[s]) else {
            continue;
        };
        let theta = RatFunc::from_laurent(&cls.theta_ratio);
        let eps = match run.conventions.sign {
            SignConvention::PlusV => LaurentPoly::v_pow(-cls.c_f),
            SignConvention::PrintedMinusV => LaurentPoly::v_pow(-cls.c_f).negate_variable(),
        };
        for t in 0..d.dim() {
            let lhs = RatFunc::from_laurent(&g[s][t])
                .checked_div(&theta)
                .unwrap()
                .bar();
            let rhs = &RatFunc::from_laurent(&(&eps * &g[d.sigma[s]][t])) * &theta.inv().unwrap();
            if lhs != rhs {
                bad(
                    "gram-bar",
                    format!("fails at ({}, {})", d.basis[s].label, d.basis[t].label),
                );
            }
        }
    }

    for (gi, gr) in run.gradings.iter().enumerate() {
        let n = gr.n;
        let k = gr.z.len();
        let labels = gr.labels();
        let uniq: BTreeSet<&String> = labels.iter().collect();
        if uniq.len() != k {
            bad(
                "labels",
                format!("n={n}: {} labels for {k} elements", uniq.len()),
            );
        }

        let np = gr.z_prime.len();
        for i in 0..np {
            for j in 0..np {
                let mut s = LaurentPoly::zero();
                for m in 0..np {
                    s = &s + &(&gr.a_matrix[i][m].bar() * &gr.a_matrix[m][j]);
                }
                if s.is_one() != (i == j) || (i != j && !s.is_zero()) {
                    bad(
                        "a-involution",
                        format!("n={n}: (bar a) a != 1 at ({i},{j})"),
                    );
                }
            }
        }

        for i in 0..k {
            for j in 0..k {
                let c = &gr.c_matrix[i][j];
                if i == j {
                    if !c.is_one() {
                        bad(
                            "c-diagonal",
                            format!("n={n}: {} has diagonal {c}", labels[i]),
                        );
                    }
                    continue;
                }
                if c.is_zero() {
                    continue;
                }
                if !c.exps_at_least(1) {
                    bad(
                        "c-degree",
                        format!("n={n}: c({}, {}) = {c} not in vZ[v]", labels[i], labels[j]),
                    );
                }
                if !gr.leq[j][i] {
                    bad(
                        "c-support",
                        format!(
                            "n={n}: c({}, {}) = {c} but not {} <= {}",
                            labels[i], labels[j], labels[j], labels[i]
                        ),
                    );
                }
                if !c.has_nonnegative_coeffs() {
                    bad(
                        "positivity",
                        format!("n={n}: c({}, {}) = {c}", labels[i], labels[j]),
                    );
                }
            }
        }

        let vs: Vec<KVector> = gr.z.iter().map(|z| z.vector.clone()).collect();
        let gram = run.pairing.gram_of(&vs);
        match gram.to_laurent() {
            Err((i, j)) => bad(
                "gram-z",
                format!("n={n}: ({}, {}) is not Laurent", labels[i], labels[j]),
            ),
            Ok(m) => {
                if let Err(e) = is_identity_like(&m) {
                    bad("gram-z", format!("n={n}: {e}"));
                }
                for i in 0..k {
                    let Some(s) = gr.z[i].vector.support().next() else {
                        continue;
                    };
                    let Some(cls) = d.class(class_of[s]) else {
                        continue;
                    };
                    let theta = RatFunc::from_laurent(&cls.theta_ratio);
                    for j in 0..k {
                        let x = RatFunc::from_laurent(&m[i][j]).checked_div(&theta).unwrap();
                        match x.series_prefix(SERIES_ORDER) {
                            Ok(p) if p.exps_at_least(0) && p.coeff(0) <= 1.into() => {}
                            Ok(p) => bad(
                                "gram-series",
                                format!("n={n}: ({}, {}) expands as {p}", labels[i], labels[j]),
                            ),
                            Err(e) => bad("gram-series", format!("n={n}: {e}")),
                        }
                    }
                }
            }
        }
        let wgram = run.pairing.gram_of(&gr.w);
        match wgram.to_laurent() {
            Err((i, j)) => bad(
                "gram-w",
                format!("n={n}: ({}, {}) is not Laurent", labels[i], labels[j]),
            ),
            Ok(m) => {
                if let Err(e) = is_identity_like(&m) {
                    bad("gram-w", format!("n={n}: {e}"));
                }
            }
        }

        for (s, row) in gr.e_matrix.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.eval_at_one() != gr.weight_dims[s][j] {
                    bad("weight-dims", format!("n={n}: mismatch at ({s},{j})"));
                }
            }
        }

        let mut seen_s = BTreeSet::new();
        for (i, l) in gr.l_table.iter().enumerate() {
            if !seen_s.insert(l.s) {
                bad(
                    "l-injective",
                    format!("n={n}: s={} repeats at {}", l.s, labels[i]),
                );
            }
            for (name, coords) in [("l-standard", &l.standard), ("l-canonical", &l.canonical)] {
                for j in 0..k {
                    let c = &coords[j];
                    if j == i && !c.is_one() {
                        bad(
                            name,
                            format!("n={n}: {} has coefficient {c} on itself", labels[i]),
                        );
                    }
                    if j != i && !c.is_zero() && !gr.leq[j][i] {
                        bad(
                            name,
                            format!(
                                "n={n}: {} involves {} outside the order",
                                labels[i], labels[j]
                            ),
                        );
                    }
                }
            }
            if l.canonical
                .iter()
                .any(|c| !c.has_nonnegative_coeffs() || !c.is_bar_invariant())
            {
                bad(
                    "l-canonical",
                    format!(
                        "n={n}: {} has a coefficient that is negative or not bar invariant",
                        labels[i]
                    ),
                );
            }
        }

        let other = &run.gradings[1 - gi];
        for i in 0..k {
            let p = run.partner(gi, i);
            match coords(run, &gram, &vs, &other.z[p].vector) {
                None => bad(
                    "lattice",
                    format!("n={n}: partner of {} is outside the span", labels[i]),
                ),
                Some(cs) => {
                    for (j, c) in cs.iter().enumerate() {
                        let target = if i == j { &RatFunc::one() - c } else { -c };
                        match target.to_laurent() {
                            Some(x) if x.exps_at_least(1) => {}
                            _ => bad(
                                "lattice",
                                format!(
                                    "n={n}: {} minus its partner has coefficient {target} on {}",
                                    labels[i], labels[j]
                                ),
                            ),
                        }
                    }
                }
            }
        }
        let mut gens: Vec<&KVector> = gr.z_prime.iter().map(|&i| &gr.z[i].vector).collect();
        gens.extend(other.z_prime.iter().map(|&i| &other.z[i].vector));
        gens.extend(
            gr.z.iter()
                .filter(|z| matches!(z.origin, Origin::Primitive { .. }))
                .map(|z| &z.vector),
        );
        for x in gens {
            match coords(run, &gram, &vs, x) {
                Some(cs)
                    if cs
                        .iter()
                        .all(|c| c.to_laurent().is_some_and(|p| p.exps_at_least(0))) => {}
                _ => bad(
                    "lattice",
                    format!("n={n}: a generator is not in the Z[v]-span of Z"),
                ),
            }
        }

        let fourier_there = other
            .z
            .iter()
            .filter(|z| matches!(z.origin, Origin::Fourier { .. }))
            .count();
        if d.leaf.rigid && gr.xi.len() != fourier_there {
            bad(
                "xi",
                format!(
                    "n={n}: |Xi| = {} but {} elements at -n come from Fourier",
                    gr.xi.len(),
                    fourier_there
                ),
            );
        }
    }
    out
}

/// `check_run` on a run and every run beneath it.
pub fn check_run_tree(run: &RunResult) -> Vec<Finding> {
    fn walk<'a>(r: &'a RunResult, seen: &mut BTreeSet<&'a str>, out: &mut Vec<Finding>) {
        if !seen.insert(&r.datum.name) {
            return;
        }
        for ch in r.children.iter().flatten() {
            walk(ch, seen, out);
        }
        out.extend(check_run(r));
    }
    let mut out = Vec::new();
    walk(run, &mut BTreeSet::new(), &mut out);
    out
}
