use std::collections::BTreeSet;
use std::sync::Arc;

use super::{Engine, GradingRun, Kappa, LEntry, Origin, RunResult, ZElement};
use crate::datum::{GradedDatum, KVector, Pairing};
use crate::error::{broken, Error, Result};
use crate::exact::{solve_linear, LaurentPoly, RFMatrix, RatFunc};

type LMatrix = Vec<Vec<LaurentPoly>>;

fn solve(step: &str, a: &RFMatrix, b: &RFMatrix) -> Result<RFMatrix> {
    solve_linear(a, b).map_err(|e| match e {
        Error::SingularMatrix => broken(step, "Gram matrix is singular"),
        e => e,
    })
}

fn certify(step: &str, m: &RFMatrix, rows: &[String], cols: &[String]) -> Result<LMatrix> {
    m.to_laurent().map_err(|(i, j)| {
        broken(
            step,
            format!(
                "entry ({}, {}) = {} is not a Laurent polynomial",
                rows[i],
                cols[j],
                m.get(i, j)
            ),
        )
    })
}

fn sort_key(z: &ZElement) -> (i64, Kappa) {
    (-z.d, z.kappa.clone())
}

/// Z'_n with its Gram matrix and bar-invariant companions.
struct PrimeStage {
    z: Vec<ZElement>,
    gram: RFMatrix,
    a: LMatrix,
    c: LMatrix,
    w: Vec<KVector>,
}

fn induced_elements(
    datum: &GradedDatum,
    gi: usize,
    children: &[Arc<RunResult>],
) -> Result<Vec<ZElement>> {
    let g = &datum.gradings[gi];
    let mut out = Vec::new();
    for (ei, (eta, child)) in g.etas.iter().zip(children).enumerate() {
        let cgi = child.datum.grading_index(g.n).ok_or_else(|| {
            broken(
                "induction",
                format!("child {} lacks degree {}", child.datum.name, g.n),
            )
        })?;
        if !child.datum.leaf.rigid {
            return Err(broken(
                "induction",
                format!(
                    "child {} of orbit {} is not rigid",
                    child.datum.name, eta.orbit
                ),
            ));
        }
        for (ci, u) in child.gradings[cgi].z.iter().enumerate() {
            if matches!(u.origin, Origin::Induced { .. }) {
                continue;
            }
            let mut bad = None;
            let vector = u.vector.map_indices(|i| {
                eta.induce_index(i).unwrap_or_else(|| {
                    bad = Some(i);
                    0
                })
            });
            if let Some(i) = bad {
                return Err(broken("induction", format!("child index {i} has no image")));
            }
            out.push(ZElement {
                vector,
                kappa: Kappa {
                    orbit: eta.orbit.clone(),
                    ls: u.kappa.ls.clone(),
                },
                d: eta.d,
                origin: Origin::Induced {
                    eta: ei,
                    child_element: ci,
                },
            });
        }
    }
    out.sort_by_key(sort_key);
    Ok(out)
}

fn check_distinct(step: &str, z: &[ZElement]) -> Result<()> {
    for i in 0..z.len() {
        for j in 0..i {
            if z[i].vector == z[j].vector {
                return Err(broken(
                    step,
                    format!("{} and {} coincide", z[j].kappa, z[i].kappa),
                ));
            }
        }
    }
    Ok(())
}

/// Solves `c = bar(c) a` for `c` unitriangular with off-diagonal entries
/// in `v Z[v]`, supported where `d` strictly drops.
fn kl_c(a: &LMatrix, d: &[i64], labels: &[String]) -> Result<LMatrix> {
    let k = a.len();
    let mut c: LMatrix = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        LaurentPoly::one()
                    } else {
                        LaurentPoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    for i in 0..k {
        let mut js: Vec<usize> = (0..k).filter(|&j| d[j] < d[i]).collect();
        js.sort_by_key(|&j| -d[j]);
        for &j in &js {
            let mut rhs = a[i][j].clone();
            for m in 0..k {
                if d[j] < d[m] && d[m] < d[i] && !c[i][m].is_zero() && !a[m][j].is_zero() {
                    rhs = &rhs + &(&c[i][m].bar() * &a[m][j]);
                }
            }
            if rhs.bar() != -&rhs {
                return Err(broken(
                    "c-matrix",
                    format!(
                        "({}, {}): {} is not anti-invariant",
                        labels[i], labels[j], rhs
                    ),
                ));
            }
            c[i][j] = rhs.positive_part();
        }
    }
    for i in 0..k {
        for j in 0..k {
            let mut s = LaurentPoly::zero();
            for m in 0..k {
                s = &s + &(&c[i][m].bar() * &a[m][j]);
            }
            if s != c[i][j] {
                return Err(broken(
                    "c-matrix",
                    format!("bar(c) a != c at ({}, {})", labels[i], labels[j]),
                ));
            }
        }
    }
    Ok(c)
}

fn combine(coeffs: &[LaurentPoly], vs: &[KVector]) -> KVector {
    let mut out = KVector::zero();
    for (c, v) in coeffs.iter().zip(vs) {
        if !c.is_zero() {
            out = out.axpy(&RatFunc::from_laurent(c), v);
        }
    }
    out
}

fn prime_stage(pairing: &Pairing, z: Vec<ZElement>) -> Result<PrimeStage> {
    check_distinct("disjointness of Z'", &z)?;
    let labels: Vec<String> = z.iter().map(|x| x.kappa.to_string()).collect();
    let vs: Vec<KVector> = z.iter().map(|x| x.vector.clone()).collect();
    let k = z.len();
    let gram = pairing.gram_of(&vs);
    let bars: Vec<Vec<RatFunc>> = vs.iter().map(|x| pairing.row(&x.bar())).collect();
    // B^T[j][i] = (beta(xi_i) : xi_j)
    let bt = RFMatrix::from_fn(k, k, |j, i| {
        let mut acc = RatFunc::zero();
        for (t, c) in vs[j].iter() {
            acc = &acc + &(&bars[i][t] * c);
        }
        acc
    });
    let at = solve("a-matrix", &gram, &bt)?;
    let a = certify("a-matrix", &at.transpose(), &labels, &labels)?;
    for i in 0..k {
        if !a[i][i].is_one() {
            return Err(broken(
                "a-matrix",
                format!("diagonal entry at {} is {}", labels[i], a[i][i]),
            ));
        }
        for j in 0..k {
            if i != j && !a[i][j].is_zero() && z[j].d >= z[i].d {
                return Err(broken(
                    "a-matrix",
                    format!(
                        "entry ({}, {}) = {} violates the support condition",
                        labels[i], labels[j], a[i][j]
                    ),
                ));
            }
        }
    }
    let d: Vec<i64> = z.iter().map(|x| x.d).collect();
    let c = kl_c(&a, &d, &labels)?;
    let w: Vec<KVector> = c.iter().map(|row| combine(row, &vs)).collect();
    for (i, wi) in w.iter().enumerate() {
        if !pairing.in_radical(&wi.bar().sub(wi)) {
            return Err(broken(
                "bar invariance",
                format!("W at {} is not bar invariant", labels[i]),
            ));
        }
    }
    Ok(PrimeStage { z, gram, a, c, w })
}

/// Projection of `x` orthogonally to the span of `zs`, returning the
/// coefficients removed.
fn project_away(
    pairing: &Pairing,
    gram: &RFMatrix,
    zs: &[ZElement],
    x: &KVector,
) -> Result<(KVector, Vec<RatFunc>)> {
    let k = zs.len();
    if k == 0 {
        return Ok((x.clone(), Vec::new()));
    }
    let row = pairing.row(x);
    let rhs = RFMatrix::from_fn(k, 1, |j, _| {
        let mut acc = RatFunc::zero();
        for (t, c) in zs[j].vector.iter() {
            acc = &acc + &(&row[t] * c);
        }
        acc
    });
    let gamma = solve("projection", gram, &rhs)?;
    let mut y = x.clone();
    let mut coeffs = Vec::with_capacity(k);
    for j in 0..k {
        let g = gamma.get(j, 0).clone();
        y = y.axpy(&(-&g), &zs[j].vector);
        coeffs.push(g);
    }
    Ok((y, coeffs))
}

/// Scalar `l` with `x - l y` in the radical, if any.
fn proportional(pairing: &Pairing, x: &KVector, y: &KVector) -> Option<RatFunc> {
    let rx = pairing.row(x);
    let ry = pairing.row(y);
    let t = ry.iter().position(|c| !c.is_zero())?;
    let l = rx[t].checked_div(&ry[t])?;
    rx.iter().zip(&ry).all(|(a, b)| *a == &l * b).then_some(l)
}

struct TopStage {
    elements: Vec<ZElement>,
    /// For `Fourier` elements, the removed coefficients on `Z'_n`.
    gammas: Vec<Vec<RatFunc>>,
}

fn rigid_top(
    datum: &GradedDatum,
    pairing: &Pairing,
    gi: usize,
    here: &PrimeStage,
    there: &PrimeStage,
) -> Result<TopStage> {
    let g = &datum.gradings[gi];
    let open = g.open_orbit();
    let mut elements = Vec::new();
    let mut gammas = Vec::new();
    let mut ls_count = 0;
    for (k, wk) in there.w.iter().enumerate() {
        let (y, gamma) = project_away(pairing, &here.gram, &here.z, wk)?;
        if pairing.in_radical(&y) {
            continue;
        }
        let triv = g
            .constant_sheaf_word
            .is_some_and(|s| proportional(pairing, wk, &KVector::basis(s)).is_some());
        let ls = if triv {
            "triv".to_string()
        } else {
            ls_count += 1;
            format!("ls{ls_count}")
        };
        elements.push(ZElement {
            vector: y,
            kappa: Kappa {
                orbit: open.name.clone(),
                ls,
            },
            d: open.dim,
            origin: Origin::Fourier { source: k },
        });
        gammas.push(gamma);
    }
    for (e, cp) in datum.leaf.cprime.iter().enumerate() {
        let r = RatFunc::from_laurent(&cp.r_f)
            .inv()
            .ok_or_else(|| broken("leaf", "zero r_F"))?;
        elements.push(ZElement {
            vector: KVector::monomial(cp.s_f, r),
            kappa: Kappa {
                orbit: open.name.clone(),
                ls: cp.kappa_label.clone(),
            },
            d: open.dim,
            origin: Origin::Primitive { entry: e },
        });
        gammas.push(Vec::new());
    }
    Ok(TopStage { elements, gammas })
}

fn assemble(
    datum: &GradedDatum,
    pairing: &Pairing,
    gi: usize,
    prime: &PrimeStage,
    other_prime: &PrimeStage,
    top: TopStage,
) -> Result<GradingRun> {
    let g = &datum.gradings[gi];
    let mut all: Vec<(ZElement, usize)> = prime
        .z
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, z)| (z, i))
        .collect();
    let np = prime.z.len();
    for (k, z) in top.elements.iter().cloned().enumerate() {
        all.push((z, np + k));
    }
    all.sort_by(|a, b| sort_key(&a.0).cmp(&sort_key(&b.0)));
    let z: Vec<ZElement> = all.iter().map(|x| x.0.clone()).collect();
    check_distinct("disjointness of Z", &z)?;
    let labels: Vec<String> = z.iter().map(|x| x.kappa.to_string()).collect();
    let uniq: BTreeSet<&String> = labels.iter().collect();
    if uniq.len() != labels.len() {
        return Err(broken("labels", format!("repeated label in {labels:?}")));
    }
    let nz = z.len();
    // position in `z` of stage index
    let mut pos = vec![0; nz];
    for (p, (_, s)) in all.iter().enumerate() {
        pos[*s] = p;
    }
    let z_prime: Vec<usize> = (0..np).map(|i| pos[i]).collect();

    let mut c = vec![vec![RatFunc::zero(); nz]; nz];
    let mut w = vec![KVector::zero(); nz];
    for i in 0..np {
        for j in 0..np {
            c[pos[i]][pos[j]] = RatFunc::from_laurent(&prime.c[i][j]);
        }
        w[pos[i]] = prime.w[i].clone();
    }
    for (k, el) in top.elements.iter().enumerate() {
        let p = pos[np + k];
        c[p][p] = RatFunc::one();
        match el.origin {
            Origin::Fourier { source } => {
                for (j, gm) in top.gammas[k].iter().enumerate() {
                    c[p][pos[j]] = gm.clone();
                }
                w[p] = other_prime.w[source].clone();
            }
            _ => w[p] = el.vector.clone(),
        }
    }
    let c_rf = RFMatrix::from_fn(nz, nz, |i, j| c[i][j].clone());
    let c_matrix = certify("c-matrix", &c_rf, &labels, &labels)?;
    let vs: Vec<KVector> = z.iter().map(|x| x.vector.clone()).collect();
    for i in 0..nz {
        let diff = w[i].sub(&combine(&c_matrix[i], &vs));
        if !pairing.in_radical(&diff) {
            return Err(broken(
                "c-matrix",
                format!("W at {} does not expand through c", labels[i]),
            ));
        }
        if !pairing.in_radical(&w[i].bar().sub(&w[i])) {
            return Err(broken(
                "bar invariance",
                format!("W at {} is not bar invariant", labels[i]),
            ));
        }
    }

    let gram = pairing.gram_of(&vs);
    let nb = datum.dim();
    let rows: Vec<Vec<RatFunc>> = vs.iter().map(|x| pairing.row(x)).collect();
    let rhs = RFMatrix::from_fn(nz, nb, |j, s| rows[j][s].clone());
    let et = if nz == 0 {
        RFMatrix::zeros(0, nb)
    } else {
        solve("e-matrix", &gram, &rhs)?
    };
    let basis_labels: Vec<String> = datum.basis.iter().map(|b| b.label.clone()).collect();
    let e_matrix = certify("e-matrix", &et.transpose(), &basis_labels, &labels)?;
    for (s, row) in e_matrix.iter().enumerate() {
        let diff = KVector::basis(s).sub(&combine(row, &vs));
        if !pairing.in_radical(&diff) {
            return Err(broken(
                "e-matrix",
                format!("{} is not spanned by Z modulo the radical", basis_labels[s]),
            ));
        }
    }
    let weight_dims = e_matrix
        .iter()
        .map(|row| row.iter().map(LaurentPoly::eval_at_one).collect())
        .collect();

    Ok(GradingRun {
        n: g.n,
        open_orbit: g.open_orbit().name.clone(),
        z,
        z_prime,
        a_matrix: prime.a.clone(),
        c_matrix,
        w,
        e_matrix,
        weight_dims,
        leq: Vec::new(),
        l_table: Vec::new(),
        xi: Vec::new(),
    })
}

fn match_fourier(pairing: &Pairing, g0: &GradingRun, g1: &GradingRun) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(g0.z.len());
    for (i, wi) in g0.w.iter().enumerate() {
        let hits: Vec<usize> = (0..g1.z.len())
            .filter(|&j| pairing.in_radical(&wi.sub(&g1.w[j])))
            .collect();
        if hits.len() != 1 {
            return Err(broken(
                "fourier",
                format!(
                    "{} at n={} has {} partners at n={}",
                    g0.z[i].kappa,
                    g0.n,
                    hits.len(),
                    g1.n
                ),
            ));
        }
        out.push(hits[0]);
    }
    let img: BTreeSet<usize> = out.iter().copied().collect();
    if img.len() != g1.z.len() || out.len() != g1.z.len() {
        return Err(broken("fourier", "matching is not a bijection"));
    }
    Ok(out)
}

/// Cases (i)-(iii) of the order; `None` when the answer goes through the
/// Fourier partners.
fn base_leq(
    children: &[Arc<RunResult>],
    run: &GradingRun,
    closure: &BTreeSet<(String, String)>,
    i: usize,
    j: usize,
) -> Option<bool> {
    if i == j {
        return Some(true);
    }
    let (a, b) = (&run.z[i], &run.z[j]);
    if matches!(a.origin, Origin::Primitive { .. }) || matches!(b.origin, Origin::Primitive { .. })
    {
        return Some(false);
    }
    if a.kappa.orbit != b.kappa.orbit {
        return Some(closure.contains(&(a.kappa.orbit.clone(), b.kappa.orbit.clone())));
    }
    match (&a.origin, &b.origin) {
        (
            Origin::Induced {
                eta: e1,
                child_element: c1,
            },
            Origin::Induced {
                eta: e2,
                child_element: c2,
            },
        ) if e1 == e2 => {
            let child = &children[*e1];
            let cgi = child.datum.grading_index(run.n)?;
            Some(child.gradings[cgi].leq[*c1][*c2])
        }
        (Origin::Induced { .. }, _) | (_, Origin::Induced { .. }) => Some(false),
        _ => None,
    }
}

fn compute_order(
    result_parts: &mut [GradingRun; 2],
    datum: &GradedDatum,
    children: &[Vec<Arc<RunResult>>; 2],
    fourier: &[usize],
) -> Result<()> {
    let closures = [
        datum.gradings[0].closure_order(),
        datum.gradings[1].closure_order(),
    ];
    let mut base: Vec<Vec<Vec<Option<bool>>>> = Vec::new();
    for gi in 0..2 {
        let r = &result_parts[gi];
        let k = r.z.len();
        base.push(
            (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| base_leq(&children[gi], r, &closures[gi], i, j))
                        .collect()
                })
                .collect(),
        );
    }
    let inverse: Vec<usize> = {
        let mut inv = vec![0; fourier.len()];
        for (i, &j) in fourier.iter().enumerate() {
            inv[j] = i;
        }
        inv
    };
    for gi in 0..2 {
        let k = result_parts[gi].z.len();
        let partner = |i: usize| if gi == 0 { fourier[i] } else { inverse[i] };
        let mut leq = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                leq[i][j] = match base[gi][i][j] {
                    Some(b) => b,
                    None => base[1 - gi][partner(i)][partner(j)].ok_or_else(|| {
                        broken(
                            "order",
                            format!(
                                "Fourier partners of {} and {} are not induced",
                                result_parts[gi].z[i].kappa, result_parts[gi].z[j].kappa
                            ),
                        )
                    })?,
                };
            }
        }
        for i in 0..k {
            for j in 0..k {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(broken("order", "relation is not antisymmetric"));
                }
                for m in 0..k {
                    if leq[i][j] && leq[j][m] && !leq[i][m] {
                        return Err(broken("order", "relation is not transitive"));
                    }
                }
            }
        }
        result_parts[gi].leq = leq;
    }
    Ok(())
}

fn l_source(
    datum: &GradedDatum,
    children: &[Vec<Arc<RunResult>>; 2],
    runs: &[GradingRun; 2],
    fourier: &[usize],
    gi: usize,
    i: usize,
    depth: usize,
) -> Result<(usize, LaurentPoly)> {
    match &runs[gi].z[i].origin {
        Origin::Primitive { entry } => {
            let cp = &datum.leaf.cprime[*entry];
            Ok((cp.s_f, cp.r_f.clone()))
        }
        Origin::Induced { eta, child_element } => {
            let e = &datum.gradings[gi].etas[*eta];
            let child = &children[gi][*eta];
            let cgi = child.datum.grading_index(runs[gi].n).unwrap();
            let entry = &child.gradings[cgi].l_table[*child_element];
            let s = e
                .induce_index(entry.s)
                .ok_or_else(|| broken("l-table", "child s has no image"))?;
            Ok((s, entry.r.clone()))
        }
        Origin::Fourier { .. } => {
            if depth > 0 {
                return Err(broken("l-table", "Fourier partner is not induced"));
            }
            let j = if gi == 0 {
                fourier[i]
            } else {
                fourier.iter().position(|&x| x == i).unwrap()
            };
            l_source(datum, children, runs, fourier, 1 - gi, j, depth + 1)
        }
    }
}

fn compute_l_table(
    datum: &GradedDatum,
    children: &[Vec<Arc<RunResult>>; 2],
    runs: &mut [GradingRun; 2],
    fourier: &[usize],
) -> Result<()> {
    let mut tables = Vec::new();
    for gi in 0..2 {
        let r = &runs[gi];
        let k = r.z.len();
        let labels = r.labels();
        let c_rf = RFMatrix::from_fn(k, k, |i, j| RatFunc::from_laurent(&r.c_matrix[i][j]));
        let ct = c_rf.transpose();
        let mut table = Vec::with_capacity(k);
        for i in 0..k {
            let (s, rr) = l_source(datum, children, runs, fourier, gi, i, 0)?;
            let rinv = RatFunc::from_laurent(&rr)
                .inv()
                .ok_or_else(|| broken("l-table", "zero r"))?;
            let std_rf = RFMatrix::from_fn(k, 1, |j, _| {
                &rinv * &RatFunc::from_laurent(&r.e_matrix[s][j])
            });
            let standard: Vec<LaurentPoly> =
                certify("l-table", &std_rf, &labels, &[labels[i].clone()])?
                    .into_iter()
                    .map(|mut x| x.remove(0))
                    .collect();
            let can_rf = solve("l-table", &ct, &std_rf)?;
            let canonical: Vec<LaurentPoly> =
                certify("l-table", &can_rf, &labels, &[labels[i].clone()])?
                    .into_iter()
                    .map(|mut x| x.remove(0))
                    .collect();
            table.push(LEntry {
                s,
                r: rr,
                standard,
                canonical,
            });
        }
        tables.push(table);
    }
    runs[1].l_table = tables.pop().unwrap();
    runs[0].l_table = tables.pop().unwrap();
    Ok(())
}

pub(super) fn compute(engine: &Engine, datum: &Arc<GradedDatum>) -> Result<RunResult> {
    let pairing = Pairing::new(datum, engine.conventions().sign);
    let mut children: [Vec<Arc<RunResult>>; 2] = [Vec::new(), Vec::new()];
    for (gi, ch) in children.iter_mut().enumerate() {
        for eta in &datum.gradings[gi].etas {
            ch.push(engine.run(&eta.child)?);
        }
    }
    let mut primes = Vec::with_capacity(2);
    for (gi, ch) in children.iter().enumerate() {
        primes.push(prime_stage(&pairing, induced_elements(datum, gi, ch)?)?);
    }
    let mut tops = Vec::with_capacity(2);
    for gi in 0..2 {
        tops.push(if datum.leaf.rigid {
            rigid_top(datum, &pairing, gi, &primes[gi], &primes[1 - gi])?
        } else {
            TopStage {
                elements: Vec::new(),
                gammas: Vec::new(),
            }
        });
    }
    let t1 = tops.pop().unwrap();
    let t0 = tops.pop().unwrap();
    let a0 = assemble(datum, &pairing, 0, &primes[0], &primes[1], t0)?;
    let a1 = assemble(datum, &pairing, 1, &primes[1], &primes[0], t1)?;
    let mut runs = [a0, a1];
    let fourier = match_fourier(&pairing, &runs[0], &runs[1])?;
    for gi in 0..2 {
        for (i, z) in runs[gi].z.iter().enumerate() {
            let p = if gi == 0 {
                fourier[i]
            } else {
                fourier.iter().position(|&x| x == i).unwrap()
            };
            let other = &runs[1 - gi];
            match z.origin {
                Origin::Fourier { source } => {
                    if other.z_prime[source] != p {
                        return Err(broken(
                            "fourier",
                            format!("{} is not matched with its source", z.kappa),
                        ));
                    }
                }
                Origin::Primitive { entry } => {
                    if other.z[p].origin != (Origin::Primitive { entry }) {
                        return Err(broken(
                            "fourier",
                            format!("{} is not matched with itself", z.kappa),
                        ));
                    }
                }
                Origin::Induced { .. } => {}
            }
        }
    }
    compute_order(&mut runs, datum, &children, &fourier)?;
    compute_l_table(datum, &children, &mut runs, &fourier)?;
    for gi in 0..2 {
        let open_here = runs[gi].open_orbit.clone();
        let open_there = runs[1 - gi].open_orbit.clone();
        let xi: Vec<usize> = (0..runs[gi].z.len())
            .filter(|&i| {
                let p = if gi == 0 {
                    fourier[i]
                } else {
                    fourier.iter().position(|&x| x == i).unwrap()
                };
                runs[gi].z[i].kappa.orbit != open_here
                    && runs[1 - gi].z[p].kappa.orbit == open_there
            })
            .collect();
        runs[gi].xi = xi;
    }
    Ok(RunResult {
        datum: datum.clone(),
        conventions: engine.conventions(),
        pairing,
        gradings: runs,
        fourier,
        children,
    })
}
