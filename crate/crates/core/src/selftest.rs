//! Sweeps over the built-in fixtures and all small type-A data, running
//! validation, the engine, its invariants and the oracles on each.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::datum::{validate_datum, Conventions, Finding, GradedDatum};
use crate::engine::{check_run_tree, Engine, RunResult};
use crate::error::Error;
use crate::fixtures::{example_datum, EXAMPLES};
use crate::oracles::{check_e_against_counts, kl_cross_check, max_dim, orbit_dim_oracle};
use crate::type_a::orbits::multisegments;
use crate::type_a::{build_datum, GlFactor, TypeASpec};

#[derive(Clone, Debug)]
pub struct SelftestOptions {
    /// Largest total rank enumerated.
    pub depth: usize,
    pub degrees: Vec<i64>,
    pub primes: Vec<u64>,
    pub seed: u64,
    pub oracles: bool,
    pub conventions: Conventions,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            depth: 4,
            degrees: vec![1, 2],
            primes: vec![2, 3],
            seed: 0,
            oracles: true,
            conventions: Conventions::default(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SelftestReport {
    pub data: Vec<String>,
    /// Number of times each kind of check ran.
    pub checks: BTreeMap<String, usize>,
    pub findings: Vec<Finding>,
    /// Work skipped by a size guard, with the reason.
    pub skipped: Vec<String>,
    /// Findings of the Kazhdan-Lusztig comparison; informational.
    pub kl_findings: Vec<Finding>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }

    fn merge(&mut self, other: SelftestReport) {
        self.data.extend(other.data);
        for (k, v) in other.checks {
            *self.checks.entry(k).or_insert(0) += v;
        }
        self.findings.extend(other.findings);
        self.skipped.extend(other.skipped);
        self.kl_findings.extend(other.kl_findings);
    }

    fn count(&mut self, check: &str) {
        *self.checks.entry(check.to_string()).or_insert(0) += 1;
    }
}

/// Sorted weight multisets of size `m` with minimum 0 whose consecutive
/// distinct values differ by at most `step`. Every factor of `GL_m` with
/// integral weights is isomorphic to one of these; gaps of exactly `step`
/// beyond `|n|` repeat some classes with the chains relabelled.
fn factor_shapes(m: usize, step: i64) -> Vec<GlFactor> {
    fn rec(m: usize, step: i64, cur: &mut Vec<i64>, out: &mut Vec<GlFactor>) {
        if cur.len() == m {
            out.push(GlFactor::new(cur.clone()));
            return;
        }
        let last = *cur.last().unwrap();
        for w in last..=last + step {
            cur.push(w);
            rec(m, step, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        rec(m, step, &mut vec![0], &mut out);
    }
    out
}

fn partitions(r: usize, max: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=r.min(max)).rev() {
        for mut rest in partitions(r - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All type-A data of total rank `rank` in degree `n`, up to isomorphism
/// and reordering of factors.
pub fn enumerate_specs(rank: usize, n: i64) -> Vec<TypeASpec> {
    let mut out = Vec::new();
    for parts in partitions(rank, rank) {
        let shapes: Vec<Vec<GlFactor>> = parts
            .iter()
            .map(|&m| factor_shapes(m, n.abs() + 1))
            .collect();
        let mut choice: Vec<usize> = Vec::new();
        fn rec(
            parts: &[usize],
            shapes: &[Vec<GlFactor>],
            choice: &mut Vec<usize>,
            n: i64,
            out: &mut Vec<TypeASpec>,
        ) {
            let k = choice.len();
            if k == parts.len() {
                let factors = choice
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| shapes[i][c].weights().to_vec())
                    .collect();
                out.push(TypeASpec::new(factors, n));
                return;
            }
            let start = if k > 0 && parts[k] == parts[k - 1] {
                choice[k - 1]
            } else {
                0
            };
            for c in start..shapes[k].len() {
                choice.push(c);
                rec(parts, shapes, choice, n, out);
                choice.pop();
            }
        }
        rec(&parts, &shapes, &mut choice, n, &mut out);
    }
    out
}

/// Invariant and oracle checks on one type-A datum.
pub fn check_type_a(spec: &TypeASpec, engine: &Engine, opts: &SelftestOptions) -> SelftestReport {
    let mut rep = SelftestReport {
        data: vec![spec.to_string()],
        ..Default::default()
    };
    let name = spec.to_string();
    let datum = match build_datum(spec, opts.conventions) {
        Ok(d) => d,
        Err(e) => {
            rep.findings
                .push(Finding::new(&name, "build", e.to_string()));
            return rep;
        }
    };
    let Some(run) = run_common(&datum, engine, &mut rep) else {
        return rep;
    };

    for gr in &run.gradings {
        rep.count("xi-zero-orbit");
        let dims: Vec<i64> = gr.xi.iter().map(|&i| gr.z[i].d).collect();
        // when g_n = 0 the zero orbit is open and nothing qualifies
        let ok = if gr.z.len() == 1 {
            dims.is_empty()
        } else {
            dims == [0] && gr.z[gr.xi[0]].kappa.ls == "triv"
        };
        if !ok {
            rep.findings.push(Finding::new(
                &name,
                "xi",
                format!("n={}: xi has orbit dimensions {dims:?}", gr.n),
            ));
        }
        let sp = spec.with_n(gr.n);
        for ms in multisegments(&sp) {
            rep.count("orbit-dim-oracle");
            let want = orbit_dim_oracle(&sp, &ms);
            let got = datum.gradings[datum.grading_index(gr.n).unwrap()]
                .orbit(&ms.name())
                .map(|o| o.dim);
            if got != Some(want) {
                rep.findings.push(Finding::new(
                    &name,
                    "orbit-dim-oracle",
                    format!(
                        "n={}: {} has dimension {got:?}, oracle {want}",
                        gr.n,
                        ms.name()
                    ),
                ));
            }
        }
    }

    if opts.oracles {
        if spec.rank() > max_dim() {
            rep.skipped.push(format!(
                "{name}: point counts skipped, total rank {} exceeds GIC_MAX_DIM={}",
                spec.rank(),
                max_dim()
            ));
        } else {
            for &q in &opts.primes {
                rep.count("point-counts");
                match check_e_against_counts(spec, &run, q, opts.seed) {
                    Ok(f) => rep.findings.extend(f),
                    Err(Error::TooLarge(msg)) => rep.skipped.push(format!("{name} q={q}: {msg}")),
                    Err(e) => rep
                        .findings
                        .push(Finding::new(&name, "point-counts", e.to_string())),
                }
            }
        }
        let k = spec.rank() as i64;
        if spec.factors.len() == 1
            && spec.n.abs() == 1
            && spec.factors[0].weights().iter().copied().eq(0..k)
        {
            rep.count("kl-cross-check");
            rep.kl_findings.extend(kl_cross_check(spec, &run));
        }
    }
    rep
}

fn run_common(
    datum: &Arc<GradedDatum>,
    engine: &Engine,
    rep: &mut SelftestReport,
) -> Option<Arc<RunResult>> {
    rep.count("validate");
    let sign = engine.conventions().sign;
    rep.findings.extend(validate_datum(datum, sign));
    rep.count("engine");
    let run = match engine.run(datum) {
        Ok(r) => r,
        Err(e) => {
            rep.findings
                .push(Finding::new(&datum.name, "engine", e.to_string()));
            return None;
        }
    };
    rep.count("invariants");
    rep.findings.extend(check_run_tree(&run));
    Some(run)
}

/// The whole suite. Data are processed in parallel; the report lists them
/// in enumeration order regardless of scheduling.
pub fn run_selftest(opts: &SelftestOptions) -> SelftestReport {
    let engine = Engine::new(opts.conventions);
    let mut report = SelftestReport::default();
    for name in EXAMPLES {
        let mut rep = SelftestReport {
            data: vec![name.to_string()],
            ..Default::default()
        };
        match example_datum(name, opts.conventions) {
            Ok(d) => {
                run_common(&d, &engine, &mut rep);
            }
            Err(e) => rep
                .findings
                .push(Finding::new(name, "fixture", e.to_string())),
        }
        report.merge(rep);
    }
    let cap = opts.depth.min(max_dim());
    if opts.depth > cap {
        report.skipped.push(format!(
            "type-A data of total rank {}..={} skipped: above GIC_MAX_DIM={}",
            cap + 1,
            opts.depth,
            max_dim()
        ));
    }
    let mut specs = Vec::new();
    for &n in &opts.degrees {
        for r in 1..=cap {
            specs.extend(enumerate_specs(r, n));
        }
    }
    let parts: Vec<SelftestReport> = specs
        .par_iter()
        .map(|s| check_type_a(s, &engine, opts))
        .collect();
    for p in parts {
        report.merge(p);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_sizes() {
        // rank 2 with n = 1: {0,0}, {0,1}, {0,2} and {0}|{0}
        assert_eq!(enumerate_specs(2, 1).len(), 3 + 1);
        let specs = enumerate_specs(3, 2);
        let names: std::collections::BTreeSet<String> =
            specs.iter().map(|s| s.to_string()).collect();
        assert_eq!(names.len(), specs.len());
    }

    #[test]
    fn small_suite_passes() {
        let opts = SelftestOptions {
            depth: 2,
            ..Default::default()
        };
        let r = run_selftest(&opts);
        assert!(r.passed(), "{:?}", r.findings);
        assert!(r.checks["point-counts"] > 0);
    }
}
