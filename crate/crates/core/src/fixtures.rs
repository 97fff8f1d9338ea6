//! Built-in worked examples with their known answers.

use std::sync::Arc;

use crate::datum::{load_datum_str, Conventions, GradedDatum};
use crate::engine::RunResult;
use crate::error::{Error, Result};
use crate::type_a::{build_datum, TypeASpec};

/// Principal block of `Sp_4` with the grading of degree 2.
pub const SP4_JSON: &str = include_str!("../fixtures/sp4.json");

pub const EXAMPLES: [&str; 3] = ["a1", "a001", "sp4"];

pub fn example_datum(name: &str, conv: Conventions) -> Result<Arc<GradedDatum>> {
    match name {
        "a1" => build_datum(&"glq:0,1;n=1".parse::<TypeASpec>()?, conv),
        "a001" => build_datum(&"glq:0,0,1;n=1".parse::<TypeASpec>()?, conv),
        "sp4" => load_datum_str(SP4_JSON, conv),
        _ => Err(Error::Parse(format!(
            "unknown example {name}; expected one of {}",
            EXAMPLES.join(", ")
        ))),
    }
}

fn f_line(run: &RunResult, gi: usize) -> String {
    let g = &run.gradings[gi];
    let rows: Vec<String> = g
        .c_matrix
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    format!("f(n={}) = [{}]", g.n, rows.join(","))
}

/// The facts the example is known for, as computed by `run`.
pub fn computed_lines(name: &str, run: &RunResult) -> Vec<String> {
    match name {
        "a1" | "a001" => {
            let g = &run.gradings[0];
            let mut out = vec![
                format!("elements(n={}) = {}", g.n, g.labels().join(", ")),
                f_line(run, 0),
            ];
            for (s, row) in g.e_matrix.iter().enumerate() {
                let row: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                out.push(format!(
                    "e({}) = ({})",
                    run.datum.basis[s].label,
                    row.join(", ")
                ));
            }
            out
        }
        _ => {
            let g = &run.gradings[0];
            let labels = g.labels();
            let there = run.gradings[1].labels();
            let mut out = Vec::new();
            for (i, &j) in run.fourier.iter().enumerate() {
                out.push(format!("fourier {} -> {}", labels[i], there[j]));
            }
            let mut idx: Vec<usize> = (0..labels.len()).collect();
            idx.sort_by_key(|&i| g.leq[i].iter().filter(|&&b| b).count());
            idx.reverse();
            let chain = (1..idx.len()).all(|k| g.leq[idx[k - 1]][idx[k]]);
            let names: Vec<&str> = idx.iter().map(|&i| labels[i].as_str()).collect();
            out.push(if chain {
                format!("order {}", names.join(" < "))
            } else {
                "order is not a chain".to_string()
            });
            for (i, l) in g.l_table.iter().enumerate() {
                let terms: Vec<String> = idx
                    .iter()
                    .filter(|&&j| !l.canonical[j].is_zero())
                    .map(|&j| {
                        if l.canonical[j].is_one() {
                            format!("{}*", labels[j])
                        } else {
                            format!("({}){}*", l.canonical[j], labels[j])
                        }
                    })
                    .collect();
                out.push(format!("L[{}] = {}", labels[i], terms.join(" + ")));
            }
            let xi: Vec<&str> = g.xi.iter().map(|&i| labels[i].as_str()).collect();
            out.push(format!("xi(n={}) = {}", g.n, xi.join(", ")));
            out
        }
    }
}

/// The known values, in the format of [`computed_lines`].
pub fn expected_lines(name: &str) -> Vec<String> {
    let v: &[&str] = match name {
        "a1" => &[
            "elements(n=1) = [0:1]:triv, [0]+[1]:triv",
            "f(n=1) = [[1,v],[0,1]]",
            "e(0.1) = (0, 1)",
            "e(1.0) = (1, v)",
        ],
        "a001" => &[
            "elements(n=1) = [0]+[0:1]:triv, [0]+[0]+[1]:triv",
            "f(n=1) = [[1,v^2],[0,1]]",
            "e(0.0.1) = (0, v^-1+v)",
            "e(0.1.0) = (1, 1+v^2)",
            "e(1.0.0) = (v^-1+v, v+v^3)",
        ],
        "sp4" => &[
            "fourier O3:ls1 -> O2:triv",
            "fourier O3:triv -> O0:triv",
            "fourier O2:triv -> O3:ls1",
            "fourier O0:triv -> O3:triv",
            "order O0:triv < O2:triv < O3:triv < O3:ls1",
            "L[O3:ls1] = O3:triv* + O3:ls1*",
            "L[O3:triv] = O3:triv*",
            "L[O2:triv] = O0:triv* + O2:triv*",
            "L[O0:triv] = O0:triv*",
            "xi(n=2) = O2:triv, O0:triv",
        ],
        _ => &[],
    };
    v.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Engine;

    #[test]
    fn examples_match() {
        for name in EXAMPLES {
            let conv = Conventions::default();
            let d = example_datum(name, conv).unwrap();
            let r = Engine::new(conv).run(&d).unwrap();
            assert_eq!(computed_lines(name, &r), expected_lines(name), "{name}");
        }
    }
}
