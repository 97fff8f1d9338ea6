//! Serialisation of runs as JSON or CSV. Polynomials are written in the
//! compact text form (`v^-1+v`), so both encodings agree entry by entry.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::datum::Conventions;
use crate::engine::{GradingRun, Origin, RunResult};
use crate::error::{Error, Result};
use crate::exact::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementReport {
    pub label: String,
    pub orbit: String,
    pub local_system: String,
    pub d: i64,
    pub origin: String,
    /// Nonzero coordinates on the standard basis: basis label, coefficient.
    pub vector: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LReport {
    pub label: String,
    pub s: String,
    pub r: String,
    pub standard: Vec<String>,
    pub canonical: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingReport {
    pub n: i64,
    pub open_orbit: String,
    pub elements: Vec<ElementReport>,
    /// Labels of the induced elements, in the order of `a_matrix`.
    pub z_prime: Vec<String>,
    pub a_matrix: Vec<Vec<String>>,
    /// Rows: bar-invariant elements; columns: `elements`.
    pub f_matrix: Vec<Vec<String>>,
    /// Rows: basis elements; columns: `elements`.
    pub e_matrix: Vec<Vec<String>>,
    pub weight_dims: Vec<Vec<String>>,
    /// Strict relations `a < b` of the partial order.
    pub order: Vec<(String, String)>,
    pub l_table: Vec<LReport>,
    pub xi: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub datum: String,
    pub conventions: Conventions,
    pub basis: Vec<String>,
    pub gradings: Vec<GradingReport>,
    /// Pairs `(label at n, label at -n)` for the first grading.
    pub fourier: Vec<(String, String)>,
}

fn strings(m: &[Vec<LaurentPoly>]) -> Vec<Vec<String>> {
    m.iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

fn grading_report(run: &RunResult, gr: &GradingRun) -> GradingReport {
    let basis = &run.datum.basis;
    let labels = gr.labels();
    let elements = gr
        .z
        .iter()
        .map(|z| ElementReport {
            label: z.kappa.to_string(),
            orbit: z.kappa.orbit.clone(),
            local_system: z.kappa.ls.clone(),
            d: z.d,
            origin: match &z.origin {
                Origin::Induced { eta, child_element } => format!("induced:{eta}:{child_element}"),
                Origin::Fourier { source } => format!("fourier:{source}"),
                Origin::Primitive { entry } => format!("primitive:{entry}"),
            },
            vector: z
                .vector
                .iter()
                .map(|(i, c)| (basis[i].label.clone(), c.to_string()))
                .collect(),
        })
        .collect();
    let mut order = Vec::new();
    for (i, row) in gr.leq.iter().enumerate() {
        for (j, &le) in row.iter().enumerate() {
            if le && i != j {
                order.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    GradingReport {
        n: gr.n,
        open_orbit: gr.open_orbit.clone(),
        elements,
        z_prime: gr.z_prime.iter().map(|&i| labels[i].clone()).collect(),
        a_matrix: strings(&gr.a_matrix),
        f_matrix: strings(&gr.c_matrix),
        e_matrix: strings(&gr.e_matrix),
        weight_dims: gr
            .weight_dims
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect(),
        order,
        l_table: gr
            .l_table
            .iter()
            .zip(&labels)
            .map(|(l, lab)| LReport {
                label: lab.clone(),
                s: basis[l.s].label.clone(),
                r: l.r.to_string(),
                standard: l.standard.iter().map(|x| x.to_string()).collect(),
                canonical: l.canonical.iter().map(|x| x.to_string()).collect(),
            })
            .collect(),
        xi: gr.xi.iter().map(|&i| labels[i].clone()).collect(),
    }
}

/// Report of `run`, restricted to degree `n` if given.
pub fn build_report(run: &RunResult, n: Option<i64>) -> Result<Report> {
    let gradings: Vec<GradingReport> = match n {
        None => run
            .gradings
            .iter()
            .map(|g| grading_report(run, g))
            .collect(),
        Some(n) => {
            let g = run.grading(n).ok_or_else(|| {
                Error::DatumInvalid(format!("{} has no grading n={n}", run.datum.name))
            })?;
            vec![grading_report(run, g)]
        }
    };
    let (l0, l1) = (run.gradings[0].labels(), run.gradings[1].labels());
    Ok(Report {
        datum: run.datum.name.clone(),
        conventions: run.conventions,
        basis: run.datum.basis.iter().map(|b| b.label.clone()).collect(),
        gradings,
        fourier: run
            .fourier
            .iter()
            .enumerate()
            .map(|(i, &j)| (l0[i].clone(), l1[j].clone()))
            .collect(),
    })
}

pub fn to_json(report: &Report) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

/// A labelled matrix as written to CSV.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsvMatrix {
    pub name: String,
    pub n: i64,
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<String>)>,
}

/// The f-, e- and weight-dimension matrices of every grading in the report.
pub fn csv_matrices(report: &Report) -> Vec<CsvMatrix> {
    let mut out = Vec::new();
    for g in &report.gradings {
        let cols: Vec<String> = g.elements.iter().map(|e| e.label.clone()).collect();
        let with_rows = |name: &str, labels: &[String], m: &[Vec<String>]| CsvMatrix {
            name: name.to_string(),
            n: g.n,
            columns: cols.clone(),
            rows: labels.iter().cloned().zip(m.iter().cloned()).collect(),
        };
        out.push(with_rows("f", &cols, &g.f_matrix));
        out.push(with_rows("e", &report.basis, &g.e_matrix));
        out.push(with_rows("weight_dims", &report.basis, &g.weight_dims));
    }
    out
}

/// Each matrix is a header record `matrix,<name>,<n>`, a record of column
/// labels behind an empty cell, then one record per row.
pub fn to_csv(report: &Report) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Parse(e.to_string());
    for m in csv_matrices(report) {
        w.write_record(["matrix", &m.name, &m.n.to_string()])
            .map_err(csv_err)?;
        let mut head = vec![String::new()];
        head.extend(m.columns.iter().cloned());
        w.write_record(&head).map_err(csv_err)?;
        for (label, row) in &m.rows {
            let mut rec = vec![label.clone()];
            rec.extend(row.iter().cloned());
            w.write_record(&rec).map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// Inverse of [`to_csv`]. Entries are checked to parse as polynomials.
pub fn from_csv(text: &str) -> Result<Vec<CsvMatrix>> {
    let mut r = csv::ReaderBuilder::new()
        .flexible(true)
        .has_headers(false)
        .from_reader(text.as_bytes());
    let mut out: Vec<CsvMatrix> = Vec::new();
    let mut expect_columns = false;
    for rec in r.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let fields: Vec<String> = rec.iter().map(str::to_string).collect();
        if fields.first().map(String::as_str) == Some("matrix") && fields.len() == 3 {
            let n = fields[2]
                .parse()
                .map_err(|_| Error::Parse(format!("bad degree {}", fields[2])))?;
            out.push(CsvMatrix {
                name: fields[1].clone(),
                n,
                columns: Vec::new(),
                rows: Vec::new(),
            });
            expect_columns = true;
            continue;
        }
        let m = out
            .last_mut()
            .ok_or_else(|| Error::Parse("record before the first matrix header".into()))?;
        if expect_columns {
            m.columns = fields[1..].to_vec();
            expect_columns = false;
            continue;
        }
        let entries = fields[1..].to_vec();
        if entries.len() != m.columns.len() {
            return Err(Error::Parse(format!(
                "row {} of {} has the wrong length",
                fields[0], m.name
            )));
        }
        for e in &entries {
            e.parse::<LaurentPoly>()?;
        }
        m.rows.push((fields[0].clone(), entries));
    }
    Ok(out)
}

/// Plain-text summary used by the `example` command.
pub fn render_summary(report: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "datum {}", report.datum);
    for g in &report.gradings {
        let _ = writeln!(s, "n = {}", g.n);
        let labels: Vec<&str> = g.elements.iter().map(|e| e.label.as_str()).collect();
        let _ = writeln!(s, "  elements: {}", labels.join(", "));
        let _ = writeln!(s, "  f-matrix:");
        for (l, row) in labels.iter().zip(&g.f_matrix) {
            let _ = writeln!(s, "    {l}: [{}]", row.join(", "));
        }
        for (a, b) in &g.order {
            let _ = writeln!(s, "  {a} < {b}");
        }
        for l in &g.l_table {
            let terms: Vec<String> = l
                .canonical
                .iter()
                .zip(&labels)
                .filter(|(c, _)| c.as_str() != "0")
                .map(|(c, lab)| {
                    if c == "1" {
                        format!("{lab}*")
                    } else {
                        format!("({c}){lab}*")
                    }
                })
                .collect();
            let _ = writeln!(s, "  L[{}] = {}", l.label, terms.join(" + "));
        }
        let _ = writeln!(s, "  xi: {}", g.xi.join(", "));
    }
    for (a, b) in &report.fourier {
        let _ = writeln!(s, "fourier {a} -> {b}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Engine;
    use crate::type_a::{build_datum, TypeASpec};

    fn report(spec: &str) -> Report {
        let spec: TypeASpec = spec.parse().unwrap();
        let d = build_datum(&spec, Conventions::default()).unwrap();
        let r = Engine::new(Conventions::default()).run(&d).unwrap();
        build_report(&r, None).unwrap()
    }

    #[test]
    fn csv_round_trip() {
        let rep = report("glq:0,0,1;n=1");
        let text = to_csv(&rep).unwrap();
        assert_eq!(from_csv(&text).unwrap(), csv_matrices(&rep));
    }

    #[test]
    fn json_round_trip() {
        let rep = report("glq:0,1;n=1");
        let text = to_json(&rep).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rep);
        assert_eq!(
            rep.gradings[0].f_matrix,
            vec![vec!["1", "v"], vec!["0", "1"]]
        );
    }

    #[test]
    fn restricts_to_one_degree() {
        let spec: TypeASpec = "glq:0,1;n=1".parse().unwrap();
        let d = build_datum(&spec, Conventions::default()).unwrap();
        let r = Engine::new(Conventions::default()).run(&d).unwrap();
        assert_eq!(build_report(&r, Some(-1)).unwrap().gradings[0].n, -1);
        assert!(build_report(&r, Some(3)).is_err());
    }
}
