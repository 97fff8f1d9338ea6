use std::path::PathBuf;
use std::process::{Command, Output};

use gic::exact::LaurentPoly;
use gic::report::from_csv;

fn gic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gic"))
        .args(args)
        .output()
        .unwrap()
}

fn gic_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gic"))
        .args(args)
        .env(key, val)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn sp4_path() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures/sp4.json")
        .to_string_lossy()
        .into_owned()
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(
        gic(&["compute", "--gl", "glq:0,x;n=1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        gic(&["compute", "--datum", "/nonexistent/d.json"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        gic(&["validate", "--datum", "/nonexistent/d.json"])
            .status
            .code(),
        Some(1)
    );
    let o = gic(&["compute", "--gl", "glq:0,1;n=1", "--n", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn csv_output() {
    let o = gic(&[
        "compute",
        "--gl",
        "glq:0,1;n=1",
        "--format",
        "csv",
        "--n",
        "1",
    ]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("[0:1]:triv,1,v"), "{s}");
    assert!(s.contains("matrix,e,1"), "{s}");
}

#[test]
fn json_output_and_negative_degree() {
    let o = gic(&["compute", "--gl", "glq:0,1;n=1", "--n", "-1"]);
    assert!(o.status.success());
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let gs = j["gradings"].as_array().unwrap();
    assert_eq!(gs.len(), 1);
    assert_eq!(gs[0]["n"], -1);
}

#[test]
fn csv_agrees_with_json() {
    let spec = "glq:0,0,1;n=1";
    let j: serde_json::Value =
        serde_json::from_str(&stdout(&gic(&["compute", "--gl", spec]))).unwrap();
    let mats = from_csv(&stdout(&gic(&["compute", "--gl", spec, "--format", "csv"]))).unwrap();
    for g in j["gradings"].as_array().unwrap() {
        let n = g["n"].as_i64().unwrap();
        let f = mats.iter().find(|m| m.name == "f" && m.n == n).unwrap();
        let want: Vec<Vec<LaurentPoly>> = g["f_matrix"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| {
                r.as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.as_str().unwrap().parse().unwrap())
                    .collect()
            })
            .collect();
        let got: Vec<Vec<LaurentPoly>> = f
            .rows
            .iter()
            .map(|(_, r)| r.iter().map(|x| x.parse().unwrap()).collect())
            .collect();
        assert_eq!(got, want);
    }
}

#[test]
fn out_writes_file() {
    let path = std::env::temp_dir().join(format!("gic_cli_{}.json", std::process::id()));
    let o = gic(&[
        "compute",
        "--gl",
        "glq:0,1;n=1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.contains("\"f_matrix\""));
}

#[test]
fn sp4_fixture_from_file() {
    let p = sp4_path();
    assert!(gic(&["validate", "--datum", &p]).status.success());
    let o = gic(&["compute", "--datum", &p, "--n", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("O3:ls1"));
}

#[test]
fn examples_match() {
    for name in ["a1", "a001", "sp4"] {
        let o = gic(&["example", name]);
        assert!(o.status.success(), "{name}: {}", stdout(&o));
    }
}

#[test]
fn oracle_subcommand() {
    let o = gic(&["oracle", "--kl", "1,2,3,4", "3,4,1,2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1+q"));
    assert!(gic(&["oracle", "--gl", "glq:0,1,2;n=1"]).status.success());
}

#[test]
fn selftest_small_and_capped() {
    assert!(gic(&["selftest", "--depth", "2"]).status.success());
    let o = gic_env(
        &["selftest", "--depth", "3", "--no-oracles"],
        "GIC_MAX_DIM",
        "2",
    );
    assert!(o.status.success());
    assert!(stdout(&o).contains("skipped"));
}

#[test]
fn printed_sign_convention_runs() {
    let o = gic(&[
        "--sign-convention",
        "printed",
        "compute",
        "--gl",
        "glq:0,1;n=1",
    ]);
    assert!(o.status.success());
}
