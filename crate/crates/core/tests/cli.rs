use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cclone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cclone")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cclone-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn classify_reports_regime() {
    let out = cclone(&["classify", "2", "0", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "R^{2,0} on n=3: unary-non-trivial\n3 1\n0\n2\n");

    let out = cclone(&["--json", "classify", "1", "0", "2"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "boolean-monotone");
    assert_eq!(v["relation"]["tuples"], serde_json::json!([[0, 0], [0, 1], [1, 1]]));
}

#[test]
fn invalid_parameters_exit_two() {
    assert_eq!(cclone(&["classify", "0", "1", "3"]).status.code(), Some(2));
    assert_eq!(cclone(&["classify", "1", "2", "3"]).status.code(), Some(2));
    assert_eq!(cclone(&["enumerate", "no-such-class", "3"]).status.code(), Some(2));
    assert_eq!(cclone(&["verify", "5", "--budget", "4"]).status.code(), Some(2));
}

#[test]
fn verify_json_has_one_inclusion_per_row() {
    let out = cclone(&["--json", "verify", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let verdicts: Vec<&str> = row["candidates"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["verdict"].as_str().unwrap())
            .collect();
        assert_eq!(verdicts.iter().filter(|&&v| v == "included").count(), 1);
        assert!(verdicts.iter().all(|&v| v == "included" || v == "excluded"));
    }
}

#[test]
fn refute_emits_checkable_certificate() {
    let target = scratch("rho0.rel", "3 2\n0 0\n0 1\n0 2\n1 0\n1 1\n2 0\n2 2\n");
    let out = cclone(&["--json", "refute", "1", "1", "3", "--target", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    for field in ["clausal", "target", "witness", "violating_columns", "image_tuple", "preservation_check", "construction"] {
        assert!(v.get(field).is_some(), "missing {field}");
    }
    assert_eq!(v["preservation_check"], true);

    let designated = scratch("sigma.rel", "3 2\n0 0\n0 1\n1 0\n1 1\n1 2\n2 1\n2 2\n");
    let out = cclone(&["refute", "1", "1", "3", "--target", designated.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn preserves_pol_inv_round_trip() {
    let le = scratch("le.rel", "2 2\n0 0\n0 1\n1 1\n");
    let out = cclone(&["--json", "pol", "-k", "2", le.to_str().unwrap()]);
    let ops: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(ops.len(), 6);

    let min = scratch("min.op", "2 2\n0 0 0 1\n");
    let out = cclone(&["preserves", min.to_str().unwrap(), le.to_str().unwrap()]);
    assert_eq!(stdout(&out), "preserves\n");
    let neg = scratch("neg.op", "2 1\n1 0\n");
    let out = cclone(&["--json", "preserves", neg.to_str().unwrap(), le.to_str().unwrap()]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["preserves"], false);

    let out = cclone(&["--json", "inv", "-m", "1", neg.to_str().unwrap()]);
    let rels: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rels.len(), 2);
}

#[test]
fn clausal_build_and_complete() {
    let out = cclone(&["clausal", "build", "3 1 1 | 1 | 0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1 + 7);

    let specs = scratch("specs.txt", "# two clauses\n3 1 1 | 1 | 0\n3 2 1 | 1 2 | 1\n");
    let out = cclone(&["--json", "complete", "--specs", specs.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["complete"], false);
}
