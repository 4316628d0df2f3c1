use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hgpade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgpade"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("system.json");
    let o = hgpade(&["build", "--n", "2", "--out", path(&sys)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = hgpade(&["verify", "--system", path(&sys)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
    assert!(v["checks_run"].as_u64().unwrap() > 0);
}

#[test]
fn corrupted_system_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("system.json");
    assert_eq!(code(&hgpade(&["build", "--n", "1", "--a", "1/3", "--b", "", "--alphas", "1", "--out", path(&sys)])), 0);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&sys).unwrap()).unwrap();
    let coeffs = v["p"][0]["coefficients"].as_array_mut().unwrap();
    coeffs[0] = Value::String("-4".into());
    std::fs::write(&sys, serde_json::to_string(&v).unwrap()).unwrap();
    let o = hgpade(&["verify", "--system", path(&sys), "--format", "text"]);
    assert_eq!(code(&o), 4, "{}", stdout(&o));
    assert!(stdout(&o).contains("FAILED"));
    assert!(stdout(&o).contains("ord R_{l,i,s} >= n+1"));
}

#[test]
fn zero_denominator_is_a_parse_error() {
    let o = hgpade(&["profile", "--a", "1/0", "--b", "1/2"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("--a"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn malformed_flag_values_exit_one() {
    for args in [
        &["build", "--n", "two"][..],
        &["criterion", "--beta", "1000000", "--n-range", "4..5"],
        &["criterion", "--beta", "x"],
        &["suite", "--level", "huge"],
        &["verify", "--system", "/nonexistent/system.json"],
    ] {
        let o = hgpade(args);
        assert_eq!(code(&o), 1, "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn hypothesis_violation_exits_two() {
    let o = hgpade(&["wronskian", "--a", "2,1/4", "--b", "1/2", "--n", "1"]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<&Value> = v["hypotheses"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|h| h["passed"] == Value::Bool(false))
        .collect();
    assert!(!failed.is_empty());

    let o = hgpade(&["criterion", "--a", "2,1/4", "--b", "1/2", "--beta", "1000000"]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
}

#[test]
fn wronskian_certifies_canonical_instance() {
    let o = hgpade(&["wronskian", "--n", "1", "--format", "text"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("CertifiedNonzero"));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = hgpade(&["wronskian", "--n", "1", "--full-chain", "--out", path(out)]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let x = stdout(&hgpade(&["build", "--n", "2"]));
    let y = stdout(&hgpade(&["build", "--n", "2"]));
    assert!(!x.is_empty());
    assert_eq!(x, y);
}

#[test]
fn csv_profile_has_one_row_per_index() {
    let o = hgpade(&["profile", "--a", "1/3", "--b", "1/2", "--n", "50", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), ["k", "d_k", "rate"]);
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), 51);
    assert_eq!(&rows[0][1], "1");
}

#[test]
fn profile_json_round_trips() {
    let o = hgpade(&["profile", "--a", "1/2", "--b", "1/3", "--n", "2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    let values: Vec<&str> = v["values"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(values, ["1", "2", "16"]);
    let again = serde_json::to_string_pretty(&v).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&again).unwrap(), v);
}

#[test]
fn system_json_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("s.json");
    assert_eq!(code(&hgpade(&["build", "--n", "1", "--out", path(&sys)])), 0);
    let first = std::fs::read_to_string(&sys).unwrap();
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["n"], Value::from(1));
    assert_eq!(v["alphas"], serde_json::json!(["1", "2"]));
    // wronskian reads the stored system and agrees with a fresh build
    let stored = stdout(&hgpade(&["wronskian", "--system", path(&sys)]));
    let fresh = stdout(&hgpade(&["wronskian", "--n", "1"]));
    assert_eq!(stored, fresh);
}

#[test]
fn config_file_supplies_missing_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"command": "profile", "a": "1/2", "b": "1/3", "n": 2, "format": "csv"}"#).unwrap();
    let o = hgpade(&["--config", path(&cfg)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 4);

    // flags win over the file
    let o = hgpade(&["--config", path(&cfg), "profile", "--n", "3"]);
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn eval_reports_enclosure() {
    let o = hgpade(&["eval", "--a", "1/3,1/4", "--b", "1/2", "--z", "1/10", "--bits", "128"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["error_log2"].as_f64().unwrap() <= -128.0);
    assert!(v["value"].as_str().unwrap().starts_with("1.0"));
    assert_eq!(v["family"].as_array().unwrap().len(), 2);
}

#[test]
fn suite_subset_reports_each_criterion() {
    let o = hgpade(&["suite", "--level", "quick", "--only", "7,5", "--format", "text"]);
    let out = stdout(&o);
    assert_eq!(code(&o), 0, "{out}");
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("[PASS]  7"), "{out}");
    assert!(lines[1].starts_with("[PASS]  5"), "{out}");
    assert_eq!(lines[2], "2 of 2 criteria passed");
}

#[test]
fn failing_criterion_exits_four() {
    let o = hgpade(&["suite", "--level", "quick", "--only", "6"]);
    assert_eq!(code(&o), 4);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], Value::Bool(false));
}
