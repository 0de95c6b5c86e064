use std::path::PathBuf;
use std::process::{Command, Output};

fn fpdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpdist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn demo_config() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/demo.json")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn coverage_reports_missing_elements() {
    let out = fpdist(&["coverage", "--p", "7", "--set", "0,1", "--expr", "Delta(A^5)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["covered"], false);
    assert_eq!(v["missing"]["elements"], serde_json::json!([6]));
}

#[test]
fn run_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = demo_config();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let csv = dir.path().join(format!("out{i}.csv"));
        let js = dir.path().join(format!("out{i}.json"));
        let out = fpdist(&[
            "run",
            config.to_str().unwrap(),
            "--csv",
            csv.to_str().unwrap(),
            "--json",
            js.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        outputs.push((std::fs::read(csv).unwrap(), std::fs::read(js).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
    let csv = String::from_utf8(outputs[0].0.clone()).unwrap();
    assert!(csv.starts_with("# fpdist report v1\n"));
    assert_eq!(csv.lines().count(), 2 + 108);
}

#[test]
fn config_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"primes": [8], "generators": [], "checks": []}"#).unwrap();
    assert_eq!(fpdist(&["run", bad.to_str().unwrap()]).status.code(), Some(3));
    std::fs::write(&bad, r#"{"primes": [7], "unknown": 1}"#).unwrap();
    assert_eq!(fpdist(&["run", bad.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(fpdist(&["run", "/nonexistent/config.json"]).status.code(), Some(3));
    assert_eq!(fpdist(&["coverage", "--p", "9", "--set", "1"]).status.code(), Some(3));
    assert_eq!(fpdist(&["coverage", "--p", "7", "--set", "1", "--expr", "B+"]).status.code(), Some(3));
    assert_eq!(fpdist(&["no-such-command"]).status.code(), Some(3));
    assert_eq!(fpdist(&["--help"]).status.code(), Some(0));
}

#[test]
fn construct_sweeps_every_lambda() {
    let out = fpdist(&["construct", "thm14", "--p", "11", "--set", "0,1,2", "--engine", "always"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["reports"].as_array().unwrap().len(), 11);
    assert_eq!(v["violations"], serde_json::json!([]));
}

#[test]
fn bounds_and_incidence_smoke() {
    let out = fpdist(&["bounds", "thm2", "--p", "31", "--gen", "random", "--size", "6", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["report"], "thm2");
    let out = fpdist(&["incidence", "hanson", "--p", "11", "--size", "20", "--rounds", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = fpdist(&["--out", "csv", "bounds", "variants", "--p", "13", "--set", "0,1,2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn scan_finds_a_threshold() {
    let out = fpdist(&["scan", "--p", "31", "--gen", "ap", "--expr", "(A-A)^2 + A^2 x4", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(json(&out)["minimal"].is_u64());
}
