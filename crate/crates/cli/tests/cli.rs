//! The `hyperquot` binary end to end: output shapes and exit codes.

use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn hyperquot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperquot")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const SIERPINSKI: &str = r#"{"labels": ["a", "b"], "opens": [[], [0], [0, 1]]}"#;
const LINE: &str = r#"{"coords": [[0], [1], [2]], "metric": "euclidean"}"#;

#[test]
fn enumerate_counts_and_formats() {
    for (n, count) in [("1", 1), ("2", 4), ("3", 29)] {
        let o = hyperquot(&["enumerate", "-n", n]);
        assert_eq!(code(&o), 0);
        assert_eq!(json(&o).as_array().unwrap().len(), count);
    }
    let csv = hyperquot(&["enumerate", "-n", "2", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 5);
    let pretty = hyperquot(&["enumerate", "-n", "2", "--format", "pretty"]);
    assert!(String::from_utf8(pretty.stdout).unwrap().contains("T0 T1 T2"));
    assert_eq!(code(&hyperquot(&["enumerate", "-n", "5"])), 2);
}

#[test]
fn enumerate_writes_to_a_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("tops.json");
    let o = hyperquot(&["enumerate", "-n", "3", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v[0]["t1"], true);
}

#[test]
fn verify_exit_codes() {
    let o = hyperquot(&["verify"]);
    assert_eq!(code(&o), 1);
    let report = json(&o);
    assert!(report["summary"]["counterexample"].as_u64().unwrap() > 0);

    let o = hyperquot(&["verify", "--checks", "upper_quotient,vietoris_join"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["summary"]["counterexample"], 0);

    assert_eq!(code(&hyperquot(&["verify", "--max-x", "0", "--max-y", "0"])), 0);
    assert_eq!(code(&hyperquot(&["verify", "--max-x", "4"])), 2);
    assert_eq!(code(&hyperquot(&["verify", "--checks", "no_such_check"])), 2);

    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{ not json");
    assert_eq!(code(&hyperquot(&["verify", "--explicit-f", &bad])), 2);
    let missing = dir.path().join("absent.json");
    assert_eq!(code(&hyperquot(&["verify", "--explicit-f", missing.to_str().unwrap()])), 2);
}

#[test]
fn verify_accepts_explicit_families_and_writes_reports() {
    let dir = TempDir::new().unwrap();
    let fam = format!(r#"[{{"space": {SIERPINSKI}, "y_size": 2, "all": true}}]"#);
    let f = write(&dir, "fam.json", &fam);
    let out = dir.path().join("report.csv");
    let o = hyperquot(&[
        "verify", "--max-x", "0", "--max-y", "0", "--explicit-f", &f, "--format", "csv", "-o", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stderr).unwrap().contains("verified="));
    let csv = fs::read_to_string(out).unwrap();
    assert!(csv.starts_with("check,"));
    assert!(csv.lines().skip(1).all(|l| !l.contains("counterexample")));
}

#[test]
fn verify_output_is_independent_of_threads() {
    let base = hyperquot(&["verify", "--max-x", "2"]).stdout;
    let seq = hyperquot(&["verify", "--max-x", "2", "--sequential"]).stdout;
    assert_eq!(base, seq);
    let one = Command::new(env!("CARGO_BIN_EXE_hyperquot"))
        .args(["verify", "--max-x", "2"])
        .env("HYPERQUOT_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(one.stdout, base);
    let zero = Command::new(env!("CARGO_BIN_EXE_hyperquot"))
        .args(["verify", "--max-x", "1"])
        .env("HYPERQUOT_THREADS", "0")
        .output()
        .unwrap();
    if cfg!(feature = "parallel") {
        assert_eq!(code(&zero), 2);
    }
}

#[test]
fn hausdorff_on_a_line() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "line.json", LINE);
    let o = hyperquot(&["hausdorff", "-m", &m, "-a", "0,1", "-b", "0,2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["d_h"], 1.0);
    assert_eq!(v["agree"], true);
    assert_eq!(v["variants"].as_object().unwrap().len(), 4);
    assert_eq!(code(&hyperquot(&["hausdorff", "-m", &m, "-a", "0", "-b", "7"])), 2);
    let matrix = write(&dir, "m.json", r#"{"labels": ["p", "q"], "dist": [[0, 2], [2, 0]]}"#);
    let o = hyperquot(&["hausdorff", "-m", &matrix, "-a", "0", "-b", "0,1"]);
    assert!(String::from_utf8(o.stdout).unwrap().contains("d_H = 2"));
}

#[test]
fn hyper_shows_carrier_and_topologies() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "s.json", SIERPINSKI);
    let carrier = hyperquot(&["hyper", "-s", &s, "-y", "2", "--show", "carrier", "--format", "json"]);
    assert_eq!(json(&carrier)["carrier"], serde_json::json!([[1], [0, 1]]));
    let v = hyperquot(&["hyper", "-s", &s, "-y", "2"]);
    let text = String::from_utf8(v.stdout).unwrap();
    assert!(text.starts_with("vietoris"));
    assert!(text.contains("opens: {} {{a,b}} {{b}, {a,b}}"));
    let q = hyperquot(&["hyper", "-s", &s, "-y", "2", "--show", "quotients", "--format", "json"]);
    assert_eq!(code(&q), 0);
    assert!(json(&q).get("product_quotient").is_some());
    assert_eq!(code(&hyperquot(&["hyper", "-s", &s, "-y", "0"])), 2);
    let bad = write(&dir, "bad.json", r#"{"labels": ["a"], "opens": [[0]]}"#);
    assert_eq!(code(&hyperquot(&["hyper", "-s", &bad, "-y", "1"])), 2);
}

#[cfg(feature = "fault-injection")]
#[test]
fn injected_fault_fails_the_run() {
    let o = hyperquot(&["verify", "--checks", "upper_quotient", "--inject-fault"]);
    assert_eq!(code(&o), 1);
}
