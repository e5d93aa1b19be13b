use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lab(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intensity-lab"))
        .args(args)
        .env("INTENSITY_LAB_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn write_spec(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn analyze_yo() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "yo.json", r#"{"kind":"yo"}"#);
    let r = json(&lab(dir.path(), &["analyze", &spec]));
    assert_eq!(r["schemaVersion"], 1);
    assert_eq!(r["result"]["class"], 4);
    assert_eq!(r["result"]["widths"], serde_json::json!([2, 1, 2, 1]));
    assert_eq!(r["result"]["predicates"]["kappaGroup"], true);
    assert_eq!(r["result"]["predicates"]["regular"], false);
}

#[test]
fn analyze_cyclic_and_sn() {
    let dir = tempfile::tempdir().unwrap();
    let z3 = write_spec(dir.path(), "z3.json", r#"{"kind":"abelian","p":3,"type":[1]}"#);
    assert_eq!(json(&lab(dir.path(), &["analyze", &z3]))["result"]["class"], 1);
    let sn = write_spec(dir.path(), "sn.json", r#"{"kind":"sn_delta","p":5,"M":2}"#);
    let r = json(&lab(dir.path(), &["analyze", &sn]));
    assert_eq!(r["result"]["predicates"]["obelisk"], true);
    assert_eq!(r["result"]["predicates"]["framed"], true);
}

#[test]
fn intensity_examples() {
    let dir = tempfile::tempdir().unwrap();
    for (spec, expected) in [
        (r#"{"kind":"yo"}"#, 2),
        (r#"{"kind":"abelian","p":5,"type":[2]}"#, 4),
        (r#"{"kind":"semidirect_cyclic","n":4,"m":2,"u":3}"#, 1),
    ] {
        let path = write_spec(dir.path(), "g.json", spec);
        let r = json(&lab(dir.path(), &["intensity", &path]));
        assert_eq!(r["result"]["intensity"], expected, "{spec}");
    }
}

#[test]
fn reports_are_deterministic_across_threads_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "h.json", r#"{"kind":"extraspecial","p":5,"n":1,"exponent":"p"}"#);
    let first = lab(dir.path(), &["intensity", &spec, "--threads", "1"]);
    let second = lab(dir.path(), &["intensity", &spec]);
    assert!(first.status.success() && second.status.success());
    assert_eq!(first.stdout, second.stdout);
    let a = lab(dir.path(), &["analyze", &spec, "--seed", "7"]);
    let b = lab(dir.path(), &["analyze", &spec, "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn subgroups_and_markdown_output() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "yo.json", r#"{"kind":"yo"}"#);
    let r = json(&lab(dir.path(), &["subgroups", &spec, "--classes-only"]));
    assert_eq!(r["result"]["subgroupCount"], 373);
    assert_eq!(r["result"]["classCount"], 53);
    assert!(r["result"]["subgroups"].is_null());

    let out = dir.path().join("report.md");
    let status = lab(dir.path(), &["analyze", &spec, "--format", "markdown", "-o", out.to_str().unwrap()]);
    assert!(status.status.success());
    let md = std::fs::read_to_string(out).unwrap();
    assert!(md.starts_with("# intensity-lab analyze"));
    assert!(md.contains("| class | 4 |"));
}

#[test]
fn kappa_structures_command() {
    let dir = tempfile::tempdir().unwrap();
    let r = json(&lab(dir.path(), &["kappa-structures"]));
    assert_eq!(r["result"]["kappa_structures"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_spec(dir.path(), "bad.json", r#"{"kind":"yo","extra":1}"#);
    assert_eq!(lab(dir.path(), &["analyze", &bad]).status.code(), Some(4));
    let missing = dir.path().join("missing.json");
    assert_eq!(lab(dir.path(), &["analyze", missing.to_str().unwrap()]).status.code(), Some(4));
    assert_eq!(lab(dir.path(), &["no-such-command"]).status.code(), Some(4));
    let yo = write_spec(dir.path(), "yo.json", r#"{"kind":"yo"}"#);
    assert_eq!(lab(dir.path(), &["analyze", &yo, "--max-order", "100"]).status.code(), Some(3));
    assert_eq!(lab(dir.path(), &["subgroups", &yo, "--max-subgroups", "10"]).status.code(), Some(3));
}

#[test]
fn verify_only_kappa() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(dir.path(), &["verify-thesis", "--only", "kappa"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("crit6-kappa-certificate"));
    assert!(text.contains("1 checks: 1 passed"));
    assert!(!text.contains("structure_analysis"));
}

#[test]
fn verify_strict_with_no_budget_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(dir.path(), &["verify-thesis", "--strict", "--budget-minutes", "0", "--only", "ring"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("SKIPPED(budget)"));
    let lenient = lab(dir.path(), &["verify-thesis", "--budget-minutes", "0", "--only", "ring"]);
    assert_eq!(lenient.status.code(), Some(0));
}

#[test]
fn verify_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verify.json");
    let out = lab(dir.path(), &["verify-thesis", "--only", "ring", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(r["result"]["passed"], true);
    assert!(r["result"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "PASS" && c["reference"].is_string()));
}

#[test]
fn cache_round_trip_and_clear() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "yo.json", r#"{"kind":"yo"}"#);
    let cold = lab(dir.path(), &["analyze", &spec]);
    let entries = || {
        std::fs::read_dir(dir.path())
            .unwrap()
            .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "igrp"))
            .count()
    };
    assert_eq!(entries(), 1);
    let warm = lab(dir.path(), &["analyze", &spec]);
    assert_eq!(cold.stdout, warm.stdout);
    let cleared = lab(dir.path(), &["cache", "clear"]);
    assert!(cleared.status.success());
    assert_eq!(entries(), 0);
}
