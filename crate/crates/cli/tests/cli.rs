use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triharmonic"))
        .args(args)
        .env_remove("TRIHARMONIC_PRECISION_CAP")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("triharmonic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn exponents_single_row() {
    let out = run(&["exponents", "--n", "15"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema_version"], 1);
    let row = &doc["rows"][0]["exponents"];
    assert_eq!(row["pc"]["kind"], "enclosed");
    assert!((row["pc"]["approx"].as_f64().unwrap() - 6158.3156).abs() < 1e-3);
    assert_eq!(row["pm"]["kind"], "infinite");
}

#[test]
fn exponents_range_below_threshold_is_infinite() {
    let doc = json(&run(&["exponents", "--n-range", "7:14"]));
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r["exponents"]["pc"]["kind"] == "infinite"));
}

#[test]
fn exponents_csv() {
    let out = run(&["exponents", "--n", "31", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("n,serrin,sobolev,pc,pm"));
    assert!(lines[1].starts_with("31,31/25,37/25,"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["exponents", "--n", "3"]).status.code(), Some(64));
    assert_eq!(run(&["exponents", "--n-range", "20:10"]).status.code(), Some(64));
    assert_eq!(run(&["coeffs", "--n", "15", "--p", "3", "--k", "3"]).status.code(), Some(64));
    assert_eq!(run(&["certify", "--lemma", "no-such-claim"]).status.code(), Some(64));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
}

#[test]
fn coeffs_from_p_and_k_agree() {
    let a = json(&run(&["coeffs", "--n", "15", "--p", "3"]));
    let b = json(&run(&["coeffs", "--n", "15", "--k", "3"]));
    assert_eq!(a, b);
    assert_eq!(a["coefficients"]["k0"], "50400");
    assert_eq!(a["singular_stability"], "unstable");
}

#[test]
fn certify_single_claim_and_tamper() {
    let out = run(&["certify", "--lemma", "d0-identity"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["status"], "verified");
    assert_eq!(doc["certificates"].as_array().unwrap().len(), 1);

    let tampered = run(&["certify", "--lemma", "a2-factorization", "--n-max", "20", "--tamper", "demo"]);
    assert_eq!(tampered.status.code(), Some(1));
    assert_eq!(json(&tampered)["status"], "falsified");
}

#[test]
fn certify_io_failure_exits_74() {
    let out = run(&["certify", "--lemma", "d0-identity", "--out", "/nonexistent-dir/bundle.json"]);
    assert_eq!(out.status.code(), Some(74));
}

#[test]
fn certify_is_deterministic() {
    let args = ["certify", "--lemma", "c-positivity-scan", "--n-max", "20"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn monotonicity_report() {
    let out = run(&["monotonicity", "--n", "12", "--p", "4", "--profile", "gaussian", "--lmode", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["consistent_formulas"], serde_json::json!(["delta-reading"]));
}

#[test]
fn divergent_profile_exits_65() {
    let out = run(&["monotonicity", "--n", "12", "--p", "4", "--profile", "power", "--shape", "10"]);
    assert_eq!(out.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&out.stderr).contains("divergent"));
}

#[test]
fn radial_then_pohozaev() {
    let file = tmp("profile.json");
    let path = file.to_str().unwrap();
    let out = run(&["radial", "--n", "15", "--p", "7", "--u0", "1", "--out", path]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["pohozaev", "--profile-file", path, "--R", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let rel = json(&out)["pohozaev"]["relative_residual"].as_f64().unwrap();
    assert!(rel < 1e-6, "{rel}");
}

#[test]
fn pohozaev_bad_inputs() {
    assert_eq!(run(&["pohozaev", "--profile-file", "/nonexistent-profile.json", "--R", "2"]).status.code(), Some(74));
    let file = tmp("bad.json");
    std::fs::write(&file, "{\"garbage\": 1}").unwrap();
    let out = run(&["pohozaev", "--profile-file", file.to_str().unwrap(), "--R", "2"]);
    assert_eq!(out.status.code(), Some(65));
}
