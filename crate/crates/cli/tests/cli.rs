use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn conecert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conecert")).args(args).output().expect("spawn conecert")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}); stderr: {}", String::from_utf8_lossy(&out.stderr))
    })
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

const ZBAR1: &str = r#"{"n":2,"terms":[{"alpha":[0,0],"beta":[1,0],"coef":{"re":"1","im":"0"}}]}"#;
const Z1ZBAR1: &str = r#"{"n":2,"terms":[{"alpha":[1,0],"beta":[1,0],"coef":{"re":"1","im":"0"}}]}"#;

#[test]
fn certify_a3_up_to_bidegree_3_3() {
    let out = conecert(&["cone", "certify", "--a", "3", "--n", "2", "--pmax", "2", "--qmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["verdict"], "non-harmonic-up-to-degree(3,3)");
    assert_eq!(r["outcome"], "non-harmonic");
    assert!(r["kernels"].as_array().unwrap().iter().all(|k| k["dim"] == 0));
    assert!(r["config"].is_object());
}

#[test]
fn certify_over_budget_is_partial() {
    let out = conecert(&[
        "cone", "certify", "--a", "3", "--n", "2", "--pmax", "9", "--qmax", "9", "--max-dim", "20",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    assert_eq!(r["outcome"], "partial");
    assert!(r["verdict"].as_str().unwrap().starts_with("partial(resource limit)"));
}

#[test]
fn decompose_z1_zbar1() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "p.json", Z1ZBAR1);
    let out = conecert(&["poly", "decompose", "--input", &input]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let comps = r["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    // P_0 = z1 z̄1 − |z|²/2, P_1 = 1/2
    assert_eq!(comps[0]["terms"].as_array().unwrap().len(), 2);
    let c1 = &comps[1]["terms"][0]["coef"];
    assert_eq!(c1["re"], "1/2");
}

#[test]
fn weighted_mean_of_gaussian_vanishes() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w.json", ZBAR1);
    let out = conecert(&[
        "tsm", "mean", "--f", "laguerre:k=0,nu=1", "--weight", &w, "--z", "0.3,0.1,0.2,-0.4", "--r", "1.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let re = r["value"]["re"].as_f64().unwrap();
    let im = r["value"]["im"].as_f64().unwrap();
    assert!(re.hypot(im) < 1e-8, "{re} {im}");
    assert!(r["err_est"].as_f64().unwrap() < 1e-8);
}

#[test]
fn weighted_mean_in_three_variables() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w.json", r#"{"n":3,"terms":[{"alpha":[0,0,0],"beta":[1,0,0],"coef":{"re":"1","im":"0"}}]}"#);
    let out = conecert(&["tsm", "mean", "--f", "laguerre:k=0,nu=2", "--weight", &w, "--z", "0.1,0,0.2,0,0,0.3", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["rule"]["n"], 3);
    assert!(r["value"]["re"].as_f64().unwrap().abs() < 1e-8);
}

#[test]
fn unweighted_mean_of_constant_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "one.json", r#"{"n":2,"terms":[{"alpha":[0,0],"beta":[0,0],"coef":{"re":"1","im":"0"}}]}"#);
    let out = conecert(&["tsm", "mean", "--f", &format!("poly:{f}"), "--z", "0,0,0,0", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!((r["value"]["re"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn separability_check_passes_for_zbar1() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w.json", ZBAR1);
    let out = conecert(&["tsm", "check-lemma42", "--weight", &w, "--k", "1", "--radii", "0.5,1,1.5,2.5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r["separability_cv"].as_f64().unwrap() < 1e-6);
}

#[test]
fn demo_on_z1_zero_set() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w.json", ZBAR1);
    let out = conecert(&["tsm", "demo-noninjectivity", "--weight", &w, "--points", "z1-zero", "--count", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report(&out)["max_abs_mean"].as_f64().unwrap() < 1e-8);
}

#[test]
fn cone_sample_negative_a() {
    let out = conecert(&["cone", "sample", "--a", "-5/2", "--n", "2", "--count", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r["max_relative_residual"].as_f64().unwrap() < 1e-12);
    assert!(!r["points"].as_array().unwrap().is_empty());
}

#[test]
fn cone_sample_small_a_is_empty_with_reason() {
    let out = conecert(&["cone", "sample", "--a", "1", "--n", "2", "--count", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r["points"].as_array().unwrap().is_empty());
    assert!(r["reason"].is_string());
}

#[test]
fn operator_matrix_laplacian() {
    let out = conecert(&["op", "matrix", "--op", "laplacian", "--n", "2", "--p", "1", "--q", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let out = conecert(&["op", "matrix", "--op", "mult-h", "--n", "2", "--p", "1", "--q", "1"]);
    assert_eq!(out.status.code(), Some(1), "mult-h without --a");
}

#[test]
fn malformed_json_exits_1_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"n\": 2, \"terms\": [");
    let out = conecert(&["poly", "decompose", "--input", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn schema_error_names_pointer() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"n":2,"terms":[{"alpha":[1],"beta":[0,0],"coef":{"re":"1","im":"0"}}]}"#,
    );
    let out = conecert(&["poly", "decompose", "--input", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("/terms/0/alpha"), "{err}");
}

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    assert_eq!(conecert(&["--bogus"]).status.code(), Some(1));
    assert_eq!(conecert(&["cone", "certify", "--a", "3"]).status.code(), Some(1));
    assert_eq!(conecert(&["cone", "certify", "--a", "x+", "--n", "2", "--pmax", "1", "--qmax", "1"]).status.code(), Some(1));
    assert_eq!(conecert(&["--help"]).status.code(), Some(0));
    assert_eq!(conecert(&["--version"]).status.code(), Some(0));
}

#[test]
fn config_is_embedded_and_rerun_reproduces() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w.json", ZBAR1);
    let first = dir.path().join("first.json");
    let out = conecert(&[
        "tsm", "mean", "--f", "laguerre:k=1,nu=1", "--weight", &w, "--z", "0.3,0.1,0.2,-0.4", "--r", "1.5",
        "--quad-degree", "36", "--out", first.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r1: Value = serde_json::from_str(&fs::read_to_string(&first).unwrap()).unwrap();
    assert_eq!(r1["config"]["quad_degree"], 36);

    // Feed the embedded config back in.
    let mut cfg = r1["config"].clone();
    cfg["output"] = Value::Null;
    let cfg_path = write(dir.path(), "cfg.json", &cfg.to_string());
    let out = conecert(&[
        "tsm", "mean", "--f", "laguerre:k=1,nu=1", "--weight", &w, "--z", "0.3,0.1,0.2,-0.4", "--r", "1.5",
        "--config", &cfg_path,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r2 = report(&out);
    assert_eq!(r1["value"], r2["value"]);
    assert_eq!(r1["err_est"], r2["err_est"]);
}

#[test]
fn unknown_config_field_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", r#"{"quad_degre": 40}"#);
    let out = conecert(&["cone", "sample", "--a", "3", "--n", "2", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
}
