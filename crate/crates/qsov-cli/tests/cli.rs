use std::process::{Command, Output};

use serde_json::Value;

fn qsov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsov")).args(args).output().expect("run qsov")
}

fn json_ok(args: &[&str]) -> Value {
    let out = qsov(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn separated_at_t_one_quarter() {
    // s = 1/2, g = 1: t = 1/4, so f = 1 + t^{-1} y
    let v = json_ok(&["compute", "separated", "--lam", "0,1", "--s", "1/2", "--g", "1"]);
    assert_eq!(v["params"]["t"], "1/4");
    assert_eq!(v["coefficients"], serde_json::json!({"0": "1", "1": "4"}));
}

#[test]
fn trivial_transition_row() {
    let v = json_ok(&["compute", "transition", "--kind", "rho", "--lam", "1,1"]);
    assert_eq!(v["coefficients"], serde_json::json!({"1,1": "1"}));
}

#[test]
fn macdonald_middle_coefficient() {
    // (1+q)(1-t)/(1-qt) at q = 1/4, t = 1/16
    let v = json_ok(&["compute", "macdonald", "--lam", "0,2", "--s", "1/2", "--g", "2"]);
    assert_eq!(v["monomial_symmetric"]["1,1"], "25/21");
    assert_eq!(v["coefficients"]["0,2"], "1");
}

#[test]
fn cpoly_chebyshev_case() {
    let v = json_ok(&["compute", "cpoly", "--n", "3", "--beta", "1/4", "--s", "1/2"]);
    assert_eq!(v["coefficients"], serde_json::json!({"-3": "1", "-1": "1", "1": "1", "3": "1"}));
}

#[test]
fn basis_and_csv() {
    let out = qsov(&["compute", "basis", "--basis", "p", "--lam", "0,1", "--xi", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("key,value"));
    assert!(text.contains("\"1,1\",1/4") && text.contains("\"1,0\",-1/2"), "{text}");
}

#[test]
fn factorize_examples() {
    let v = json_ok(&["factorize", "--lam", "0,0"]);
    assert_eq!((v["c"].as_str(), v["verified"].as_bool()), (Some("1"), Some(true)));
    assert_eq!(v["f"], serde_json::json!({"0": "1"}));

    // c = t xi (1-t)/(1-t^2) = t/(1+t) = 1/5 at t = 1/4
    let v = json_ok(&["factorize", "--lam", "0,1", "--s", "1/2", "--g", "1", "--xi", "1"]);
    assert_eq!(v["c"], "1/5");
    assert_eq!(v["f"], serde_json::json!({"0": "1", "1": "4"}));
    assert_eq!(v["residual"], serde_json::json!({}));

    let v = json_ok(&["factorize", "--lam", "-2,3", "--s", "1/3", "--g", "2", "--xi", "3/2"]);
    assert_eq!(v["verified"], true);
}

#[test]
fn verify_report_schema() {
    let v = json_ok(&["verify", "qpoly", "--json", "--s", "1/2", "--g", "1"]);
    assert_eq!(v["suite"], "qpoly");
    assert_eq!(v["status"], "pass");
    assert!(v["elapsed_ms"].is_u64());
    assert_eq!(v["grid"]["seed"], serde_json::json!(["0"]));
    let cases = v["cases"].as_array().unwrap();
    assert!(!cases.is_empty());
    for c in cases {
        assert!(c["id"].is_string() && c["paper_eq"].is_string());
        assert_eq!(c["status"], "pass");
    }
}

#[test]
fn verify_is_reproducible() {
    let args = ["verify", "ruijsenaars", "--json", "--no-timing", "--phase-points", "3", "--seed", "7"];
    let (a, b) = (qsov(&args), qsov(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v["elapsed_ms"].is_null());
    assert_eq!(v["grid"]["seed"], serde_json::json!(["7"]));
}

#[test]
fn verify_small_exact_grids() {
    for suite in ["sov", "transitions", "macdonald"] {
        let out = qsov(&["verify", suite, "--lmax", "2", "--s", "1/2", "--g", "1", "--g", "2", "--xi", "2"]);
        assert!(out.status.success(), "{suite}: {}", String::from_utf8_lossy(&out.stdout));
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.lines().last().unwrap().contains("0 failed"), "{text}");
    }
}

#[test]
fn failing_suite_exits_one() {
    let out = qsov(&["verify", "numkernel", "--tol", "1e-30", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "fail");
    assert!(v["cases"].as_array().unwrap().iter().any(|c| c["status"] == "fail" && c["witness"].is_string()));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "nope"][..],
        &["compute", "separated", "--lam", "2,1"],
        &["compute", "separated", "--lam", "0,1", "--s", "3/2"],
        &["compute", "transition", "--kind", "sigma", "--lam", "0,1"],
        &["factorize"],
        &["verify", "numkernel", "--quad-points", "16"],
    ] {
        assert_eq!(qsov(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn writes_to_file() {
    let path = std::env::temp_dir().join(format!("qsov-cli-test-{}.json", std::process::id()));
    let out = qsov(&["compute", "separated", "--lam", "0,2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["lam"], "(0,2)");
    std::fs::remove_file(path).unwrap();
}
