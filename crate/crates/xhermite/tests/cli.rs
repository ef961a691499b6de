use std::process::Command;

use serde_json::Value;

fn xop(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_xop")).args(args).output().expect("run xop");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn xop_json(args: &[&str]) -> (i32, Value) {
    let (code, s) = xop(args);
    (code, serde_json::from_str(&s).unwrap_or_else(|e| panic!("{args:?}: {e}: {s}")))
}

#[test]
fn tau_is_byte_exact() {
    assert_eq!(xop(&["tau", "--lambda", "2,2"]), (0, "{\"tau\":\"x^4+12*y^2\"}\n".into()));
}

#[test]
fn output_is_deterministic() {
    let a = xop(&["recur", "--lambda", "2,2", "--q", "6"]);
    let b = xop(&["recur", "--lambda", "2,2", "--q", "6"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}

#[test]
fn recurrence_and_rejection() {
    let (code, v) = xop_json(&["recur", "--lambda", "2,2", "--q", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["sigma"], "x^6+36*x^2*y^2-192*y^3");
    assert_eq!(v["theta"].as_array().unwrap().len(), 7);
    let (code, v) = xop_json(&["recur", "--lambda", "2,2", "--q", "4"]);
    assert_eq!(code, 1);
    assert_eq!(v["critical"], false);
}

#[test]
fn lowering_and_checks() {
    let (code, v) = xop_json(&["lower", "--lambda", "2,1", "--q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["gamma"], "m^2-m-6");
    for rel in [["--relation", "eigen", "--m", "2"], ["--relation", "intertwine", "--q", "2"]] {
        let mut args = vec!["check", "--lambda", "2,1"];
        args.extend(rel);
        assert_eq!(xop_json(&args).0, 0, "{rel:?}");
    }
    let (code, v) = xop_json(&["check", "--lambda", "2,1", "--relation", "lowering", "--q", "5", "--m", "4"]);
    assert_eq!((code, v["holds"].clone()), (0, Value::Bool(true)));
}

#[test]
fn verify_suites() {
    for suite in ["generating", "annihilation"] {
        let (code, v) = xop_json(&["verify", "--lambda", "2,2", "--suite", suite, "--order", "8"]);
        assert_eq!(code, 0, "{suite}");
        assert_eq!(v["pass"], true);
    }
    let (code, v) = xop_json(&["verify", "--lambda", "2,2", "--suite", "ortho", "--y=-1/4", "--tol", "1e-8"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"].as_array().unwrap().len(), 6);
    let (code, _) = xop(&["verify", "--lambda", "2,1", "--suite", "ortho"]);
    assert_eq!(code, 2);
}

#[test]
fn truncation_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_xop"))
        .args(["series", "--lambda", "1"])
        .env("XOP_TRUNCATION_ORDER", "3")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 3);
    let out = Command::new(env!("CARGO_BIN_EXE_xop"))
        .args(["series", "--lambda", "1"])
        .env_remove("XOP_TRUNCATION_ORDER")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 12);
}

#[test]
fn golden_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_xop"))
        .args(["critdeg", "--lambda", "2,2", "--golden"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stderr), "golden: match\n");
    let out = Command::new(env!("CARGO_BIN_EXE_xop"))
        .args(["tau", "--lambda", "3", "--golden"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors() {
    assert_eq!(xop(&["--help"]).0, 0);
    assert_eq!(xop(&["lower", "--lambda", "2,1"]).0, 2);
    assert_eq!(xop(&["verify", "--lambda", "2,2", "--suite", "bogus"]).0, 2);
    assert_eq!(xop(&["xop-poly", "--lambda", "2,2", "--n", "5"]).0, 2);
}
