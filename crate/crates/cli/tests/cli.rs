use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qbbw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbbw")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn build_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut all = vec!["build"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", &path]);
    let out = qbbw(&all);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn kac_route_gl11() {
    let out = qbbw(&["build", "--m", "1", "--n", "1", "--lambda", "1|0", "--route", "kac"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["kind"], "classical");
}

#[test]
fn non_dominant_weight_is_rejected() {
    let out = qbbw(&["build", "--lambda", "1,2|0", "--m", "2", "--n", "1"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_input_is_rejected() {
    for args in [
        &["build", "--m", "1", "--n", "1", "--lambda", "1|"][..],
        &["build", "--m", "1", "--n", "1", "--lambda", "1,0|0"],
        &["build", "--m", "0", "--n", "1", "--lambda", "|0"],
        &["build", "--m", "1", "--n", "1", "--lambda", "1|0", "--eval-q", "0"],
        &["build", "--m", "1", "--n", "1", "--lambda", "1|0", "--eval-q", "x"],
        &["build", "--m", "1", "--n", "1"],
    ] {
        assert_eq!(code(&qbbw(args)), 2, "{args:?}");
    }
}

#[test]
fn atypical_bbw_gl11() {
    let v = json(&qbbw(&["build", "--m", "1", "--n", "1", "--lambda", "0|0", "--route", "bbw"]));
    assert_eq!(v["dim"], 1);
    assert_eq!(v["kind"], "quantum");
    assert_eq!(v["certified"], true);
}

#[test]
fn polynomial_realization_relations_pass() {
    let out = qbbw(&["verify", "--suite", "quantum-relations", "--route", "prop4", "--m", "1", "--n", "2", "--k", "3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn lemma1_suite_passes() {
    let out = qbbw(&["verify", "--suite", "lemma1", "--m", "2", "--n", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn other_suites_pass() {
    for args in [
        &["verify", "--suite", "jacobi", "--m", "2", "--n", "2"][..],
        &["verify", "--suite", "realization", "--route", "prop2", "--m", "2", "--n", "1", "--lambda", "1,0|0"],
        &["verify", "--suite", "realization", "--route", "prop3", "--m", "1", "--n", "2", "--lambda", "1|0,0"],
        &["verify", "--suite", "realization", "--route", "bbw", "--m", "2", "--n", "1", "--lambda", "1,0|2"],
        &["verify", "--suite", "realization", "--route", "prop4", "--m", "2", "--n", "1", "--k", "2", "--c", "-1"],
        &["verify", "--suite", "tensor-operator", "--m", "1", "--n", "2", "--lambda", "1|0,0"],
        &["verify", "--suite", "factorization", "--m", "2", "--n", "1", "--lambda", "1,0|0"],
        &["verify", "--suite", "omn-oa", "--m", "2", "--n", "1", "--lambda", "1,1|0"],
        &["verify", "--suite", "coherent", "--route", "prop5", "--m", "1", "--n", "2", "--lambda", "2|1,0"],
        &["verify", "--suite", "coherent", "--route", "prop3", "--m", "2", "--n", "1", "--lambda", "1,0|0"],
    ] {
        let out = qbbw(args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn literal_convention_fails_verification() {
    let out = qbbw(&[
        "verify", "--suite", "realization", "--route", "prop4", "--m", "1", "--n", "2", "--k", "2", "--c", "1", "--convention", "literal",
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn mutated_artifact_fails_with_named_identity() {
    let dir = tempfile::tempdir().unwrap();
    let path = build_to(dir.path(), "v.json", &["--m", "1", "--n", "2", "--lambda", "1|0,0", "--route", "bbw"]);
    assert_eq!(code(&qbbw(&["verify", "--artifact", &path])), 0);

    let mut a: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    a["module"]["ops"]["E1,2"]["entries"][0][2] = Value::from("2*q^0");
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, a.to_string()).unwrap();

    let out = qbbw(&["verify", "--suite", "quantum-relations", "--artifact", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    let failed: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert!(!failed.is_empty());
    assert!(failed[0]["identity"].as_str().unwrap().contains("relations"));
    assert!(failed[0]["witness"].as_str().unwrap().contains("E1"));
}

#[test]
fn corrupt_artifact_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = build_to(dir.path(), "v.json", &["--m", "1", "--n", "1", "--lambda", "1|0"]);
    let mut a: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    a["dim"] = Value::from(7);
    std::fs::write(&path, a.to_string()).unwrap();
    assert_eq!(code(&qbbw(&["verify", "--artifact", &path])), 2);
    std::fs::write(&path, "{").unwrap();
    assert_eq!(code(&qbbw(&["character", "--artifact", &path])), 2);
}

#[test]
fn compare_routes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let kac = build_to(d, "kac.json", &["--m", "1", "--n", "1", "--lambda", "1|0", "--route", "kac"]);
    let bbw = build_to(d, "bbw.json", &["--m", "1", "--n", "1", "--lambda", "1|0", "--route", "bbw"]);
    let other = build_to(d, "other.json", &["--m", "1", "--n", "1", "--lambda", "2|0", "--route", "kac"]);
    let q = build_to(d, "q.json", &["--m", "2", "--n", "1", "--lambda", "1,0|2", "--route", "bbw"]);
    let c = build_to(d, "c.json", &["--m", "2", "--n", "1", "--lambda", "1,0|2", "--route", "kac"]);
    let wide = build_to(d, "wide.json", &["--m", "2", "--n", "1", "--lambda", "1,0|0"]);

    let out = qbbw(&["compare", &kac, &bbw]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["character_diff"].as_array().unwrap().len(), 0);

    let out = qbbw(&["compare", &q, &c]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["equal"], true);

    let out = qbbw(&["compare", &kac, &other]);
    assert_eq!(code(&out), 1);
    assert!(!json(&out)["character_diff"].as_array().unwrap().is_empty());

    assert_eq!(code(&qbbw(&["compare", &kac, &wide])), 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["build", "--m", "2", "--n", "1", "--lambda", "1,0|2", "--route", "bbw"];
    let a = qbbw(&args).stdout;
    let b = qbbw(&args).stdout;
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let e = ["export", "--m", "1", "--n", "2", "--route", "prop4", "--k", "2", "--c", "1"];
    assert_eq!(qbbw(&e).stdout, qbbw(&e).stdout);
}

#[test]
fn keys_are_sorted() {
    let v = json(&qbbw(&["build", "--m", "1", "--n", "1", "--lambda", "1|0"]));
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn evaluation_at_rational_q() {
    let dir = tempfile::tempdir().unwrap();
    let path = build_to(dir.path(), "e.json", &["--m", "1", "--n", "2", "--lambda", "2|1,0", "--route", "bbw", "--eval-q", "3/2"]);
    let a: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(a["eval_q"], "3/2");
    assert_eq!(code(&qbbw(&["verify", "--artifact", &path])), 0);
}

#[test]
fn character_and_export() {
    let v = json(&qbbw(&["character", "--m", "2", "--n", "1", "--lambda", "1,0|0", "--route", "prop3"]));
    let total: u64 = v["character"].as_array().unwrap().iter().map(|w| w["mult"].as_u64().unwrap()).sum();
    assert_eq!(total, v["dim"].as_u64().unwrap());

    let v = json(&qbbw(&["export", "--m", "1", "--n", "2", "--route", "prop4", "--k", "2"]));
    assert_eq!(v["ambient_dim"], 5);
    assert_eq!(v["basis"].as_array().unwrap().len(), 5);
    assert!(v["operators"]["E2,3"].is_object());
}
