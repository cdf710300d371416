//! Exercises the clfree binary end to end: output formats, exit codes,
//! and determinism of the reports.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn clfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clfree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(output: &Output) -> Value {
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_json_reports_local_and_global_invariants() {
    let path = corpus("ex1_8.json");
    let out = clfree(&["analyze", path.to_str().unwrap(), "--json"]);
    let v = json_of(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["name"], "ex1_8");
    assert_eq!(v["curve_count"], 5);
    assert_eq!(v["degree"], 6);
    assert_eq!(v["jacobian_degree"], 19);
    assert_eq!(v["milnor_sum"], 20);
    assert_eq!(v["tjurina_sum"], 19);
    assert_eq!(v["freeness"]["free"], true);
    assert_eq!(v["freeness"]["exponents"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["certificate"]["free"], true);
    let origin = v["singular_points"]
        .as_array()
        .unwrap()
        .iter()
        .find(|row| row["cluster"] == "(0:0:1)")
        .expect("a row for the deep singular point");
    assert_eq!(origin["milnor"], 16);
    assert_eq!(origin["tjurina"], 15);
    assert_eq!(origin["quasihomogeneous"], false);
}

#[test]
fn analyze_text_is_the_default_and_deterministic() {
    let path = corpus("ex2_2.json");
    let first = clfree(&["analyze", path.to_str().unwrap()]);
    assert!(first.status.success());
    let text = String::from_utf8(first.stdout.clone()).unwrap();
    assert!(
        text.contains("freeness: free, exponents {1, 2, 5}"),
        "text:\n{text}"
    );
    let second = clfree(&["analyze", path.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);

    let explicit = clfree(&["analyze", path.to_str().unwrap(), "--text"]);
    assert_eq!(first.stdout, explicit.stdout);
}

#[test]
fn analyze_missing_file_exits_one() {
    let out = clfree(&["analyze", "no_such_file.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn analyze_invalid_arrangement_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");

    std::fs::write(&path, r#"{"curves":[{"kind":"conic","form":"x^2"}]}"#).unwrap();
    let out = clfree(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    std::fs::write(&path, "not json at all").unwrap();
    let out = clfree(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn conflicting_output_flags_exit_two() {
    let path = corpus("ex1_8.json");
    let out = clfree(&["analyze", path.to_str().unwrap(), "--json", "--text"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn no_certificate_flag_omits_the_certificate() {
    let path = corpus("ex3_3.json");
    let out = clfree(&["analyze", path.to_str().unwrap(), "--json", "--no-certificate"]);
    let v = json_of(&out);
    assert!(v.get("certificate").is_none());
    assert_eq!(v["freeness"]["exponents"], serde_json::json!([1, 2, 2]));
}

#[test]
fn chart_seed_keeps_reports_stable() {
    let path = corpus("ex1_8.json");
    let a = clfree(&["analyze", path.to_str().unwrap(), "--json", "--chart-seed", "7"]);
    let b = clfree(&["analyze", path.to_str().unwrap(), "--json", "--chart-seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["jacobian_degree"], 19);
}

#[test]
fn certify_lists_addition_steps() {
    let path = corpus("ex2_2.json");
    let out = clfree(&["certify", path.to_str().unwrap(), "--json"]);
    let v = json_of(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["certificate"]["free"], true);
    let steps = v["certificate"]["steps"].as_array().unwrap();
    assert_eq!(steps.last().unwrap()["rule"], "line-addition");
    assert_eq!(steps.last().unwrap()["k"], 3);
    assert_eq!(steps.first().unwrap()["rule"], "direct");

    let text = clfree(&["certify", path.to_str().unwrap()]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("line-addition"), "text:\n{text}");
}

#[test]
fn compare_reports_equal_combinatorics_with_different_freeness() {
    let first = corpus("ex4_1_C.json");
    let second = corpus("ex4_1_Cprime.json");
    let out = clfree(&[
        "compare",
        first.to_str().unwrap(),
        second.to_str().unwrap(),
        "--json",
    ]);
    let v = json_of(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["equal_strict"], true);
    assert_eq!(v["equal_incidence"], true);
    assert_eq!(v["equal"], true);
    assert_eq!(v["same_freeness"], false);
    assert_eq!(v["freeness_not_combinatorial"], true);
    assert_eq!(v["first"]["freeness"]["free"], true);
    assert_eq!(v["second"]["freeness"]["free"], false);
    assert_eq!(
        v["second"]["freeness"]["betti"]["generator_degrees"],
        serde_json::json!([8, 8, 8])
    );
}

#[test]
fn compare_a_file_with_itself() {
    let path = corpus("ex3_1.json");
    let out = clfree(&[
        "compare",
        path.to_str().unwrap(),
        path.to_str().unwrap(),
        "--equality",
        "incidence",
        "--json",
    ]);
    let v = json_of(&out);
    assert_eq!(v["equal"], true);
    assert_eq!(v["same_freeness"], true);
    assert_eq!(v["freeness_not_combinatorial"], false);

    let bogus = clfree(&[
        "compare",
        path.to_str().unwrap(),
        path.to_str().unwrap(),
        "--equality",
        "sloppy",
    ]);
    assert_eq!(bogus.status.code(), Some(2));
}
