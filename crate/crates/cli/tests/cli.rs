use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn coxring(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_coxring"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn json(args: &[&str], stdin: Option<&str>) -> Value {
    let out = coxring(args, stdin);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

const PLANE: &str = r#"{"rays": [[1, 0], [0, 1], [-1, -1]], "complete": true}"#;

#[test]
fn ext1_of_cyclic_into_divisible_times_z() {
    let v = json(&["ext1", "--group", "0;4", "--units", "div*1;"], None);
    assert_eq!(v["ext1"], "0;4");
    assert_eq!(v["order"], "4");
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn classify_counts() {
    let v = json(&["classify", "--group", "0;2", "--units", "0;4"], None);
    assert_eq!(v["count"], 2);
    assert_eq!(v["representatives"].as_array().unwrap().len(), 2);
    let v = json(&["classify", "--group", "0;3", "--units", "div"], None);
    assert_eq!(v["count"], 1);
}

#[test]
fn classify_output_revalidates() {
    for (g, u) in [("0;2,2", "0;2"), ("0;4", "div*1;"), ("0;6", "0;2,3")] {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("classes.json");
        let path = path.to_str().unwrap();
        let out = coxring(&["classify", "--group", g, "--units", u, "--out", path], None);
        assert!(out.status.success());
        let v = json(&["family-validate", "--in", path], None);
        assert_eq!(v["valid"], true, "{g} {u}");
        for fam in v["families"].as_array().unwrap() {
            assert!(fam["violations"].as_array().unwrap().is_empty());
        }
    }
}

#[test]
fn byte_identical_reruns() {
    let args = ["classify", "--group", "0;2,4", "--units", "0;4"];
    let a = coxring(&args, None);
    let b = coxring(&args, None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let args = ["toric-report", "--max-degree", "2"];
    assert_eq!(coxring(&args, Some(PLANE)).stdout, coxring(&args, Some(PLANE)).stdout);
}

#[test]
fn validate_reports_violations() {
    let bad = r#"{"grading": "0;4", "units": "0;8", "cocycle": [{"g": [1], "h": [1], "value": [2]}]}"#;
    let v = json(&["family-validate"], Some(bad));
    assert_eq!(v["valid"], false);
    let kinds: Vec<&str> = v["families"][0]["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["kind"].as_str().unwrap())
        .collect();
    assert!(kinds.contains(&"cocycle"));
}

#[test]
fn iso_of_coboundary() {
    // μ(1) = 1, μ(2) = 2, μ(3) = 3 in Z/8 (additively) gives this coboundary
    let doc = r#"{
        "left": {"grading": "0;2", "units": "0;8"},
        "right": {"grading": "0;2", "units": "0;8", "cocycle": [{"g": [1], "h": [1], "value": [2]}]}
    }"#;
    let v = json(&["family-iso"], Some(doc));
    assert_eq!(v["isomorphic"], true);
    let doc = r#"{
        "left": {"grading": "0;2", "units": "0;8"},
        "right": {"grading": "0;2", "units": "0;8", "cocycle": [{"g": [1], "h": [1], "value": [1]}]}
    }"#;
    let v = json(&["family-iso"], Some(doc));
    assert_eq!(v["isomorphic"], false);
    assert!(v["mu"].is_null());
}

#[test]
fn extend_then_quotient() {
    let ext = r#"{
        "family": {"grading": "0;2", "units": "0;8", "cocycle": [{"g": [1], "h": [1], "value": [4]}]},
        "grading": "0;4",
        "embedding": [[2]]
    }"#;
    let v = json(&["family-extend"], Some(ext));
    let fam = &v["family"];
    assert_eq!(fam["grading"], "0;4");
    let valid = json(&["family-validate"], Some(&fam.to_string()));
    assert_eq!(valid["valid"], true);

    let q = serde_json::json!({"family": fam, "subgroup": [[2]], "trivialization": [{"g": [2], "value": [0]}]});
    let out = coxring(&["family-quotient"], Some(&q.to_string()));
    // the extension is not trivial on {0, 2}
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn toric_commands() {
    let v = json(&["toric-classgroup"], Some(PLANE));
    assert_eq!(v["class_group"], "1;");
    assert_eq!(v["positive_relation"], serde_json::json!([1, 1, 1]));
    let v = json(&["toric-coxdim", "--class", "2"], Some(PLANE));
    assert_eq!(v["dimension"], 6);
    assert_eq!(v["monomial_dimension"], 6);
    let v = json(&["toric-coxdim", "--divisor", "1,1,-1"], Some(PLANE));
    assert_eq!(v["class"], serde_json::json!([1]));
    assert_eq!(v["dimension"], 3);
    let v = json(&["toric-report", "--max-degree", "1"], Some(PLANE));
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn table_formats() {
    let out = coxring(&["toric-report", "--format", "tsv"], Some(PLANE));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("k\tclass\tdimension\tcox_dimension\tmonomial_dimension\n"));
    assert_eq!(text.lines().count(), 11);
    let out = coxring(&["ext1", "--group", "2;", "--units", "0;3", "--format", "table"], None);
    assert!(String::from_utf8(out.stdout).unwrap().contains("ext1"));
}

#[test]
fn exit_codes() {
    let bad_literal = coxring(&["ext1", "--group", "0;x", "--units", "div"], None);
    assert_eq!(bad_literal.status.code(), Some(2));
    let bad_json = coxring(&["toric-classgroup"], Some("{not json"));
    assert_eq!(bad_json.status.code(), Some(2));
    let unknown_field = coxring(&["toric-classgroup"], Some(r#"{"rays": [[1]], "colour": 1}"#));
    assert_eq!(unknown_field.status.code(), Some(2));
    let incomplete = r#"{"rays": [[1, 0], [0, 1], [-1, -1]], "complete": false}"#;
    let out = coxring(&["toric-coxdim", "--class", "1"], Some(incomplete));
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}
