//! End-to-end tests driving the compiled binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lipext"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin piped")
        .write_all(input.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn gen_instance(args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(0), "gen failed: {out:?}");
    stdout_str(&out)
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(content.as_bytes()).expect("temp write");
    f
}

#[test]
fn gen_is_deterministic() {
    let a = gen_instance(&["--n", "5", "--dim", "3", "--seed", "42"]);
    let b = gen_instance(&["--n", "5", "--dim", "3", "--seed", "42"]);
    let c = gen_instance(&["--n", "5", "--dim", "3", "--seed", "43"]);
    let d = gen_instance(&["--n", "5", "--dim", "3", "--seed", "42", "--embed-dim", "5"]);
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_ne!(a, d);
}

#[test]
fn validate_accepts_generated_member() {
    let inst = gen_instance(&["--n", "4", "--dim", "2", "--seed", "7"]);
    let out = run_stdin(&["validate"], &inst);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["member"], serde_json::json!(true));
    assert!(doc["lipschitz_constant"].as_f64().unwrap() <= 1.0 + 1e-9);
}

#[test]
fn validate_flags_scaled_point_as_non_member() {
    let inst = gen_instance(&["--n", "4", "--dim", "2", "--seed", "7"]);
    let mut doc: serde_json::Value = serde_json::from_str(&inst).unwrap();
    let point = doc["point"].as_array().unwrap().clone();
    let scaled: Vec<Vec<f64>> = point
        .iter()
        .map(|row| {
            row.as_array()
                .unwrap()
                .iter()
                .map(|v| v.as_f64().unwrap() * 10.0)
                .collect()
        })
        .collect();
    doc["point"] = serde_json::json!(scaled);
    let out = run_stdin(&["validate"], &doc.to_string());
    assert_eq!(out.status.code(), Some(2));
    let parsed: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(parsed["member"], serde_json::json!(false));

    let out = run_stdin(&["check-extreme"], &doc.to_string());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_extreme_distinguishes_kinds() {
    // zero map on a two-point space: every slack is maximal
    let zero = r#"{"format_version":1,"space":{"n":1,"dist":[[0.0,1.0],[1.0,0.0]]},"norm":{"dim":2,"p":2.0},"point":[[0.0,0.0],[0.0,0.0]]}"#;
    let out = run_stdin(&["check-extreme", "--oracle"], zero);
    assert_eq!(out.status.code(), Some(3));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["status"], serde_json::json!("not_extreme"));
    assert_eq!(doc["oracle"], serde_json::json!("agree"));
    assert_eq!(doc["cut"]["nodes"], serde_json::json!([1]));
    assert_eq!(doc["cut"]["epsilon"], serde_json::json!(1.0));

    // same space, unit vector at node 1: the single pair is tight
    let unit = r#"{"format_version":1,"space":{"n":1,"dist":[[0.0,1.0],[1.0,0.0]]},"norm":{"dim":2,"p":2.0},"point":[[0.0,0.0],[1.0,0.0]]}"#;
    let out = run_stdin(&["check-extreme", "--oracle"], unit);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["status"], serde_json::json!("extreme"));

    let extreme = gen_instance(&["--n", "4", "--dim", "2", "--seed", "3", "--extreme"]);
    let out = run_stdin(&["check-extreme", "--oracle"], &extreme);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["status"], serde_json::json!("extreme"));
    assert_eq!(doc["parent"].as_array().unwrap().len(), 4);
}

#[test]
fn decompose_then_verify_round_trips() {
    let inst = gen_instance(&["--n", "5", "--dim", "3", "--seed", "19"]);
    let out = run_stdin(&["decompose", "--verify"], &inst);
    assert_eq!(out.status.code(), Some(0));
    let dec = stdout_str(&out);
    let doc: serde_json::Value = serde_json::from_str(&dec).unwrap();
    assert_eq!(doc["verified"], serde_json::json!(true));
    assert!(doc["report"].is_array());
    let k = doc["k"].as_u64().unwrap();
    assert!((1..=6).contains(&k));
    assert_eq!(doc["atoms"].as_array().unwrap().len() as u64, k);

    let inst_file = write_temp(&inst);
    let dec_file = write_temp(&dec);
    let out = run(&[
        "verify",
        inst_file.path().to_str().unwrap(),
        dec_file.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let verdict: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(verdict["ok"], serde_json::json!(true));
}

#[test]
fn decompose_without_verify_skips_the_report() {
    let inst = gen_instance(&["--n", "3", "--dim", "2", "--seed", "37"]);
    let out = run_stdin(&["decompose"], &inst);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["verified"], serde_json::json!(false));
    assert!(doc.get("report").is_none());
}

#[test]
fn tampered_decomposition_fails_verification() {
    let inst = gen_instance(&["--n", "4", "--dim", "2", "--seed", "23"]);
    let out = run_stdin(&["decompose"], &inst);
    assert_eq!(out.status.code(), Some(0));
    let mut doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let w = doc["atoms"][0]["weight"].as_f64().unwrap();
    doc["atoms"][0]["weight"] = serde_json::json!(w + 1e-3);
    let inst_file = write_temp(&inst);
    let dec_file = write_temp(&doc.to_string());
    let out = run(&[
        "verify",
        inst_file.path().to_str().unwrap(),
        dec_file.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(5));
    let verdict: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(verdict["ok"], serde_json::json!(false));
}

#[test]
fn verify_rejects_mismatched_inputs() {
    let inst_a = gen_instance(&["--n", "4", "--dim", "2", "--seed", "41"]);
    let inst_b = gen_instance(&["--n", "3", "--dim", "2", "--seed", "41"]);
    let out = run_stdin(&["decompose"], &inst_a);
    assert_eq!(out.status.code(), Some(0));
    let dec_file = write_temp(&stdout_str(&out));
    let wrong_inst = write_temp(&inst_b);
    let out = run(&[
        "verify",
        wrong_inst.path().to_str().unwrap(),
        dec_file.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));

    // both inputs cannot share stdin
    let out = run_stdin(&["verify", "-", "-"], &inst_a);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_fields_are_rejected() {
    let inst = gen_instance(&["--n", "2", "--dim", "1", "--seed", "1"]);
    let mut doc: serde_json::Value = serde_json::from_str(&inst).unwrap();
    doc["extra"] = serde_json::json!(1);
    let out = run_stdin(&["validate"], &doc.to_string());
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!(err["error"].as_str().unwrap().contains("unknown field"));
}

#[test]
fn overflowing_distances_are_rejected() {
    let text = r#"{"format_version":1,"space":{"n":1,"dist":[[0.0,1e999],[1e999,0.0]]},"norm":{"dim":1,"p":2.0},"point":[[0.0],[0.5]]}"#;
    let out = run_stdin(&["validate"], text);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!(err["error"].as_str().unwrap().contains("out of range"));
}

#[test]
fn wrong_format_version_is_rejected() {
    let inst = gen_instance(&["--n", "2", "--dim", "1", "--seed", "1"]);
    let mut doc: serde_json::Value = serde_json::from_str(&inst).unwrap();
    doc["format_version"] = serde_json::json!(99);
    let out = run_stdin(&["validate"], &doc.to_string());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_exponent_is_rejected() {
    let out = run(&["gen", "--n", "2", "--dim", "2", "--p", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["gen", "--n", "2", "--dim", "2", "--p", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn radius_other_than_one_is_rejected_outside_validate() {
    let inst = gen_instance(&["--n", "3", "--dim", "2", "--seed", "5"]);
    let mut doc: serde_json::Value = serde_json::from_str(&inst).unwrap();
    doc["L"] = serde_json::json!(2.0);
    let text = doc.to_string();
    let out = run_stdin(&["validate"], &text);
    assert_eq!(out.status.code(), Some(0));
    let out = run_stdin(&["decompose"], &text);
    assert_eq!(out.status.code(), Some(1));
    let out = run_stdin(&["check-extreme"], &text);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn radius_flag_overrides_document() {
    let inst = gen_instance(&["--n", "3", "--dim", "2", "--seed", "5"]);
    let mut doc: serde_json::Value = serde_json::from_str(&inst).unwrap();
    doc["L"] = serde_json::json!(1e-9);
    let text = doc.to_string();
    let out = run_stdin(&["validate"], &text);
    assert_eq!(out.status.code(), Some(2));
    let out = run_stdin(&["validate", "-", "--L", "100"], &text);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn file_and_stdin_agree() {
    let inst = gen_instance(&["--n", "3", "--dim", "2", "--seed", "9"]);
    let f = write_temp(&inst);
    let from_file = run(&["validate", f.path().to_str().unwrap()]);
    let from_stdin = run_stdin(&["validate", "-"], &inst);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout_str(&from_file), stdout_str(&from_stdin));
}

#[test]
fn direction_flag_forms() {
    let inst = gen_instance(&["--n", "3", "--dim", "2", "--seed", "13"]);
    let f = write_temp(&inst);
    let path = f.path().to_str().unwrap();
    for dir in ["0", "1", "0.6,0.8", "-1,1"] {
        let out = run(&["decompose", path, "--direction", dir]);
        assert_eq!(out.status.code(), Some(0), "direction {dir} failed");
    }
    for dir in ["2", "abc", "0,0", "1,2,3"] {
        let out = run(&["decompose", path, "--direction", dir]);
        assert_eq!(out.status.code(), Some(1), "direction {dir} accepted");
    }
}

#[test]
fn text_format_renders() {
    let inst = gen_instance(&["--n", "3", "--dim", "2", "--seed", "17"]);
    let out = run_stdin(&["validate", "--format", "text"], &inst);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.contains("member: true"));
    assert!(serde_json::from_str::<serde_json::Value>(&text).is_err());
}

#[test]
fn general_exponent_pipeline() {
    let inst = gen_instance(&["--n", "4", "--dim", "2", "--p", "3", "--seed", "29"]);
    let parsed: serde_json::Value = serde_json::from_str(&inst).unwrap();
    assert_eq!(parsed["norm"]["p"], serde_json::json!(3.0));
    let out = run_stdin(&["decompose", "--verify"], &inst);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["verified"], serde_json::json!(true));
}

#[test]
fn random_metric_space_pipeline() {
    let inst = gen_instance(&["--n", "5", "--dim", "2", "--seed", "31", "--kind", "random"]);
    let out = run_stdin(&["decompose", "--verify"], &inst);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["verified"], serde_json::json!(true));
}
