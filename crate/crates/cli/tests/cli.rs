//! End-to-end checks of the `idyn` binary: exit codes, output schema, and
//! the model-file round trip through real process invocations.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_idyn"))
}

fn model_path(name: &str) -> String {
    format!("{}/../../models/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn idyn");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn check_reports_schema_stable_json() {
    let out = bin()
        .args(["check", "i-transitive", &model_path("ex_4_1.txt"), "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["tool_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(doc["query"], "check i-transitive");
    assert_eq!(doc["model_name"], "EX_4_1");
    assert_eq!(doc["holds"], false);
    assert_eq!(doc["result"], false);
    assert_eq!(doc["witness"]["U"], serde_json::json!(["a"]));
    assert_eq!(doc["witness"]["V"], serde_json::json!(["a"]));
    assert_eq!(doc["witness"]["n_range"], serde_json::json!([1, 2]));
}

#[test]
fn check_answers_are_exit_zero_either_way() {
    for (query, file) in [("transitive", "ex_4_1.txt"), ("i-transitive", "ex_4_1.txt")] {
        let out = bin().args(["check", query, &model_path(file)]).output().unwrap();
        assert!(out.status.success(), "{query} should exit 0");
    }
}

#[test]
fn stdin_is_a_model_source() {
    let text = std::fs::read_to_string(model_path("ex_4_0_1.txt")).unwrap();
    let out = run_with_stdin(&["check", "i-transitive"], &text);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("i-transitive = true"), "{stdout}");
}

#[test]
fn parse_errors_exit_two_with_position() {
    let out = run_with_stdin(
        &["check", "transitive"],
        "points: a b c\nopens: {a} {b}\nideal: trivial\nmap: a>a b>b c>c\n",
    );
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 2"), "{stderr}");
    assert!(stderr.contains("union"), "{stderr}");
}

#[test]
fn improper_ideal_checks_exit_two() {
    let out = run_with_stdin(
        &["check", "i-transitive"],
        "points: a b\nopens: {a}\nideal: {a b}\nmap: a>a b>b\n",
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn strict_continuity_rejects_discontinuous_maps() {
    let text = "points: a b\nopens: {a}\nideal: trivial\nmap: a>b b>a\n";
    let strict = run_with_stdin(&["check", "transitive", "-", "--strict-continuity"], text);
    assert_eq!(strict.status.code(), Some(2));
    let lax = run_with_stdin(&["check", "transitive"], text);
    assert!(lax.status.success());
    let stderr = String::from_utf8(lax.stderr).unwrap();
    assert!(stderr.contains("not continuous"), "{stderr}");
}

#[test]
fn unknown_queries_flags_and_ops_exit_two() {
    let out = bin().args(["check", "nonsense", &model_path("ex_4_1.txt")]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["mine", "--size", "2", "--predicate", "no_such_flag"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["compute", "frobnicate", &model_path("ex_4_1.txt")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["suite", "--size", "9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compute_set_ops_and_notes() {
    let out = bin()
        .args([
            "compute",
            "local-function",
            &model_path("remark_ce_1.txt"),
            "--set",
            "{a b c}",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"], serde_json::json!(["b"]));
    assert_eq!(doc["note"]["registered_discrepancy"], true);
    assert_eq!(doc["note"]["recorded_value"], "{b c d}");

    let out = bin()
        .args(["compute", "star-topology", &model_path("ex_4_0_1.txt")])
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("{} {a} {c} {a c} {a b c} {a c d} {a b c d}"), "{stdout}");

    let out = bin()
        .args(["compute", "forward-union", &model_path("ex_4_1.txt"), "--set", "{a}"])
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("= {a c}"), "{stdout}");
}

#[test]
fn compute_needs_its_set_argument() {
    let out = bin()
        .args(["compute", "closure", &model_path("ex_4_1.txt")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_json_shape() {
    let out = bin()
        .args(["classify", &model_path("remark_ce_1.txt"), "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["codense"], true);
    assert_eq!(doc["result"]["completely_codense"], false);
    assert_eq!(doc["result"]["compatible"], true);
}

#[test]
fn suite_exits_zero_and_reports_every_target() {
    let out = bin().args(["suite", "--size", "2", "--format", "json"]).output().unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["sound_violations"], 0);
    assert!(doc["result"]["outcomes"].as_array().unwrap().len() >= 30);
}

#[test]
fn mine_output_round_trips_through_the_parser() {
    let out = bin()
        .args(["mine", "--size", "2", "--predicate", "transitive & !i_transitive", "--limit", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let block: String = stdout.lines().take_while(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
    let model = idyn_core::model::Model::parse(&block).expect("mined model parses");
    assert_eq!(model.ground().len(), 2);
}

#[test]
fn corpus_model_files_round_trip_via_compute() {
    // every shipped model file loads and answers a trivial query
    for file in [
        "ex_4_0_1.txt",
        "ex_4_1.txt",
        "ex_5_1.txt",
        "ex_5_2.txt",
        "ex_5_6.txt",
        "remark_ce_1.txt",
        "ncf_08a.txt",
        "ncf_09.txt",
        "ncf_10.txt",
        "ncf_11.txt",
    ] {
        let out = bin().args(["check", "transitive", &model_path(file)]).output().unwrap();
        assert!(out.status.success(), "{file}");
    }
}
