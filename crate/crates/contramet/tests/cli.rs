//! End-to-end tests of the command-line interface: every subcommand, the
//! exit-code contract, and stdin/stdout plumbing.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use tempfile::tempdir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_contramet"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("stdin is piped")
        .write_all(input.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary finishes")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

const SINGLE_FIXED_POINT: &str = r#"{
    "alpha": {"num": 1, "den": 2},
    "components": [
        {"type": "tree", "parent": [0, 0, 1]},
        {"type": "chain", "two_sided": true, "grafts": []}
    ],
    "designated": {"component": 0, "node": 0}
}"#;

const FINITE_MULTI: &str = r#"{
    "alpha": {"num": 1, "den": 2},
    "components": [
        {"type": "tree", "parent": [0, 0]},
        {"type": "tree", "parent": [0]}
    ],
    "designated": {"component": 0, "node": 0}
}"#;

#[test]
fn gen_is_deterministic_and_validates() {
    let a = run(&["gen", "--seed", "11", "--trees", "2", "--chains", "2"]);
    let b = run(&["gen", "--seed", "11", "--trees", "2", "--chains", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same seed, same bytes");
    let c = run(&["gen", "--seed", "12", "--trees", "2", "--chains", "2"]);
    assert_ne!(a.stdout, c.stdout, "different seed, different instance");

    let validated = run_with_stdin(&["validate", "-"], &stdout_str(&a));
    assert!(validated.status.success());
}

#[test]
fn synth_verify_pipeline_passes() {
    let dir = tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    let space = dir.path().join("space.json");
    std::fs::write(&inst, SINGLE_FIXED_POINT).unwrap();

    let synth = run(&[
        "synth",
        inst.to_str().unwrap(),
        "--kind",
        "metric",
        "-o",
        space.to_str().unwrap(),
    ]);
    assert!(synth.status.success(), "{}", String::from_utf8_lossy(&synth.stderr));
    let text = std::fs::read_to_string(&space).unwrap();
    assert!(text.contains("\"form\": \"params\""), "countable spaces are stored as params");

    let verify = run(&["verify", space.to_str().unwrap(), "--window", "15"]);
    assert!(verify.status.success(), "{}", String::from_utf8_lossy(&verify.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&verify)).unwrap();
    assert_eq!(report["verdict"], "pass");
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"triangle"));
    assert!(names.contains(&"contraction_banach"));
}

#[test]
fn finite_instances_synthesize_to_tables() {
    let out = run_with_stdin(&["synth", "-", "--kind", "pmetric"], FINITE_MULTI);
    assert!(out.status.success());
    let file: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(file["form"], "table");
    assert_eq!(file["n"], 3);
    assert_eq!(file["T"].as_array().unwrap().len(), 3);

    // The emitted table verifies standalone, through a pipe.
    let verify = run_with_stdin(&["verify", "-"], &stdout_str(&out));
    assert!(verify.status.success(), "{}", String::from_utf8_lossy(&verify.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&verify)).unwrap();
    assert_eq!(report["verdict"], "pass");
}

#[test]
fn verify_rejects_corrupted_table_with_exit_1() {
    let bad = r#"{
        "n": 2,
        "p": [
            [{"num": 0, "den": 1}, {"num": 1, "den": 1}],
            [{"num": 2, "den": 1}, {"num": 0, "den": 1}]
        ],
        "T": [0, 0]
    }"#;
    let out = run_with_stdin(&["verify", "-", "--alpha", "1/2"], bad);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(report["verdict"], "fail");
    let symmetry = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "symmetry")
        .expect("symmetry check present");
    assert_eq!(symmetry["violations"].as_array().unwrap().len(), 1);
}

#[test]
fn malformed_json_exits_2() {
    let out = run_with_stdin(&["validate", "-"], "{not json");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1"), "diagnostic names the position: {err}");
}

#[test]
fn missing_file_exits_2() {
    let out = run(&["verify", "/nonexistent/space.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hypothesis_violation_exits_3_with_findings() {
    let bad = r#"{
        "alpha": {"num": 1, "den": 2},
        "components": [{"type": "tree", "parent": [1, 0]}],
        "designated": {"component": 0, "node": 0}
    }"#;
    let out = run_with_stdin(&["validate", "-"], bad);
    assert_eq!(out.status.code(), Some(3));
    let findings: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(findings[0]["kind"], "root_not_self_parented");
    assert!(findings[0]["witness"].is_object());

    // Synthesis refuses the same instance the same way.
    let synth = run_with_stdin(&["synth", "-", "--kind", "metric"], bad);
    assert_eq!(synth.status.code(), Some(3));
}

#[test]
fn iterate_reports_convergence_certificate() {
    let dir = tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    let space = dir.path().join("space.json");
    std::fs::write(&inst, SINGLE_FIXED_POINT).unwrap();
    let synth = run(&[
        "synth",
        inst.to_str().unwrap(),
        "--kind",
        "metric",
        "-o",
        space.to_str().unwrap(),
    ]);
    assert!(synth.status.success());

    let out = run(&[
        "iterate",
        space.to_str().unwrap(),
        "--from",
        "1:coord:-4",
        "--max-steps",
        "40",
        "--classify",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let trace: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(trace["outcome"]["type"], "converging_to");
    assert_eq!(trace["outcome"]["ratio"], serde_json::json!({"num": 1, "den": 2}));
    assert_eq!(trace["orbit_class"]["type"], "cauchy_to_zero");

    let tree = run(&[
        "iterate",
        space.to_str().unwrap(),
        "--from",
        "0:tree:2",
        "--max-steps",
        "40",
    ]);
    assert!(tree.status.success());
    let trace: serde_json::Value = serde_json::from_str(&stdout_str(&tree)).unwrap();
    assert_eq!(trace["outcome"]["type"], "reached_fixed_point");
    assert_eq!(trace["outcome"]["at_step"], 2);
}

#[test]
fn identity_emits_a_strong_table() {
    let out = run(&["identity", "--size", "5", "--alpha", "1/2"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let file: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(file["form"], "table");
    assert_eq!(file["n"], 5);

    let verify = run_with_stdin(&["verify", "-", "--strong"], &text);
    assert!(verify.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&verify)).unwrap();
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"strong_max_bound"));
    assert!(names.contains(&"self_distance_injective"));
}

#[test]
fn dot_renders_instances() {
    let out = run_with_stdin(&["dot", "-", "--window", "3"], SINGLE_FIXED_POINT);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.starts_with("digraph instance {"));
    assert!(text.contains("doublecircle"));
    assert!(text.contains("c1_m3"));
}

#[test]
fn verify_attaches_map_from_instance_file() {
    let dir = tempdir().unwrap();
    let inst_path = dir.path().join("inst.json");
    std::fs::write(&inst_path, FINITE_MULTI).unwrap();

    // Synthesize to a table, then strip the map and points, leaving a bare
    // matrix whose map has to come from --instance.
    let synth = run_with_stdin(&["synth", "-", "--kind", "pmetric"], FINITE_MULTI);
    assert!(synth.status.success());
    let mut file: serde_json::Value = serde_json::from_str(&stdout_str(&synth)).unwrap();
    file.as_object_mut().unwrap().remove("T");
    file.as_object_mut().unwrap().remove("points");
    file.as_object_mut().unwrap().remove("form");
    file.as_object_mut().unwrap().remove("kind");
    let bare = serde_json::to_string(&file).unwrap();

    let verify = run_with_stdin(
        &["verify", "-", "--instance", inst_path.to_str().unwrap()],
        &bare,
    );
    assert!(verify.status.success(), "{}", String::from_utf8_lossy(&verify.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&verify)).unwrap();
    assert_eq!(report["verdict"], "pass");
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"contraction_max"), "map attached, contraction checked");
}

#[test]
fn verify_report_flag_writes_file() {
    let dir = tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let out = run_with_stdin(
        &[
            "verify",
            "-",
            "--report",
            report_path.to_str().unwrap(),
        ],
        &stdout_str(&run(&["identity", "--size", "3", "--alpha", "1/2"])),
    );
    assert!(out.status.success());
    let on_disk: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(on_disk["verdict"], "pass");
}
