//! End-to-end checks of the binary: exit codes, JSON shapes, and
//! byte-stability of outputs, driven through real process invocations.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const CONSISTENT_NET: &str = r#"{
  "transitions": ["t1", "t2"],
  "places": [
    { "from": "t1", "to": "t1", "marking": 1, "lower": "1", "upper": "1" },
    { "from": "t2", "to": "t2", "marking": 1, "lower": "2", "upper": "3" },
    { "from": "t1", "to": "t2", "marking": 0, "lower": "0" }
  ]
}"#;

const DRIFTING_NET: &str = r#"{
  "transitions": ["t1", "t2"],
  "places": [
    { "from": "t1", "to": "t1", "marking": 1, "lower": "4", "upper": "5" },
    { "from": "t2", "to": "t2", "marking": 1, "lower": "2", "upper": "3" },
    { "from": "t1", "to": "t2", "marking": 0, "lower": "0" }
  ]
}"#;

/// The contradictory variant: the window [2, 1] on machine 1 is split over
/// two parallel places so each place alone is well-formed.
const SPLIT_WINDOW_NET: &str = r#"{
  "transitions": ["t1", "t2"],
  "places": [
    { "from": "t1", "to": "t1", "marking": 1, "lower": "2" },
    { "from": "t1", "to": "t1", "marking": 1, "lower": "0", "upper": "1" },
    { "from": "t2", "to": "t2", "marking": 1, "lower": "2", "upper": "3" },
    { "from": "t1", "to": "t2", "marking": 0, "lower": "0" }
  ]
}"#;

const CONTRADICTORY_MATRICES: &str = r#"{
  "n": 2,
  "M_minus": [["-1", "-inf"], ["-inf", "-3"]],
  "M_zero": [["-inf", "-inf"], ["0", "-inf"]],
  "M_plus": [["2", "-inf"], ["-inf", "2"]]
}"#;

const ARCLESS_MATRICES: &str = r#"{
  "n": 2,
  "M_minus": [["-inf", "-inf"], ["-inf", "-inf"]],
  "M_zero": [["-inf", "-inf"], ["-inf", "-inf"]],
  "M_plus": [["-inf", "-inf"], ["-inf", "-inf"]]
}"#;

fn pteg(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pteg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .expect("stdin piped")
            .write_all(text.as_bytes())
            .expect("stdin accepts input");
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().expect("binary exits")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("pteg-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp file writes");
    path
}

#[test]
fn check_reports_the_three_verdicts_with_exit_codes() {
    let ok = pteg(&["check"], Some(CONSISTENT_NET));
    assert_eq!(exit_code(&ok), 0, "stderr: {}", String::from_utf8_lossy(&ok.stderr));
    let verdict = stdout_json(&ok);
    assert_eq!(verdict["verdict"], "consistent");
    assert!(verdict["witness"].is_array());

    let drift = pteg(&["check"], Some(DRIFTING_NET));
    assert_eq!(exit_code(&drift), 1);
    let verdict = stdout_json(&drift);
    assert_eq!(verdict["verdict"], "inconsistent");
    assert_eq!(verdict["certificate"]["kind"], "pumpable_pair");
    assert_eq!(verdict["certificate"]["pair"]["gain"], "1");
    assert_eq!(verdict["certificate"]["pair"]["w1"], "4");
    assert_eq!(verdict["certificate"]["pair"]["w2"], "-3");

    let circuit = pteg(&["check"], Some(CONTRADICTORY_MATRICES));
    assert_eq!(exit_code(&circuit), 1);
    let verdict = stdout_json(&circuit);
    assert_eq!(verdict["verdict"], "inconsistent");
    assert_eq!(verdict["certificate"]["kind"], "positive_circuit");
}

#[test]
fn check_accepts_files_and_writes_output_files() {
    let input = temp_file("in.json", CONSISTENT_NET);
    let output = std::env::temp_dir().join(format!("pteg-cli-{}-out.json", std::process::id()));
    let run = pteg(
        &[
            "check",
            "-i",
            input.to_str().unwrap(),
            "-o",
            output.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(exit_code(&run), 0);
    assert!(run.stdout.is_empty());
    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(written["verdict"], "consistent");
}

#[test]
fn check_exhaustive_lists_pumpable_pairs() {
    let run = pteg(&["check", "--exhaustive"], Some(DRIFTING_NET));
    assert_eq!(exit_code(&run), 1);
    let verdict = stdout_json(&run);
    let pairs = verdict["pumpable_pairs"].as_array().expect("pair list");
    assert!(!pairs.is_empty());
    assert_eq!(pairs[0]["gain"], "1");

    let quiet = pteg(&["check"], Some(DRIFTING_NET));
    assert!(stdout_json(&quiet).get("pumpable_pairs").is_none());
}

#[test]
fn malformed_input_exits_two_with_a_json_error() {
    let run = pteg(&["check"], Some("{\"transitions\": [\"t1\","));
    assert_eq!(exit_code(&run), 2);
    assert!(run.stdout.is_empty());
    let err: serde_json::Value = serde_json::from_slice(&run.stderr).expect("stderr is JSON");
    assert!(err["error"].as_str().unwrap().contains("JSON"));

    let bad_interval = pteg(
        &["check"],
        Some(
            r#"{"transitions":["t1"],"places":[
                {"from":"t1","to":"t1","marking":1,"lower":"2","upper":"1"}]}"#,
        ),
    );
    assert_eq!(exit_code(&bad_interval), 2);
    let err: serde_json::Value = serde_json::from_slice(&bad_interval.stderr).unwrap();
    assert!(err["error"].is_string());
}

#[test]
fn star_prints_labeled_slices() {
    let run = pteg(&["star", "--radius", "2"], Some(CONTRADICTORY_MATRICES));
    assert_eq!(exit_code(&run), 0);
    let star = stdout_json(&run);
    assert_eq!(star["n"], 2);
    assert_eq!(star["radius"], 2);
    let labels: Vec<&str> = star["labels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l.as_str().unwrap())
        .collect();
    assert_eq!(labels.len(), 10);
    assert_eq!(labels[0], "(1,-2)");
    assert_eq!(labels[9], "(2,2)");
    // the contradictory instance blows up to +inf somewhere
    let rendered = serde_json::to_string(&star["star"]).unwrap();
    assert!(rendered.contains("\"inf\""));

    let identity = pteg(&["star", "--radius", "0"], Some(ARCLESS_MATRICES));
    assert_eq!(exit_code(&identity), 0);
    let star = stdout_json(&identity);
    assert_eq!(star["labels"], serde_json::json!(["(1,0)", "(2,0)"]));
    assert_eq!(star["star"], serde_json::json!([["0", "-inf"], ["-inf", "0"]]));

    let both = pteg(&["star", "--radius", "1", "--depth", "2"], Some(ARCLESS_MATRICES));
    assert_eq!(exit_code(&both), 2, "radius and depth must conflict");
}

#[test]
fn witness_round_trips_through_validate() {
    let witness = pteg(&["witness", "--horizon", "6"], Some(CONSISTENT_NET));
    assert_eq!(exit_code(&witness), 0);
    let trajectory = temp_file(
        "witness.json",
        std::str::from_utf8(&witness.stdout).unwrap(),
    );
    let net = temp_file("net.json", CONSISTENT_NET);
    let validate = pteg(
        &[
            "validate",
            "-i",
            net.to_str().unwrap(),
            "--trajectory",
            trajectory.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(exit_code(&validate), 0);
    assert_eq!(stdout_json(&validate)["count"], 0);

    let refused = pteg(&["witness"], Some(DRIFTING_NET));
    assert_eq!(exit_code(&refused), 1);
    assert!(refused.stdout.is_empty());
}

#[test]
fn validate_lists_the_single_violation_of_the_contradictory_window() {
    let trajectory = temp_file("window-traj.json", r#"[["0","0"],["1","2"]]"#);
    let run = pteg(
        &["validate", "--trajectory", trajectory.to_str().unwrap()],
        Some(SPLIT_WINDOW_NET),
    );
    assert_eq!(exit_code(&run), 1);
    let report = stdout_json(&run);
    assert_eq!(report["count"], 1);
    let violation = &report["violations"][0];
    assert_eq!(violation["kind"], "lower_bound");
    assert_eq!(violation["place"], 1);
    assert_eq!(violation["k"], 1);
    assert_eq!(violation["lhs"], "2");
    assert_eq!(violation["rhs"], "1");
    assert_eq!(violation["slack"], "-1");

    // the same trajectory satisfies the balanced net
    let ok = pteg(
        &["validate", "--trajectory", trajectory.to_str().unwrap()],
        Some(CONSISTENT_NET),
    );
    assert_eq!(exit_code(&ok), 0);
}

#[test]
fn oracle_compare_agrees_and_guards_size() {
    let run = pteg(&["oracle-compare"], Some(DRIFTING_NET));
    assert_eq!(exit_code(&run), 0);
    let report = stdout_json(&run);
    assert_eq!(report["agree"], true);
    assert_eq!(report["detector"]["class"], "pumpable_pair");
    assert_eq!(report["brute"]["class"], "pumpable_pair");

    let oversized = serde_json::json!({
        "n": 5,
        "M_minus": vec![vec!["-inf"; 5]; 5],
        "M_zero": vec![vec!["-inf"; 5]; 5],
        "M_plus": vec![vec!["-inf"; 5]; 5],
    })
    .to_string();
    let guarded = pteg(&["oracle-compare"], Some(&oversized));
    assert_eq!(exit_code(&guarded), 2);
}

#[test]
fn gen_is_deterministic_and_feeds_check() {
    let first = pteg(&["gen", "--seed", "1", "--n", "2"], None);
    let second = pteg(&["gen", "--seed", "1", "--n", "2"], None);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let other_seed = pteg(&["gen", "--seed", "2", "--n", "2"], None);
    assert_ne!(first.stdout, other_seed.stdout);

    let net = String::from_utf8(first.stdout).unwrap();
    let check_a = pteg(&["check"], Some(&net));
    let check_b = pteg(&["check"], Some(&net));
    assert_eq!(exit_code(&check_a), exit_code(&check_b));
    assert_eq!(check_a.stdout, check_b.stdout, "verdicts must be byte-stable");
}

#[test]
fn export_dot_renders_graph_and_slice() {
    let graph = pteg(&["export-dot"], Some(DRIFTING_NET));
    assert_eq!(exit_code(&graph), 0);
    let text = String::from_utf8(graph.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.contains("->"));

    let slice = pteg(&["export-dot", "--radius", "1"], Some(DRIFTING_NET));
    assert_eq!(exit_code(&slice), 0);
    let text = String::from_utf8(slice.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.contains("(1,0)"));
}
