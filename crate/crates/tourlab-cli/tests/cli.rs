//! End-to-end checks of the binary: exit codes, stdout schemas, and the
//! plant / verify / refine / replay pipeline through files.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tourlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn exit_codes() {
    // 0: success.
    assert_eq!(code(&run(&["tr", "--named", "k6"])), 0);
    // 1: nothing found / verification failure.
    assert_eq!(code(&run(&["homog", "--named", "c5"])), 1);
    assert_eq!(code(&run(&["galaxy", "--named", "k6"])), 1);
    assert_eq!(code(&run(&["iso", "named:l1", "named:l1c"])), 1);
    // 2: usage problems.
    assert_eq!(code(&run(&["tr", "--bogus-flag"])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
    assert_eq!(code(&run(&["canon", "--named", "k9"])), 2);
    assert_eq!(code(&run(&["canon", "/no/such/file.trn"])), 2);
}

#[test]
fn enumerate_jsonl_counts() {
    let out = run(&["enumerate", "--n", "6", "--format", "jsonl"]);
    assert_eq!(code(&out), 0);
    let lines: Vec<&str> = std::str::from_utf8(&out.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 56);
    let first: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(first["n"], 6);
    assert_eq!(first["index"], 0);
    assert!(first["bits"].as_str().unwrap().len() == 15);

    // Parallel sweep is byte-identical.
    let par = run(&["enumerate", "--n", "6", "--format", "jsonl", "--jobs", "4"]);
    assert_eq!(out.stdout, par.stdout);
}

#[test]
fn forest_count_of_named_k6() {
    let out = run(&["forest-count", "--named", "k6"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["count"], 24);
    assert_eq!(v["orderings"].as_array().unwrap().len(), 24);
}

#[test]
fn verify_lemma22_is_green() {
    let out = run(&["verify-lemma22", "--jobs", "4"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["classes"], 56);
    assert_eq!(v["all_nonempty"], true);
}

#[test]
fn classify6_single_and_report() {
    let out = run(&["classify6", "--named", "l2"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert!(v["outcomes"].as_array().unwrap().contains(&Value::from(4)));

    let dir = std::env::temp_dir();
    let report = dir.join("tourlab-test-classify.jsonl");
    let out = run(&["classify6", "--all", "--report", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&report).unwrap();
    assert_eq!(text.lines().count(), 56);
    for line in text.lines() {
        let record: Value = serde_json::from_str(line).unwrap();
        assert!(!record["outcomes"].as_array().unwrap().is_empty());
    }
    std::fs::remove_file(&report).ok();
}

#[test]
fn density_and_thresholds() {
    let out = run(&["density", "--named", "c5", "--x", "1", "--y", "2,3"]);
    let v = stdout_json(&out);
    assert_eq!(v["num"], 1);
    assert_eq!(v["den"], 1);

    let out = run(&["thresholds", "--c", "1/2", "--f", "1/2", "--n", "2"]);
    let v = stdout_json(&out);
    assert!((v["merge_bound"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["size_bound"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn canon_and_random_are_trn1() {
    let out = run(&["random", "--n", "6", "--seed", "11"]);
    assert_eq!(code(&out), 0);
    let text = std::str::from_utf8(&out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "6");
    assert_eq!(lines.next().unwrap().len(), 15);

    let again = run(&["random", "--n", "6", "--seed", "11"]);
    assert_eq!(out.stdout, again.stdout);

    let out = run(&["canon", "--named", "c5"]);
    let text = std::str::from_utf8(&out.stdout).unwrap();
    assert!(text.starts_with("5\n"));
}

#[test]
fn export_dot_marks_backward_arcs() {
    let out = run(&["export-dot", "--named", "k6", "--ordering", "1,2,3,4,5,6"]);
    let text = std::str::from_utf8(&out.stdout).unwrap();
    assert_eq!(text.matches("backward=true").count(), 4);
    assert!(text.starts_with("digraph"));
}

#[test]
fn plant_verify_refine_replay_pipeline() {
    let dir = std::env::temp_dir();
    let host: PathBuf = dir.join("tourlab-test-host.trn");
    let chain: PathBuf = dir.join("tourlab-test-chain.json");

    let out = run(&[
        "plant",
        "--pattern",
        "l2",
        "--case",
        "mirror-u",
        "--seed",
        "3",
        "--tournament-out",
        host.to_str().unwrap(),
        "--chain-out",
        chain.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);

    let out = run(&[
        "verify-structure",
        host.to_str().unwrap(),
        "--chain",
        chain.to_str().unwrap(),
        "--smooth",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["ok"], true);

    let out = run(&[
        "replay",
        host.to_str().unwrap(),
        "--chain",
        chain.to_str().unwrap(),
        "--pattern",
        "l2",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["outcome"], "embedding");
    assert_eq!(v["ordering_name"], "cyclic");
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
    assert!(v["trace"]
        .as_array()
        .unwrap()
        .iter()
        .any(|s| s.as_str().unwrap() == "case-MIRROR-U"));

    let out = run(&[
        "refine",
        host.to_str().unwrap(),
        "--chain",
        chain.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let refined = stdout_json(&out);
    assert_eq!(refined["w"].as_array().unwrap().len(), 6);

    std::fs::remove_file(&host).ok();
    std::fs::remove_file(&chain).ok();
}

#[test]
fn match_merge_contains_substitute() {
    let out = run(&[
        "match", "--named", "c5", "--x", "1,2", "--y", "3,4", "--m", "1",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert!(v["pairs"].is_array());

    let out = run(&["merge", "--named", "c5", "--a", "1", "--b", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["merged"].as_array().unwrap().len(), 2);

    let out = run(&["contains", "named:l1", "named:c5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["embedding"].as_array().unwrap().len(), 5);

    let out = run(&["contains", "named:c5", "named:k6"]);
    assert_eq!(code(&out), 1);

    let out = run(&["substitute", "named:c5", "named:c5", "--vertex", "1"]);
    assert_eq!(code(&out), 0);
    assert!(std::str::from_utf8(&out.stdout).unwrap().starts_with("9\n"));
}

#[test]
fn find_structure_on_planted_host() {
    let dir = std::env::temp_dir();
    let host = dir.join("tourlab-test-fs-host.trn");
    let out = run(&[
        "plant",
        "--pattern",
        "l2",
        "--case",
        "both",
        "--seed",
        "5",
        "--tournament-out",
        host.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&[
        "find-structure",
        host.to_str().unwrap(),
        "--w",
        "0,0,1,0,0,0",
        "--c",
        "1/12",
        "--lambda",
        "1/4",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["sets"].as_array().unwrap().len(), 6);

    // Unsatisfiable bound: nothing found, exit 1.
    let out = run(&[
        "find-structure",
        host.to_str().unwrap(),
        "--w",
        "0,0",
        "--c",
        "3/2",
        "--lambda",
        "1/4",
    ]);
    assert_eq!(code(&out), 1);
    std::fs::remove_file(&host).ok();
}

#[test]
fn critical_command_exit_codes() {
    // A cyclic triangle is critical just above log_3(2).
    let dir = std::env::temp_dir();
    let path = dir.join("tourlab-test-triangle.trn");
    std::fs::write(&path, "3\n110").unwrap(); // 1->2, 1->3, 2->3? keep: bits (1,2),(1,3),(2,3)
    let out = run(&["critical", path.to_str().unwrap(), "--epsilon", "7/11"]);
    // "110" is transitive-ish; build the cyclic one: 1->2, 3->1, 2->3 = bits 1,0,1
    std::fs::write(&path, "3\n101").unwrap();
    let cyc = run(&["critical", path.to_str().unwrap(), "--epsilon", "7/11"]);
    assert_eq!(code(&cyc), 0);
    assert_eq!(stdout_json(&cyc)["critical"], true);
    // The transitive variant is not critical.
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["critical"], false);
    std::fs::remove_file(&path).ok();
}
