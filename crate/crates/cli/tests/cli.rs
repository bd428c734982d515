//! End-to-end checks of the binary: table output, suite verdicts, exit
//! codes, determinism, and the exporters.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grasscoh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn gi_json_reports_vanishing_degrees() {
    let out = run(&["gi", "--k", "3", "--max", "64", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["vanishing"], serde_json::json!([5, 13, 29, 61]));
}

#[test]
fn gi_with_rank_five_has_empty_vanishing() {
    let out = run(&["gi", "--k", "5", "--max", "64", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["vanishing"].as_array().unwrap().len(), 0);
}

#[test]
fn gi_rejects_rank_one_as_usage_error() {
    let out = run(&["gi", "--k", "1", "--max", "8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn betti_of_oriented_5_2() {
    let out = run(&["betti", "--n", "5", "--k", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("betti: 1,0,1,0,1,0,1"));
}

#[test]
fn betti_json_of_16_3_reports_first_failure() {
    let out = run(&["betti", "--n", "16", "--k", "3", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["first_failure"], 15);
    // Duality: the Betti sequence is a palindrome.
    let betti = value["betti"].as_array().unwrap();
    let n = betti.len();
    for j in 0..n {
        assert_eq!(betti[j], betti[n - 1 - j]);
    }
}

#[test]
fn verify_unknown_suite_fails_with_engine_error() {
    let out = run(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_lemma21_passes_and_streams_records() {
    let out = run(&["verify", "lemma21", "--max", "256"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    for line in lines {
        let record: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(record["verdict"], "pass");
        assert_eq!(record["suite"], "lemma21");
        assert!(record.get("elapsed_ms").is_none());
    }
}

#[test]
fn verify_output_is_deterministic_across_jobs() {
    let a = run(&["verify", "thmA", "--jobs", "1"]);
    let b = run(&["verify", "thmA", "--jobs", "4"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn verify_thmb_single_n_passes() {
    let out = run(&["verify", "thmB", "--n", "14"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"check\":\"feasible-nonempty\""));
    assert!(text.contains("\"check\":\"p2-forced-zero\""));
}

#[test]
fn verify_relations_a_seeded_sample_is_stable() {
    let args = &[
        "verify",
        "relations-a",
        "--n",
        "12",
        "--samples",
        "500",
        "--seed",
        "99",
    ];
    let a = run(args);
    let b = run(args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn export_charrank_has_documented_columns() {
    let path = temp_path("charrank.csv");
    let out = run(&[
        "export",
        "--target",
        "charrank",
        "--path",
        path.to_str().unwrap(),
        "--n-min",
        "8",
        "--n-max",
        "10",
    ]);
    assert!(out.status.success());
    let content = std::fs::read_to_string(&path).unwrap();
    let mut lines = content.lines();
    assert_eq!(lines.next(), Some("n,charrank,ucharrank,first_failure"));
    assert_eq!(lines.next(), Some("8,6,6,7"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn export_cup_bounds_renders_exact_rationals() {
    let path = temp_path("cup.csv");
    let out = run(&[
        "export",
        "--target",
        "cup-bounds",
        "--path",
        path.to_str().unwrap(),
        "--t",
        "4",
    ]);
    assert!(out.status.success());
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.starts_with("n,lower,upper\n"));
    assert!(content.contains("12,7,17/2"));
    assert!(content.contains("14,29/3,23/2"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn export_empty_range_writes_header_only() {
    let path = temp_path("empty.csv");
    let out = run(&[
        "export",
        "--target",
        "charrank",
        "--path",
        path.to_str().unwrap(),
        "--n-min",
        "10",
        "--n-max",
        "9",
    ]);
    assert!(out.status.success());
    let content = std::fs::read_to_string(&path).unwrap();
    assert_eq!(content, "n,charrank,ucharrank,first_failure\n");
    std::fs::remove_file(&path).ok();
}

#[test]
fn export_resolves_against_out_dir_env() {
    let dir = std::env::temp_dir().join(format!("grasscoh-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_grasscoh"))
        .args([
            "export",
            "--target",
            "betti",
            "--path",
            "betti.csv",
            "--n",
            "5",
            "--k",
            "2",
        ])
        .env("GRASSCOH_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let content = std::fs::read_to_string(dir.join("betti.csv")).unwrap();
    assert!(content.starts_with("j,dim_base,ker,coker,betti\n"));
    std::fs::remove_dir_all(&dir).ok();
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("grasscoh-{}-{name}", std::process::id()))
}
