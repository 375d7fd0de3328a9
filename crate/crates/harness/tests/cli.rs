use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn twr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twr")).args(args).output().expect("run twr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("twr-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn necklace_output_verifies() {
    let dir = scratch("necklace");
    let out = dir.join("n.json");
    assert_eq!(code(&twr(&["necklace", "--colors", "RBRB", "--k", "2", "--output", s(&out)])), 0);
    assert_eq!(code(&twr(&["verify", "--input", s(&out)])), 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["certificate"]["pass"], true);
}

#[test]
fn necklace_color_out_of_range_is_usage_error() {
    assert_eq!(code(&twr(&["necklace", "--colors", "0120", "--k", "2"])), 2);
}

#[test]
fn decompose_round_trip_and_malformed_input() {
    let dir = scratch("decompose");
    let good = dir.join("g.txt");
    std::fs::write(&good, "5\n0 1\n1 2\n2 3\n3 4\n").unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "3\n0 1 2\n").unwrap();
    let out = dir.join("d.json");
    assert_eq!(code(&twr(&["decompose", "--input", s(&bad)])), 2);
    assert_eq!(code(&twr(&["decompose", "--input", s(&good), "--output", s(&out)])), 0);
    assert_eq!(code(&twr(&["verify", "--input", s(&out)])), 0);
}

#[test]
fn unknown_flag_exits_2() {
    assert_eq!(code(&twr(&["experiment", "--bogus"])), 2);
    assert_eq!(code(&twr(&["frobnicate"])), 2);
}

#[test]
fn embedding_verifies_and_tampering_is_caught() {
    let dir = scratch("embed");
    let h = dir.join("h.txt");
    std::fs::write(&h, "6\n0 1\n1 2\n2 3\n3 4\n4 5\n").unwrap();
    let out = dir.join("e.json");
    assert_eq!(code(&twr(&["embed", "--input", s(&h), "--m", "40", "--output", s(&out)])), 0);
    assert_eq!(code(&twr(&["verify", "--input", s(&out)])), 0);

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    doc["embedding"]["map"][1] = doc["embedding"]["map"][0].clone();
    let tampered = dir.join("t.json");
    std::fs::write(&tampered, doc.to_string()).unwrap();
    assert_eq!(code(&twr(&["verify", "--input", s(&tampered)])), 1);
}

#[test]
fn host_and_color_chain() {
    let dir = scratch("host");
    let base = dir.join("b.txt");
    std::fs::write(&base, "3\n0 1\n1 2\n").unwrap();
    let host = dir.join("host.json");
    let colored = dir.join("colored.json");
    assert_eq!(code(&twr(&["host", "--input", s(&base), "--m", "4", "--within", "complete", "--output", s(&host)])), 0);
    assert_eq!(code(&twr(&["color", "--input", s(&host), "--k", "3", "--seed", "5", "--output", s(&colored)])), 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&colored).unwrap()).unwrap();
    assert_eq!(doc["coloring"]["k"], 3);
}

#[test]
fn experiment_reports_verify_and_repeat() {
    let dir = scratch("experiment");
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    let args = |out: &Path| {
        twr(&["experiment", "--family", "path:12:3", "--mode", "sparse", "--m", "24", "--trials", "3", "--seed", "7", "--output", s(out)])
    };
    assert_eq!(code(&args(&a)), 0);
    assert_eq!(code(&args(&b)), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(code(&twr(&["verify", "--input", s(&a)])), 0);
}

#[test]
fn experiment_reads_partial_config() {
    let dir = scratch("config");
    let config = dir.join("c.json");
    std::fs::write(&config, r#"{"family": {"kind": "grid", "side": 2}, "trials": 2, "m": 16}"#).unwrap();
    let out = dir.join("r.json");
    let csv = dir.join("r.csv");
    assert_eq!(code(&twr(&["experiment", "--config", s(&config), "--csv", s(&csv), "--output", s(&out)])), 0);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["summary"]["trials"], 2);
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 3);

    std::fs::write(&config, r#"{"trials": 2, "colour": 3}"#).unwrap();
    assert_eq!(code(&twr(&["experiment", "--config", s(&config)])), 2);
}
