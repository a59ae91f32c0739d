use std::process::Command;

use theta_verify::{Report, Status};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_theta-verify"))
}

#[test]
fn table_subcommand_prints_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["table", "Sp2", "--q", "3", "--cache-dir"]).arg(dir.path()).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["label"], "Sp2(3)");
    assert_eq!(v["characters"].as_array().unwrap().len(), 7);
}

#[test]
fn weil_subcommand_lists_traces() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["weil", "Sp2", "--q", "5", "--cache-dir"]).arg(dir.path()).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let first: Vec<&str> = text.lines().next().unwrap().split('\t').collect();
    assert_eq!(first, ["0", "1", "1", "5"]);
}

#[test]
fn theta_subcommand_keeps_dimension_bookkeeping() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["theta", "Sp2", "O3-", "--q", "3", "--cache-dir"]).arg(dir.path()).output().unwrap();
    assert!(out.status.success());
    let mm: theta_core::weil::MultiplicityJson = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(mm.total_dim, "27");
    mm.verify_dimension().unwrap();
}

#[test]
fn verify_then_report_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let text = dir.path().join("r.txt");
    let status = bin()
        .args(["verify", "--q", "3,5", "--suite", "pan,howe", "--cache-dir"])
        .arg(dir.path().join("cache"))
        .arg("--out")
        .arg(&json)
        .arg("--text")
        .arg(&text)
        .status()
        .unwrap();
    assert!(status.success());
    let report: Report = serde_json::from_slice(&std::fs::read(&json).unwrap()).unwrap();
    assert_eq!(report.results.len(), 4);
    assert!(report.results.iter().all(|r| r.status == Status::Verified && r.duration_ms.is_none()));
    let rendered = bin().arg("report").arg(&json).output().unwrap();
    assert_eq!(rendered.stdout, std::fs::read(&text).unwrap());
}

#[test]
fn bad_input_fails_cleanly() {
    for args in [vec!["table", "GL2"], vec!["verify", "--q", "9"], vec!["verify", "--suite", "nope"]] {
        let out = bin().args(&args).output().unwrap();
        assert!(!out.status.success(), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("theta-verify: "), "{args:?}");
    }
}
