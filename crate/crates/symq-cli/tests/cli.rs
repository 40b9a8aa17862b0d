//! End-to-end CLI contract tests: exit codes, output formats, filters.

use std::process::Command;

fn symq() -> Command {
    Command::new(env!("CARGO_BIN_EXE_symq"))
}

#[test]
fn help_runs() {
    let out = symq().arg("--help").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for sub in ["list", "verify", "suite", "compute"] {
        assert!(text.contains(sub), "help misses {sub}");
    }
}

#[test]
fn verify_pass_exits_zero_with_valid_json() {
    let out = symq()
        .args(["verify", "--id", "master", "--vars", "2", "--max-deg", "3", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    symq_core::identity::validate_report_value(&v).unwrap();
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["params"]["n"], 2);
    assert_eq!(v["params"]["D"], 3);
}

#[test]
fn verify_unknown_id_exits_two() {
    let out = symq().args(["verify", "--id", "no.such.id"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("unknown identity id"), "stderr: {err}");
}

#[test]
fn injected_failure_exits_one() {
    let out = symq()
        .args(["verify", "--id", "selftest.mutation", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    symq_core::identity::validate_report_value(&v).unwrap();
    assert_eq!(v["status"], "FAIL");
    assert!(!v["mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn list_contains_catalogue() {
    let out = symq().arg("list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.len() >= 25, "only {} ids", lines.len());
    for id in ["master", "hl.kawanaka.i6", "prop2.rr"] {
        assert!(text.contains(id), "missing {id}");
    }
}

#[test]
fn list_glob_filters_exactly() {
    let out = symq().args(["list", "--glob", "mac.*"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let mut ids: Vec<&str> = text.lines().filter_map(|l| l.split_whitespace().next()).collect();
    ids.sort();
    assert_eq!(ids, vec!["mac.p349", "mac.pb", "mac.pc"]);
}

#[test]
fn list_json_round_trips() {
    let out = symq().args(["list", "--format", "json"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let arr = v.as_array().unwrap();
    assert!(arr.len() >= 25);
    for entry in arr {
        assert!(entry["id"].is_string() && entry["anchor"].is_string());
    }
}

#[test]
fn compute_hall_littlewood_polynomial() {
    let out = symq()
        .args(["compute", "hl-poly", "--lambda", "2,1", "--vars", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "x1^2*x2 + x1*x2^2");
}

#[test]
fn compute_more_objects() {
    let schur = symq()
        .args(["compute", "schur", "--lambda", "2", "--vars", "2"])
        .output()
        .unwrap();
    assert_eq!(
        String::from_utf8(schur.stdout).unwrap().trim(),
        "x1^2 + x1*x2 + x2^2"
    );
    let rs = symq()
        .args(["compute", "rogers-szego", "--m", "2"])
        .output()
        .unwrap();
    let text = String::from_utf8(rs.stdout).unwrap();
    assert!(text.contains("z^2"), "H_2 output: {text}");
    let b = symq()
        .args(["compute", "b-lambda", "--lambda", "2"])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(b.stdout).unwrap().trim(), "1 + a*b");
}

#[test]
fn suite_smoke_parallel_and_out_file() {
    let dir = std::env::temp_dir().join("symq-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("suite.json");
    let out = symq()
        .args([
            "suite",
            "--preset",
            "smoke",
            "--glob",
            "schur.*",
            "--jobs",
            "2",
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let data = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&data).unwrap();
    for r in v.as_array().unwrap() {
        symq_core::identity::validate_report_value(r).unwrap();
        assert_eq!(r["status"], "PASS");
    }
    std::fs::remove_file(&path).ok();
}

#[test]
fn suite_propagates_failure_exit() {
    let out = symq()
        .args(["suite", "--preset", "smoke", "--glob", "selftest.*"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
