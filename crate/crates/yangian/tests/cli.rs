//! End-to-end checks of the command-line driver: exit statuses, report
//! determinism, and the export format.

use std::process::{Command, Output};

fn yangian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yangian"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn passing_suite_exits_zero() {
    let out = yangian(&["verify", "cybe", "--max-mode", "2"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS"));
    assert!(text.contains("0 failed"));
}

#[test]
fn corrupted_table_exits_one_with_residuals() {
    let out = yangian(&[
        "verify",
        "hopf",
        "--max-mode",
        "2",
        "--corrupt",
        "table",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("report is valid json");
    assert_eq!(json["schema_version"], 1);
    let checks = json["checks"].as_array().unwrap();
    let failing: Vec<_> = checks.iter().filter(|c| c["status"] == "fail").collect();
    assert!(!failing.is_empty());
    for c in failing {
        assert!(c["residual"].is_string(), "failing record missing residual");
    }
}

#[test]
fn corrupted_exponent_exits_three() {
    let out = yangian(&["verify", "ybe", "--corrupt", "exponent"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    let out = yangian(&["verify", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = yangian(&["verify", "cybe", "--max-mode", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = yangian(&["export", "unknown"]);
    assert_eq!(out.status.code(), Some(2));
    // clap's own usage failure
    let out = yangian(&["--definitely-not-a-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = yangian(&["verify", "colie", "--max-mode", "2", "--format", "json"]);
    let b = yangian(&["verify", "colie", "--max-mode", "2", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn export_golden_lines() {
    let out = yangian(&["export", "y_sl2", "--max-mode", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[e0, f1] = h1"), "{text}");
    assert!(text.contains("[e1, e0] = hbar*e0*e0"), "{text}");

    let out = yangian(&["export", "boundary", "--max-mode", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[e0, f0] = ((p)/(2))*hp0"), "{text}");

    let out = yangian(&["export", "factor", "--max-mode", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[e0, f0] = 0"), "{text}");
    assert!(
        text.contains("D(h1) = h1 (x) 1 + ((-4)*p)*f0 (x) e0 + 1 (x) h1") || text.contains("-4*p"),
        "{text}"
    );
}

#[test]
fn json_schema_shape() {
    let out = yangian(&["verify", "series", "--max-mode", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["tool"], "yangian");
    assert_eq!(json["config"]["suite"], "series");
    assert_eq!(json["config"]["max_mode"], 2);
    assert!(json["passed"].as_u64().unwrap() > 0);
    assert_eq!(json["failed"], 0);
    assert_eq!(json["errored"], 0);
    // No timing fields unless requested.
    for c in json["checks"].as_array().unwrap() {
        assert!(c.get("wall_ms").is_none());
    }
}
