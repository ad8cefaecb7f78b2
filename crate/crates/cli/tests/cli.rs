//! End-to-end checks of the command-line surface.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_seplag"))
}

fn stdout_of(out: &std::process::Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn check_reports_separable_potential() {
    let out = bin()
        .args(["check", "--potential", "q1^2+q2^2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_of(&out);
    assert!(report.contains("separable: yes"), "{report}");
    assert!(report.contains("f = 1/2*x^2"), "{report}");
    assert!(report.contains("g = 1/2*y^2"), "{report}");
}

#[test]
fn check_renders_separated_equations() {
    let out = bin().args(["check", "--system", "sk"]).output().unwrap();
    let report = stdout_of(&out);
    assert!(report.contains("x'' = -x^2 - x"), "{report}");
    assert!(report.contains("y'' = y^2 - y"), "{report}");
    assert!(report.contains("Utilde = 1/3*q1^3 + q1*q2^2 + q1*q2"), "{report}");
}

#[test]
fn check_calogero_given_in_separated_form() {
    let out = bin()
        .args(["check", "--system", "calogero:af=1/4,ag=1/4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_of(&out);
    assert!(report.contains("f = 1/4*x^-2"), "{report}");
    assert!(report.contains("x'' = x^-3"), "{report}");
}

#[test]
fn missing_selector_is_a_usage_error() {
    let out = bin().args(["check"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_system_is_a_usage_error() {
    let out = bin().args(["check", "--system", "kepler"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_selector_rational_is_a_parse_error() {
    let out = bin().args(["check", "--system", "hh:b=x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn xy_frame_of_nonseparable_system_exits_3() {
    let out = bin()
        .args(["simulate", "--system", "hh:b=1", "--frame", "xy", "--dt", "0.1", "--t-end", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn nonseparable_q_frame_csv_has_no_k_column() {
    let out = bin()
        .args(["simulate", "--system", "hh:b=1", "--dt", "0.1", "--t-end", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout_of(&out);
    assert_eq!(csv.lines().next(), Some("t,q1,q2,v1,v2,E"));
}

#[test]
fn drift_prints_both_integrals() {
    let out = bin()
        .args(["drift", "--system", "sk", "--dt", "1e-2", "--t-end", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("maxRelDriftE = "), "{text}");
    assert!(text.contains("maxRelDriftK = "), "{text}");
    assert!(text.contains("steps = 1000"), "{text}");
}

#[test]
fn section_writes_q2_v2_csv() {
    let out = bin()
        .args([
            "section", "--system", "hh:b=-1", "--dt", "1e-2", "--t-end", "100",
            "--q1", "0.1", "--q2", "0.1", "--v1", "0.05", "--v2", "0.05",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout_of(&out);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("q2,v2"));
    assert!(lines.next().is_some(), "expected at least one crossing");
}

#[test]
fn fitlaw_recovers_the_sqrt_oracle() {
    let out = bin()
        .args([
            "fitlaw", "--system", "calogero:af=1/4,ag=1/4", "--frame", "xy",
            "--component", "x", "--q1", "1", "--q2", "1", "--v1", "0", "--v2", "0",
            "--dt", "1e-3", "--t-end", "10",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let coeff = |label: &str| -> f64 {
        text.lines()
            .find(|l| l.starts_with(label))
            .and_then(|l| l.split(" = ").nth(1))
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!((coeff("A") - 1.0).abs() < 1e-8, "{text}");
    assert!(coeff("B").abs() < 1e-8, "{text}");
    assert!((coeff("C") - 1.0).abs() < 1e-8, "{text}");
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let out = bin()
        .args([
            "simulate", "--system", "harmonic", "--dt", "0.1", "--t-end", "1",
            "--out", path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 12);
    assert!(csv.ends_with('\n'));
    assert!(!csv.contains(",\n"), "no trailing commas");
}

#[test]
fn help_documents_defaults() {
    let out = bin().args(["simulate", "--help"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let help = stdout_of(&out);
    for needle in ["[default: 0.001]", "[default: 100]", "[default: rk4]", "[default: q]"] {
        assert!(help.contains(needle), "missing {needle} in:\n{help}");
    }
}

#[test]
fn invalid_dt_is_a_usage_error() {
    let out = bin()
        .args(["simulate", "--system", "sk", "--dt", "0", "--t-end", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
