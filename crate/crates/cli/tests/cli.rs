//! End-to-end tests of the pencilforge binary: report contents, file
//! outputs, exit codes, determinism.

use std::process::{Command, Output};

fn pencilforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pencilforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_report(args: &[&str]) -> serde_json::Value {
    let out = pencilforge(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON report")
}

#[test]
fn molien_g8_reference_coefficients() {
    let report = json_report(&["molien", "--group", "g8", "--trunc", "14"]);
    assert_eq!(report["schema"], 1);
    let coeffs: Vec<u64> = report["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(coeffs, vec![1, 0, 1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 3, 0, 3]);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = pencilforge(&["--bad-flag"]);
    assert_eq!(out.status.code(), Some(1));
    let out = pencilforge(&["molien", "--group", "nope"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_cleanly() {
    let out = pencilforge(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("pencilforge"));
}

#[test]
fn group_report_for_g6() {
    let report = json_report(&["group", "--group", "g6"]);
    assert_eq!(report["order"], 288);
    let checks = report["generator_checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks.iter().all(|c| c["matches_reference"] == true));
    let sizes: usize = report["gl4_classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["size"].as_u64().unwrap() as usize)
        .sum();
    assert_eq!(sizes, 288);
}

#[test]
fn invariants_dimension_at_degree_six() {
    let report = json_report(&["invariants", "--group", "g6", "--degree", "6"]);
    assert_eq!(report["dimension"], 2);
    assert_eq!(report["convention"]["summation"], "distinct_monomials");
}

#[test]
fn pencil_g6_passes_and_lists_members() {
    let report = json_report(&["pencil", "--group", "g6"]);
    let members = report["members"].as_array().unwrap();
    let lambdas: Vec<&str> = members
        .iter()
        .map(|m| m["lambda"].as_str().unwrap())
        .collect();
    assert_eq!(lambdas, vec!["-1", "-2/3", "-7/12", "-1/4"]);
    assert!(members.iter().all(|m| m["node"] == true));
    assert!(report["base_locus"]["pass"] == true);
}

#[test]
fn audit_subcommand_runs_only_audits() {
    let report = json_report(&["audit", "--group", "g6"]);
    assert!(report["audits"].as_array().unwrap().len() >= 3);
    assert!(report.get("configurations").is_none());
}

#[test]
fn reports_are_deterministic() {
    let a = pencilforge(&["fixlines", "--group", "g6"]);
    let b = pencilforge(&["fixlines", "--group", "g6"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn render_writes_mesh_and_image() {
    let dir = tempfile::tempdir().unwrap();
    let mesh_path = dir.path().join("surface.obj");
    let image_path = dir.path().join("surface.ppm");
    let report = json_report(&[
        "render",
        "--n",
        "6",
        "--lambda",
        "-1/4",
        "--grid",
        "24",
        "--size",
        "48x36",
        "--mesh-out",
        mesh_path.to_str().unwrap(),
        "--image-out",
        image_path.to_str().unwrap(),
    ]);
    assert_eq!(report["residual_ok"], true);
    assert!(report["vertices"].as_u64().unwrap() > 0);
    let mesh_text = std::fs::read_to_string(&mesh_path).unwrap();
    assert!(mesh_text.starts_with("v "));
    assert!(mesh_text.contains("\nf "));
    let ppm = std::fs::read(&image_path).unwrap();
    assert!(ppm.starts_with(b"P6\n48 36\n255\n"));

    let bad = pencilforge(&["render", "--n", "7", "--lambda", "0"]);
    assert_eq!(bad.status.code(), Some(1));
    let bad_lambda = pencilforge(&["render", "--n", "6", "--lambda", "x+y"]);
    assert_eq!(bad_lambda.status.code(), Some(1));
}
