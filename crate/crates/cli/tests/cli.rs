use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_threegap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn gaps_golden_three() {
    let out = run(&["gaps", "--theta", "golden", "--n", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["distinct"], 3);
    let lengths: Vec<&str> = v["gaps"].as_array().unwrap().iter().map(|g| g["length"].as_str().unwrap()).collect();
    assert_eq!(lengths, ["0.1458980338", "0.2360679775", "0.3819660113"]);
}

#[test]
fn fb_b2() {
    let out = run(&["fb", "--b", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["f"], "1+2/sqrt(3)");
    assert!((v["decimal"].as_f64().unwrap() - 2.1547005).abs() < 1e-7);
    assert_eq!(v["lower"].as_f64().unwrap(), 0.5);
    assert!((v["upper"].as_f64().unwrap() - 3.7888544).abs() < 1e-7);
}

#[test]
fn diversity_csv_passes() {
    let out = run(&["diversity", "--theta", "golden", "--b", "1", "--rmax", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,max_agreement,bound,pass"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}

#[test]
fn convergence_csv() {
    let out = run(&["convergence", "--b", "1", "--nmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(3) == Some("1.894427191")));
}

#[test]
fn kron_silver() {
    let out = run(&["kron", "--theta", "sqrt2", "--beta", "9/10", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["n"].as_u64(), v["p"].as_str()), (Some(2), Some("0")));
    assert_eq!(v["within_bound"], true);
}

#[test]
fn witness_and_arrays() {
    let out = run(&["witness", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["witness"]["k_star"]["differs"]["k"], 28);
    assert_eq!(v["matches"], "statement");

    let out = run(&["arrays", "--n", "2", "--precision-digits", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let grid: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!((grid.len(), grid[0].len()), (10, 3));
    assert_eq!(grid[9][0], "0.0444919");
}

#[test]
fn sturmian_bits() {
    let out = run(&["sturmian", "--theta", "golden", "--n", "10"]);
    assert_eq!(json(&out)["bits"], "1011010110");
}

#[test]
fn verify_emits_json_lines() {
    let out = run(&["verify", "--cases", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 9);
    assert!(lines.iter().all(|l| l["agree"] == true && l["case_id"].is_string()));
}

#[test]
fn inline_json_theta_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gaps.csv");
    let theta = r#"{"a0":0,"prefix":[2],"period":[1,3]}"#;
    let out = run(&["gaps", "--theta", theta, "--n", "50", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("length,multiplicity\n"));
    assert!((3..=4).contains(&text.lines().count()));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["gaps", "--theta", "{oops", "--n", "3"]).status.code(), Some(64));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["gaps", "--theta", "golden"]).status.code(), Some(64));
    assert_eq!(run(&["kron", "--theta", "golden", "--beta", "half", "--n", "3"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    // domain errors
    assert_eq!(run(&["gaps", "--theta", "golden", "--n", "0"]).status.code(), Some(1));
    assert_eq!(run(&["witness", "--n", "1"]).status.code(), Some(1));
    assert_eq!(run(&["kron", "--theta", "golden", "--beta", "3/2", "--n", "3"]).status.code(), Some(1));
    let rational = r#"{"a0":0,"prefix":[2,3]}"#;
    assert_eq!(run(&["gaps", "--theta", rational, "--n", "7"]).status.code(), Some(1));
}

#[test]
fn failed_verification_maps_to_two() {
    let e = threegap_cli::Emitted {
        text: String::new(),
        verified: false,
    };
    assert_eq!(e.exit_code(), threegap_cli::EXIT_VERIFICATION);
    assert_eq!(threegap_cli::EXIT_VERIFICATION, 2);
}
