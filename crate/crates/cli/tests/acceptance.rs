//! End-to-end checks against the real binary, including the byte-identity
//! acceptance criterion for the `suite` subcommand.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_proxring"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("proxring-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir
}

#[test]
fn acceptance_6_suite_reports_are_byte_identical() {
    let args = [
        "suite",
        "--family",
        "modular",
        "--n-points",
        "8",
        "--seed",
        "1",
        "--samples",
        "100",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(
        first.stdout, second.stdout,
        "human suite reports differ between runs"
    );

    let margs = [
        "--machine",
        "suite",
        "--family",
        "modular",
        "--n-points",
        "8",
        "--seed",
        "1",
        "--samples",
        "100",
    ];
    let mfirst = run(&margs);
    let msecond = run(&margs);
    assert!(mfirst.status.success());
    assert_eq!(
        mfirst.stdout, msecond.stdout,
        "machine suite reports differ between runs"
    );
    assert_ne!(first.stdout, mfirst.stdout);

    let json: serde_json::Value = serde_json::from_slice(&mfirst.stdout).expect("valid JSON");
    assert_eq!(json["kind"], "suite");
    assert_eq!(json["replay_failures"], 0);
    println!(
        "ACCEPT-6 determinism (cli): byte-identical suite reports, {} bytes human / {} bytes machine: PASS",
        first.stdout.len(),
        mfirst.stdout.len()
    );
}

#[test]
fn fixtures_round_trip_and_reproduce_verdicts() {
    let dir = temp_dir("fixtures");
    let dir_s = dir.to_str().unwrap();
    let out = run(&["fixtures", "--dir", dir_s]);
    assert!(out.status.success());

    for name in ["F-Z2", "F-Z4p", "F-Z6i", "F-Z8i", "F-R013", "F-Z2xZ2"] {
        assert!(
            dir.join(format!("{name}.inst")).is_file(),
            "{name}.inst missing"
        );
    }

    // The emitted files are valid inputs and reproduce the documented facts.
    let z4p = dir.join("F-Z4p.inst");
    let out = run(&[
        "--machine",
        "classify",
        z4p.to_str().unwrap(),
        "--ideal",
        "W0",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["verdicts"]["ideal"]["verdict"], "holds");
    assert_eq!(json["verdicts"]["prime"]["verdict"], "fails");
    assert_eq!(
        json["verdicts"]["prime"]["witness"]["points"],
        serde_json::json!(["p1", "p2"])
    );
    assert_eq!(json["verdicts"]["primary"]["verdict"], "fails");
    assert_eq!(
        json["verdicts"]["primary"]["witness"]["points"],
        serde_json::json!(["p2", "p1"])
    );
    assert_eq!(json["verdicts"]["one_absorbing"]["verdict"], "holds");
    assert_eq!(json["radical"], serde_json::json!(["p0", "p2"]));

    let z8 = dir.join("F-Z8i.inst");
    let out = run(&[
        "--machine",
        "quotient",
        z8.to_str().unwrap(),
        "--ideal",
        "W04",
    ]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["well_defined"], true);
    assert_eq!(json["zero_divisors"], serde_json::json!([2]));
    assert_eq!(json["cosets"][2], serde_json::json!(["p2", "p6"]));

    // Round-trip: a reparsed serialization classifies identically.
    let text = std::fs::read_to_string(&z4p).unwrap();
    let copy = dir.join("copy.inst");
    std::fs::write(&copy, &text).unwrap();
    let again = run(&[
        "--machine",
        "classify",
        copy.to_str().unwrap(),
        "--ideal",
        "W0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let first = run(&[
        "--machine",
        "classify",
        z4p.to_str().unwrap(),
        "--ideal",
        "W0",
    ]);
    assert_eq!(stdout(&first), stdout(&again));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn classify_witnesses_reverify_through_the_library() {
    let dir = temp_dir("witness");
    run(&["fixtures", "--dir", dir.to_str().unwrap()]);
    let z4p = dir.join("F-Z4p.inst");
    let out = run(&[
        "--machine",
        "classify",
        z4p.to_str().unwrap(),
        "--ideal",
        "W0",
    ]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();

    // Re-derive the printed prime witness against the instance semantics.
    let text = std::fs::read_to_string(&z4p).unwrap();
    let parsed = proxring::format::parse_instance(&text, 64).unwrap();
    let inst = &parsed.instance;
    let w = parsed.ideals["W0"];
    let points: Vec<usize> = json["verdicts"]["prime"]["witness"]["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| parsed.point_index(v.as_str().unwrap()).unwrap())
        .collect();
    let (a, b) = (points[0], points[1]);
    let upper_w = inst.space().upper_approx(w);
    assert!(upper_w.contains(inst.mul(a, b)));
    assert!(!w.contains(a) && !w.contains(b));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn exit_codes_separate_validation_from_feasibility() {
    let dir = temp_dir("exitcodes");

    let bad = dir.join("broken.inst");
    std::fs::write(&bad, "points a b\nfeatures a 0\nfeatures b 1\nadd\n0 1 1\n").unwrap();
    let out = run(&["classify", bad.to_str().unwrap(), "--ideal", "W"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("line 5"),
        "parse errors cite their line: {err}"
    );

    let out = run(&["suite", "--family", "exhaustive", "--n-points", "8"]);
    assert_eq!(out.status.code(), Some(2));

    run(&["fixtures", "--dir", dir.to_str().unwrap()]);
    let out = bin()
        .env("PROXRING_MAX_POINTS", "3")
        .args([
            "classify",
            dir.join("F-Z4p.inst").to_str().unwrap(),
            "--ideal",
            "W0",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "environment default applies");

    let out = run(&[
        "radical",
        dir.join("F-Z4p.inst").to_str().unwrap(),
        "--ideal",
        "W0",
    ]);
    assert_eq!(out.status.code(), Some(0));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn suite_accepts_a_theorem_selection() {
    let out = run(&[
        "--machine",
        "suite",
        "--samples",
        "5",
        "--theorems",
        "THM-A,THM-L",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let claims = json["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 2);
    assert_eq!(claims[0]["theorem"], "THM-A");
    assert_eq!(claims[1]["theorem"], "THM-L");

    let out = run(&["suite", "--theorems", "THM-Q"]);
    assert_eq!(out.status.code(), Some(1));
}
