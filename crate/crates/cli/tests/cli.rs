use std::path::PathBuf;
use std::process::Command as Process;

use proptest::prelude::*;
use serde_json::Value;
use toric_nash_cli::{emit_report, parse_input, run_command, run_text, to_json, CliError, Command, Format, RunOptions};

fn inputs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../inputs")
}

fn run(command: Command, text: &str) -> Value {
    let (out, code) = run_text(text, command, &RunOptions::default(), Format::Json);
    assert_eq!(code, 0, "{out}");
    serde_json::from_str(&out).unwrap()
}

fn file(name: &str) -> String {
    std::fs::read_to_string(inputs().join(name)).unwrap()
}

#[test]
fn pair_document_with_sing() {
    let doc = parse_input(r#"{"kind": "pair", "dim": 2, "rays": [[1, 0], [1, 2]], "y": "sing"}"#).unwrap();
    assert_eq!(doc.kind(), "pair");
    let out = run(Command::Info, r#"{"kind": "pair", "dim": 2, "rays": [[1, 0], [1, 2]], "y": "sing"}"#);
    assert_eq!(out["results"]["y_faces"], serde_json::json!([[0, 1]]));
}

#[test]
fn validation_errors() {
    let err = parse_input(r#"{"kind": "cone", "dim": 2, "rays": [[1, 0], [2, 4]]}"#).unwrap_err();
    assert!(matches!(err, CliError::Validation(_)), "{err}");
    let err = parse_input(r#"{"kind": "cone", "dim": 2, "rays": [[1, 0], [0, 1], [1, 1]]}"#).unwrap_err();
    assert!(matches!(err, CliError::Validation(_)), "{err}");
    let err = parse_input(r#"{"kind": "pair", "dim": 2, "rays": [[1, 0], [0, 1]], "y": {"faces": [[]]}}"#).unwrap_err();
    assert!(matches!(err, CliError::Domain(toric_nash::Error::NotProper)), "{err}");
    let err = parse_input(r#"{"kind": "pair", "dim": 2, "rays": [[1, 0], [0, 1]], "y": "sing"}"#).unwrap_err();
    assert!(matches!(err, CliError::Domain(toric_nash::Error::EmptyY)), "{err}");
    let err = parse_input(r#"{"kind": "cone", "dim": 2, "rays": [[1, 0]], "extra": 1}"#).unwrap_err();
    assert_eq!(err.exit_code(), 1);
}

#[test]
fn parse_errors_are_positioned() {
    match parse_input("{\"kind\": \"cone\",\n  \"dim\": 2,,}") {
        Err(CliError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 12)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn nash_on_a2() {
    let out = run(Command::Nash, &file("a2_pair.json"));
    assert_eq!(out["results"]["W"], serde_json::json!([[1, 1], [1, 2]]));
    assert_eq!(out["results"]["bijective"], Value::Bool(true));
    assert_eq!(out["command"], "nash");
    assert!(out["version"].is_string());
}

#[test]
fn contact_on_quadrant() {
    let out = run(Command::Contact, &file("contact_quadrant.json"));
    assert_eq!(out["results"]["components"], serde_json::json!([[2, 2]]));
}

#[test]
fn stv_planes_at_origin() {
    let out = run(Command::StvNash, &file("stv_planes_at_origin.json"));
    assert_eq!(out["results"]["totals"], serde_json::json!({"essential_divisors": 2, "good_components": 2}));
    for name in ["stv_planes_along_line.json", "stv_plane_and_line.json"] {
        let out = run(Command::StvNash, &file(name));
        assert_eq!(out["results"]["totals"]["good_components"], 2);
        assert_eq!(out["results"]["bijective"], Value::Bool(true));
    }
}

#[test]
fn table_format() {
    let doc = parse_input(&file("a2_pair.json")).unwrap();
    let report = run_command(&doc, Command::Nash, &RunOptions::default()).unwrap();
    let table = emit_report(&report, Format::Table);
    assert!(table.contains("W (essential divisors):"));
    assert!(table.contains("[[1,1],[1,2]]"));
    assert!(!table.contains("NOT BIJECTIVE"));
    let mut failed = report.clone();
    failed.certification_failed = true;
    failed.results["failures"] = serde_json::json!([{"kind": "missing", "ray": [1, 2], "sample": 0}]);
    assert!(emit_report(&failed, Format::Table).contains("NOT BIJECTIVE: offending rays [1,2]"));
}

#[test]
fn json_is_canonical() {
    let (a, _) = run_text(&file("quadric_pair.json"), Command::Certify, &RunOptions::default(), Format::Json);
    let (b, _) = run_text(&file("quadric_pair.json"), Command::Certify, &RunOptions::default(), Format::Json);
    assert_eq!(a, b);
    assert!(!a.trim_end().contains(' '));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(serde_json::to_string(&v).unwrap(), a.trim_end());
    let spaced = file("quadric_pair.json").replace(", ", ",  ");
    let (c, _) = run_text(&spaced, Command::Certify, &RunOptions::default(), Format::Json);
    assert_eq!(a, c);
}

#[test]
fn oracle_cross_check() {
    let opts = RunOptions { oracle: true, ..RunOptions::default() };
    for (name, command) in [("a2_pair.json", Command::Nash), ("contact_quadrant.json", Command::Contact)] {
        let (out, code) = run_text(&file(name), command, &opts, Format::Json);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["results"]["oracle"]["agrees"], Value::Bool(true));
    }
}

#[test]
fn exit_codes() {
    let a2 = file("a2_pair.json");
    assert_eq!(run_text("{", Command::Nash, &RunOptions::default(), Format::Json).1, 1);
    assert_eq!(run_text(&a2, Command::Contact, &RunOptions::default(), Format::Json).1, 1);
    let capped = RunOptions { level_cap: Some(1), ..RunOptions::default() };
    assert_eq!(run_text(&a2, Command::Nash, &capped, Format::Json).1, 2);
    assert_eq!(CliError::Domain(toric_nash::Error::ConstructionFailed { ray: "x".into(), attempts: 1 }).exit_code(), 3);
    assert_eq!(CliError::Domain(toric_nash::Error::Internal("x".into())).exit_code(), 4);
    assert_eq!(CliError::OracleMismatch("x".into()).exit_code(), 4);
    let nested = toric_nash::Error::Component { index: 1, source: Box::new(toric_nash::Error::BudgetExceeded { cap: 1, needed: 2 }) };
    assert_eq!(CliError::Domain(nested).exit_code(), 2);
}

#[test]
fn binary_runs() {
    let bin = env!("CARGO_BIN_EXE_toric-nash");
    let out = Process::new(bin)
        .args(["nash", "--input"])
        .arg(inputs().join("a2_pair.json"))
        .args(["--format", "json", "--samples", "2", "--seed", "7"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["samples"], 2);
    let missing = Process::new(bin).args(["info", "--input", "/nonexistent.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
    let capped = Process::new(bin)
        .args(["nash", "--level-cap", "1", "--input"])
        .arg(inputs().join("quadric_pair.json"))
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn every_sample_input_round_trips() {
    for entry in std::fs::read_dir(inputs()).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let doc = parse_input(&text).unwrap();
        let again = parse_input(&to_json(&doc).to_string()).unwrap();
        assert_eq!(doc, again);
    }
}

fn cone_text(rays: &[Vec<i64>], y: &str) -> String {
    format!(r#"{{"kind": "pair", "dim": {}, "rays": {:?}, "y": {y}}}"#, rays[0].len(), rays)
}

proptest! {
    #[test]
    fn round_trip(rays in prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 2), seed_face in 0usize..3) {
        let y = match seed_face {
            0 => "\"sing\"".to_string(),
            1 => r#"{"faces": [[0]]}"#.to_string(),
            _ => r#"{"faces": [[1], [0, 1]]}"#.to_string(),
        };
        let text = cone_text(&rays, &y);
        if let Ok(doc) = parse_input(&text) {
            let emitted = to_json(&doc).to_string();
            let again = parse_input(&emitted).unwrap();
            prop_assert_eq!(&doc, &again);
            prop_assert_eq!(to_json(&again).to_string(), emitted);
        }
    }
}
