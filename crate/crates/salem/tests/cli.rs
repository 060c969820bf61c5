//! End-to-end CLI tests: JSON schema conformance, exit codes, parser
//! behavior through the binary, and deterministic search output.

use std::process::{Command, Output};

use serde_json::Value;

fn salem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_salem"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap_or_else(|e| {
        panic!(
            "stderr is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../schema/output.schema.json"
    ))
    .expect("schema file");
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).expect("valid schema")
}

fn assert_valid(validator: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}\ndoc: {doc}");
}

#[test]
fn all_commands_validate_against_schema() {
    let v = schema();
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (
            vec!["analyze", "--field", "3", "--poly", "Y^3+(X+1)*Y^2+X^2*Y-X^2+2"],
            0,
        ),
        (
            vec!["classify", "--field", "3", "--poly", "Y^3+(X+1)*Y^2+X^2*Y-X^2+2"],
            0,
        ),
        (
            vec![
                "expand",
                "--field",
                "2",
                "--poly",
                "Y^3+(X+1)*Y^2+(X^4+X^3)*Y+X^4+X^3+X^2+X+1",
                "--precision",
                "12",
            ],
            0,
        ),
        (
            vec!["power", "--field", "3", "--poly", "Y^4+X^2*Y^2+2*X^2", "--n", "2"],
            0,
        ),
        (
            vec![
                "irreducible",
                "--field",
                "3",
                "--poly",
                "Y^5+X^4*Y^4+X^5*Y^3+X^5*Y^2+X^3*Y+1",
            ],
            0,
        ),
        (
            vec![
                "certify",
                "--field",
                "3",
                "--poly",
                "Y^5+X^4*Y^4+X^5*Y^3+X^5*Y^2+X^3*Y+1",
                "--precision",
                "8",
            ],
            0,
        ),
        (
            vec![
                "search",
                "--field",
                "3",
                "--n",
                "3",
                "--shape",
                "0,1,1",
                "--precision",
                "6",
            ],
            0,
        ),
        (vec!["verify-paper"], 0),
        // negative verdicts still emit schema-conformant documents
        (vec!["irreducible", "--field", "3", "--poly", "Y^2-X^2"], 1),
        (
            vec![
                "certify",
                "--field",
                "3",
                "--poly",
                "Y^4+X^2*Y^2+2*X^2",
                "--precision",
                "8",
            ],
            1,
        ),
        // extension field with explicit modulus
        (
            vec![
                "analyze",
                "--field",
                "3^2",
                "--modulus",
                "X^2+1",
                "--poly",
                "Y^3+X*Y^2+X^2*Y+X+1",
            ],
            0,
        ),
    ];
    for (args, want_code) in cases {
        let out = salem(&args);
        assert_eq!(
            out.status.code(),
            Some(want_code),
            "exit code for {args:?}: stderr {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_valid(&v, &stdout_json(&out));
    }
}

#[test]
fn usage_and_resource_exit_codes() {
    let v = schema();
    // parse error: implicit multiplication
    let out = salem(&["analyze", "--field", "3", "--poly", "X Y"]);
    assert_eq!(out.status.code(), Some(2));
    assert_valid(&v, &stderr_json(&out));
    // invalid field
    let out = salem(&["analyze", "--field", "4", "--poly", "Y"]);
    assert_eq!(out.status.code(), Some(2));
    // non-monic input
    let out = salem(&["analyze", "--field", "3", "--poly", "X*Y^2+1"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown flag is a usage error
    let out = salem(&["analyze", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    // resource bound: search space above the cap
    let out = salem(&[
        "search",
        "--field",
        "3",
        "--n",
        "3",
        "--shape",
        "3,3,3",
        "--max-candidates",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_valid(&v, &stderr_json(&out));
    // resource bound: power map too large
    let out = salem(&["power", "--field", "3", "--poly", "Y^3+X*Y+1", "--n", "25"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn poly_field_round_trips_through_parser() {
    for (field, poly) in [
        ("2", "Y^3+(X+1)*Y^2+(X^4+X^3)*Y+X^4+X^3+X^2+X+1"),
        ("3", "Y^5+X^4*Y^4+X^5*Y^3+X^5*Y^2+X^3*Y+1"),
        ("3", "Y^4-2*X^2*Y^2+2*X^2"),
    ] {
        let out = salem(&["analyze", "--field", field, "--poly", poly]);
        let doc = stdout_json(&out);
        let printed = doc["poly"].as_str().unwrap();
        // feeding the canonical form back yields the identical document
        let again = salem(&["analyze", "--field", field, "--poly", printed]);
        assert_eq!(doc, stdout_json(&again));
    }
}

#[test]
fn search_is_deterministic_and_reports_cardinality() {
    let args = [
        "search", "--field", "3", "--n", "3", "--shape", "1,2,2", "--precision", "6",
    ];
    let a = stdout_json(&salem(&args));
    let mut with_jobs: Vec<&str> = args.to_vec();
    with_jobs.extend(["--jobs", "4"]);
    let b = stdout_json(&salem(&with_jobs));
    assert_eq!(a, b, "parallel search must re-sequence deterministically");
    assert_eq!(a["cardinality"].as_u64(), Some(1944));
    // the F_3 cubic with dominant pair X and X+1 is among the certified hits
    let hits = a["hits"].as_array().unwrap();
    assert!(hits
        .iter()
        .any(|h| h["poly"].as_str().unwrap() == "Y^3 + (X + 1)*Y^2 + (X^2)*Y + 2*X^2 + 2"));
    // contradictory constraints: empty stream, zero summary
    let empty = stdout_json(&salem(&[
        "search", "--field", "3", "--n", "3", "--shape", "2..1,1,1",
    ]));
    assert_eq!(empty["cardinality"].as_u64(), Some(0));
    assert_eq!(empty["hits"].as_array().unwrap().len(), 0);
    assert!(empty["summary"].as_object().unwrap().is_empty());
}

#[test]
fn pretty_mode_respects_no_color() {
    let out = Command::new(env!("CARGO_BIN_EXE_salem"))
        .args(["classify", "--field", "3", "--poly", "Y^3+X*Y+1", "--pretty"])
        .env("NO_COLOR", "1")
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(!text.contains('\x1b'), "NO_COLOR output must be plain: {text}");
    assert!(text.contains("class:"));
    let colored = Command::new(env!("CARGO_BIN_EXE_salem"))
        .args(["classify", "--field", "3", "--poly", "Y^3+X*Y+1", "--pretty"])
        .env_remove("NO_COLOR")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&colored.stdout).contains('\x1b'));
}

#[test]
fn verify_paper_passes() {
    let out = salem(&["verify-paper"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["ok"], Value::Bool(true));
    assert!(doc["checks"].as_array().unwrap().len() >= 7);
}
