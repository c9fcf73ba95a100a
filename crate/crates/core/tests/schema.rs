use std::process::Command;

use k3aut::record::{classify_request, ClassificationRecord, LatticeRequest};
use serde_json::Value;

fn schema() -> jsonschema::JSONSchema {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/schema.json");
    let text = std::fs::read_to_string(path).expect("schema present");
    let value: Value = serde_json::from_str(&text).expect("schema is JSON");
    jsonschema::JSONSchema::compile(&value).expect("schema compiles")
}

fn run_json(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_k3aut"))
        .args(args)
        .arg("--json")
        .output()
        .expect("binary runs");
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn assert_valid(schema: &jsonschema::JSONSchema, v: &Value) {
    if let Err(errors) = schema.validate(v) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("schema violations {msgs:?} in {v}");
    }
}

const GOLDEN: &[&[&str]] = &[
    &["classify", "-a", "1", "-b", "4", "-c", "1"],
    &["classify", "-a", "2", "-b", "6", "-c", "2"],
    &["classify", "-a", "1", "-b", "3", "-c", "1"],
    &["classify", "-a", "1", "-b", "3", "-c", "2"],
    &["classify", "-a", "2", "-b", "4", "-c", "2"],
    &["classify", "-a", "-2", "-b", "8", "-c", "3"],
    &["generator", "-a", "2", "-b", "8", "-c", "2"],
    &["involutions", "-a", "1", "-b", "7", "-c", "1"],
    &["entropy", "-a", "1", "-b", "0", "-c", "-3"],
    &["quartic", "--deg", "6", "--genus", "3"],
    &["quartic", "--deg", "4", "--genus", "3"],
    &["quartic", "--deg", "5", "--genus", "3"],
    &["pell", "5", "--norm", "4", "--all-below", "50"],
    &["pell", "20", "--norm", "-8"],
    &["pell", "9", "--norm", "1"],
    &["pell", "661"],
    &["represent", "-a", "1", "-b", "3", "-c", "1", "-k", "-1"],
    &["orbit", "-a", "1", "-b", "4", "-c", "1", "--start", "1,0", "-N", "8"],
];

#[test]
fn golden_outputs_validate() {
    let schema = schema();
    for args in GOLDEN {
        assert_valid(&schema, &run_json(args));
    }
}

#[test]
fn records_round_trip() {
    let schema = schema();
    for (a, b, c) in [(1, 4, 1), (2, 6, 2), (1, 3, 1), (2, 4, 2), (3, 17, -5), (1, 0, -3)] {
        let rec = classify_request(&LatticeRequest::gram(a, b, c), 12);
        let json = serde_json::to_value(&rec).unwrap();
        assert_valid(&schema, &json);
        let back: ClassificationRecord = serde_json::from_value(json).unwrap();
        assert_eq!(back, rec);
    }
}

#[test]
fn large_integers_stay_exact() {
    let v = run_json(&["pell", "661"]);
    assert_eq!(v["unit"][0], "16421658242965910275055840472270471049");
}

#[test]
fn schema_rejects_bad_records() {
    let schema = schema();
    let mut v = run_json(&["classify", "-a", "1", "-b", "4", "-c", "1"]);
    v["variant"] = "abelian".into();
    assert!(!schema.is_valid(&v));
    let mut v = run_json(&["classify", "-a", "1", "-b", "4", "-c", "1"]);
    v["d"] = 12.into();
    assert!(!schema.is_valid(&v));
}
