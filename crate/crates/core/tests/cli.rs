use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn k3aut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3aut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn classify_dihedral_json() {
    let o = k3aut(&["classify", "-a", "1", "-b", "4", "-c", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["variant"], "dihedral");
    assert_eq!(v["sigma"], serde_json::json!([["1", "4"], ["0", "-1"]]));
    assert!(v["caveats"]
        .as_array()
        .unwrap()
        .contains(&"theorem2-relative completeness".into()));
}

#[test]
fn classify_cyclic_human() {
    let o = k3aut(&["classify", "-a", "2", "-b", "6", "-c", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("variant      cyclic"), "{text}");
    assert!(text.contains("h^3 = ((21, 8), (-8, -3))  epsilon -1"), "{text}");
}

#[test]
fn degenerate_exits_two() {
    let o = k3aut(&["classify", "-a", "2", "-b", "4", "-c", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("degenerate: discriminant 0"));
}

#[test]
fn pell_commands() {
    let o = k3aut(&["pell", "5", "--norm", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("fundamental  (3, 1)"));

    let o = k3aut(&["pell", "20", "--norm", "-8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no solutions"));

    let o = k3aut(&["pell", "9", "--norm", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "trivial only: (±1,0)");

    let o = k3aut(&["pell", "9", "--norm", "3"]);
    assert_eq!(o.status.code(), Some(2));

    let o = k3aut(&["pell", "5", "--norm", "4", "--all-below", "10", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["solutions_below"].as_array().unwrap().len(), 14);
}

#[test]
fn orbit_table_and_csv() {
    let o = k3aut(&["orbit", "-a", "1", "-b", "4", "-c", "1", "--start", "1,0", "-N", "8", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,x,y,ratio,residual");
    assert_eq!(lines.len(), 10);
    let residuals: Vec<f64> = lines[2..]
        .iter()
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(residuals.windows(2).all(|w| w[1] < w[0]));
    assert!(residuals.last().unwrap() < &1e-8);

    let o = k3aut(&["orbit", "-a", "1", "-b", "4", "-c", "1", "--start", "1,0", "-N", "0", "--csv"]);
    assert_eq!(stdout(&o).lines().count(), 2);

    let o = k3aut(&["orbit", "-a", "1", "-b", "4", "-c", "1", "--start", "0,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn orbit_ratios_finite_after_seed() {
    let o = k3aut(&["orbit", "-a", "1", "-b", "4", "-c", "1", "--start", "1,0", "-N", "20", "--json"]);
    let rows: Vec<Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(rows[1..].iter().all(|r| r.get("ratio").is_some()));
}

#[test]
fn quartic_gates() {
    assert_eq!(k3aut(&["quartic", "--deg", "5", "--genus", "3"]).status.code(), Some(2));
    let o = k3aut(&["quartic", "--deg", "4", "--genus", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["variant"], "degenerate");
    let o = k3aut(&["quartic", "--deg", "6", "--genus", "3", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["lattice"], serde_json::json!(["2", "6", "2"]));
    assert_eq!(v["variant"], "cyclic");
    assert_eq!(v["k"], 3);
}

#[test]
fn represent_and_entropy() {
    let o = k3aut(&["represent", "-a", "1", "-b", "3", "-c", "1", "-k", "-1"]);
    assert!(stdout(&o).contains("(1, -1)"));
    let o = k3aut(&["represent", "-a", "2", "-b", "6", "-c", "2", "-k", "-1"]);
    assert!(stdout(&o).contains("none"));
    let o = k3aut(&["entropy", "-a", "1", "-b", "4", "-c", "1", "--digits", "10"]);
    assert!(stdout(&o).contains("entropy(h)   1.316957897"), "{}", stdout(&o));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let o = k3aut(&["classify", "-a", "1", "-b", "4", "-c", "1", "--json", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["variant"], "dihedral");
}

fn batch(input: &str) -> (Vec<Value>, String, Option<i32>) {
    let dir = tempfile::tempdir().unwrap();
    let inp = dir.path().join("in.jsonl");
    let out = dir.path().join("out.jsonl");
    std::fs::File::create(&inp).unwrap().write_all(input.as_bytes()).unwrap();
    let o = k3aut(&["batch", inp.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    let text = std::fs::read_to_string(&out).unwrap_or_default();
    let recs = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    (recs, stderr(&o), o.status.code())
}

#[test]
fn batch_families() {
    let input: String = (3..=20)
        .map(|n| format!("{{\"a\": 2, \"b\": {}, \"c\": 2}}\n", 2 * n))
        .collect();
    let (recs, summary, code) = batch(&input);
    assert_eq!(code, Some(0));
    assert_eq!(recs.len(), 18);
    for (i, r) in recs.iter().enumerate() {
        assert_eq!(r["variant"], "cyclic");
        assert_eq!(r["input"]["b"], (2 * (i + 3)).to_string());
    }
    assert!(summary.contains("cyclic 18"), "{summary}");

    let input: String = (4..=20)
        .map(|n| format!("{{\"a\": \"1\", \"b\": \"{n}\", \"c\": \"1\"}}\n"))
        .collect();
    let (recs, _, _) = batch(&input);
    assert_eq!(recs.len(), 17);
    assert!(recs.iter().all(|r| r["variant"] == "dihedral"));
}

#[test]
fn batch_edge_cases() {
    let (recs, summary, code) = batch("");
    assert_eq!(code, Some(0));
    assert!(recs.is_empty());
    assert!(summary.contains("records 0"), "{summary}");

    let (recs, _, code) = batch("{\"a\":1,\"b\":4,\"c\":1}\n{oops\n{\"deg\":5,\"genus\":3}\n{\"a\":2,\"b\":4,\"c\":2}\n");
    assert_eq!(code, Some(0));
    assert_eq!(recs.len(), 4);
    assert_eq!(recs[1]["error"]["kind"], "parse");
    assert_eq!(recs[2]["error"]["kind"], "domain");
    assert_eq!(recs[3]["variant"], "degenerate");

    let o = k3aut(&["batch", "/nonexistent/in.jsonl"]);
    assert_eq!(o.status.code(), Some(1));
}
