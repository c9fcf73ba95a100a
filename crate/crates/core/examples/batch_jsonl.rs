//! Classify a batch of requests and print JSON Lines, in input order.
//!
//! ```sh
//! cargo run --example batch_jsonl
//! ```

use k3aut::cli::{batch_records, batch_summary};

fn main() {
    let input = [
        r#"{"a": 2, "b": 6, "c": 2}"#,
        r#"{"a": "1", "b": "4", "c": "1"}"#,
        r#"{"a": 1, "b": 3, "c": 1}"#,
        r#"{"deg": 6, "genus": 3}"#,
        r#"{"a": 2, "b": 4, "c": 2}"#,
        r#"not a request"#,
    ]
    .join("\n");
    let records = batch_records(&input, 8);
    for rec in &records {
        println!("{}", serde_json::to_string(rec).expect("serializable"));
    }
    eprintln!("{:?}", batch_summary(&records));
}
