use std::io::Write;

use serde_json::{json, Value};

pub const SCHEMA_VERSION: u64 = 1;

/// `{schema_version, subcommand, inputs, results}` on one line.
pub fn write_json(
    out: &mut dyn Write,
    subcommand: &str,
    inputs: Value,
    results: Value,
) -> std::io::Result<()> {
    let record = json!({
        "schema_version": SCHEMA_VERSION,
        "subcommand": subcommand,
        "inputs": inputs,
        "results": results,
    });
    writeln!(out, "{record}")
}

/// Terms separated by ", " as in a printed sequence listing.
pub fn listing(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// A cycle in parentheses, `(1,1,0,1,2,0)`.
pub fn cycle(values: &[u64]) -> String {
    let inner: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("({})", inner.join(","))
}
