use std::collections::BTreeMap;
use std::fmt::Write;

use strideq_core::engine::basis_label;
use strideq_core::{BlochVector, RunReport, RunResult};

/// Probability table, one row per basis index. With `top`, only the `top`
/// most probable rows are kept, still in index order.
pub fn probs(distribution: &[f64], n: usize, top: Option<usize>) -> String {
    let mut rows: Vec<usize> = (0..distribution.len()).collect();
    if let Some(k) = top {
        rows.sort_by(|&a, &b| distribution[b].total_cmp(&distribution[a]).then(a.cmp(&b)));
        rows.truncate(k);
        rows.sort_unstable();
    }
    let width = n.max("bitstring".len());
    let mut out = format!("{:>8}  {:<width$}  {}\n", "index", "bitstring", "probability");
    for i in rows {
        let _ = writeln!(out, "{i:>8}  {:<width$}  {:.6}", basis_label(i, n), distribution[i]);
    }
    out
}

pub fn bloch(vectors: &[BlochVector]) -> String {
    let mut out = format!("{:>5}  {:>10}  {:>10}  {:>10}\n", "qubit", "x", "y", "z");
    for (q, b) in vectors.iter().enumerate() {
        let _ = writeln!(out, "{q:>5}  {:>10.6}  {:>10.6}  {:>10.6}", b.x, b.y, b.z);
    }
    out
}

/// Histogram of classical records, `c_0` first. A circuit without classical
/// bits yields the single record `-`.
pub fn shots(histogram: &BTreeMap<String, u64>) -> String {
    let width = histogram.keys().map(String::len).max().unwrap_or(0).max("bitstring".len());
    let mut out = format!("{:<width$}  {}\n", "bitstring", "count");
    for (record, count) in histogram {
        let label = if record.is_empty() { "-" } else { record };
        let _ = writeln!(out, "{label:<width$}  {count}");
    }
    out
}

pub fn json(result: &RunResult, name: Option<&str>, include_state: bool) -> String {
    let report = RunReport::new(result, name, include_state);
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    text
}
