//! Text and JSON rendering of check reports and bound tables.
//!
//! Every JSON report has the fields `name`, `status`, `cases`,
//! `elapsed_ms`, `witness` and `bounds`. Elapsed time is `null` unless
//! timing is requested, so that output is reproducible byte for byte.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Map as JsonMap, Value as Json};

use crate::conn::{Inference, Level, SymDiagram};
use crate::lab::CheckReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

fn elapsed_ms(elapsed: Duration, timing: bool) -> Json {
    if timing {
        json!(elapsed.as_millis() as u64)
    } else {
        Json::Null
    }
}

/// One check report as a JSON object.
pub fn check_report_json(r: &CheckReport, timing: bool) -> Json {
    json!({
        "name": r.name,
        "status": r.status,
        "cases": r.cases,
        "elapsed_ms": elapsed_ms(r.elapsed, timing),
        "witness": r.witness,
        "bounds": Json::Null,
        "mode": r.scope,
        "instances": r.instances,
        "notes": r.notes,
        "examples": r.examples,
    })
}

/// One line-oriented block per report.
pub fn check_report_text(r: &CheckReport, timing: bool) -> String {
    let mut out = format!("{}: {} ({}); {} cases, {} instances", r.name, r.status, r.scope, r.cases, r.instances);
    if timing {
        let _ = write!(out, "; {} ms", r.elapsed.as_millis());
    }
    out.push('\n');
    for n in &r.notes {
        let _ = writeln!(out, "  note: {n}");
    }
    if let Some(w) = &r.witness {
        let _ = writeln!(out, "  witness: {}", serde_json::to_string(w).expect("witness serializes"));
    }
    for e in &r.examples {
        let _ = writeln!(out, "  example: {}", serde_json::to_string(e).expect("witness serializes"));
    }
    out
}

/// Reports as JSON Lines or as text blocks.
pub fn emit_reports(reports: &[CheckReport], format: Format, timing: bool) -> String {
    reports
        .iter()
        .map(|r| match format {
            Format::Json => check_report_json(r, timing).to_string() + "\n",
            Format::Text => check_report_text(r, timing),
        })
        .collect()
}

fn show_trunc(t: Option<i64>) -> String {
    t.map_or_else(|| "-".to_string(), |t| t.to_string())
}

/// Map name to `{conn, trunc, clamped}`, keys sorted.
pub fn bounds_json(d: &SymDiagram, inf: &Inference) -> Json {
    let mut table = JsonMap::new();
    for (i, b) in inf.table().into_iter().enumerate() {
        table.insert(d.maps()[i].name.clone(), serde_json::to_value(b).expect("bounds serialize"));
    }
    Json::Object(table)
}

pub fn inference_status(inf: &Inference) -> &'static str {
    if inf.contradictions.is_empty() {
        "inferred"
    } else {
        "contradiction"
    }
}

/// The result of inference on a diagram as a JSON report.
pub fn inference_json(name: &str, d: &SymDiagram, inf: &Inference, elapsed: Duration, timing: bool) -> Json {
    let contradictions: Vec<&str> = inf.contradictions.iter().map(|c| d.name_of(c.map)).collect();
    json!({
        "name": name,
        "status": inference_status(inf),
        "cases": inf.firings[0] + inf.firings[1],
        "elapsed_ms": elapsed_ms(elapsed, timing),
        "witness": Json::Null,
        "bounds": bounds_json(d, inf),
        "cap": inf.cap,
        "passes": inf.passes,
        "contradictions": contradictions,
    })
}

/// Bound table, one map per line in diagram order.
pub fn inference_text(name: &str, d: &SymDiagram, inf: &Inference, elapsed: Duration, timing: bool) -> String {
    let table = inf.table();
    let width = d.maps().iter().map(|m| m.name.chars().count()).max().unwrap_or(0).max(3);
    let mut out = format!(
        "{name}: {} ({} maps, {} firings, {} passes, cap {})",
        inference_status(inf),
        table.len(),
        inf.firings[0] + inf.firings[1],
        inf.passes,
        inf.cap
    );
    if timing {
        let _ = write!(out, "; {} ms", elapsed.as_millis());
    }
    out.push('\n');
    let _ = writeln!(out, "{:width$}  {:>5}  {:>5}", "map", "conn", "trunc");
    for (m, b) in d.maps().iter().zip(&table) {
        let conn = match b.conn {
            Level::Infinite => "inf".to_string(),
            Level::Finite(n) => n.to_string(),
        };
        let flag = if b.clamped { "  clamped" } else { "" };
        let _ = writeln!(out, "{:width$}  {conn:>5}  {:>5}{flag}", m.name, show_trunc(b.trunc));
    }
    for c in &inf.contradictions {
        let s = &inf.steps[c.step];
        let _ = writeln!(
            out,
            "contradiction: {} is declared non-invertible but [{}] proves it invertible",
            d.name_of(c.map),
            s.rule
        );
    }
    out
}
