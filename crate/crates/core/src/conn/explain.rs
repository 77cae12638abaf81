//! Derivation trees and their text rendering.

use std::collections::HashSet;
use std::fmt::Write as _;

use super::engine::{Inference, Premise, Rule, Value};
use super::{Kind, Level, MapId, SymDiagram, FLOOR};

/// Why a map has the bound it has. Leaves with no rule are the default
/// bounds of maps nothing was derived for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub map: String,
    pub kind: Kind,
    /// `None` for a default bound: connectivity at the floor, truncation
    /// unknown.
    pub value: Option<Value>,
    pub rule: Option<Rule>,
    pub note: Option<String>,
    pub premises: Vec<Derivation>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExplainError {
    #[error("unknown map {0}")]
    UnknownMap(String),
    #[error("no bound derived for {map}; only the trivial bound conn >= {floor} holds")]
    NoBoundDerived { map: String, floor: i64 },
}

fn kind_of(v: Value) -> Kind {
    match v {
        Value::Conn(_) => Kind::Conn,
        Value::Trunc(_) => Kind::Trunc,
    }
}

fn tree(d: &SymDiagram, inf: &Inference, p: Premise) -> Derivation {
    match p {
        Premise::Default(m, kind) => Derivation {
            map: d.name_of(m).to_string(),
            kind,
            value: None,
            rule: None,
            note: None,
            premises: Vec::new(),
        },
        Premise::Step(i) => {
            let s = &inf.steps[i];
            Derivation {
                map: d.name_of(s.map).to_string(),
                kind: kind_of(s.value),
                value: Some(s.value),
                rule: Some(s.rule),
                note: s.note.clone(),
                premises: s.premises.iter().map(|&q| tree(d, inf, q)).collect(),
            }
        }
    }
}

/// The derivation of the current bound of a map, if one was derived.
pub fn derivation(d: &SymDiagram, inf: &Inference, map: MapId, kind: Kind) -> Option<Derivation> {
    inf.step_for(map, kind).map(|s| tree(d, inf, Premise::Step(s)))
}

fn show_value(v: Option<Value>, kind: Kind, cap: i64) -> String {
    match (v, kind) {
        (Some(Value::Conn(Level::Infinite)), _) => "conn = inf".to_string(),
        (Some(Value::Conn(Level::Finite(n))), _) if n == cap => format!("conn >= {n} (clamped)"),
        (Some(Value::Conn(Level::Finite(n))), _) => format!("conn >= {n}"),
        (Some(Value::Trunc(t)), _) => format!("trunc <= {t}"),
        (None, Kind::Conn) => format!("conn >= {FLOOR} (trivial)"),
        (None, Kind::Trunc) => "trunc unbounded".to_string(),
    }
}

fn render(d: &SymDiagram, inf: &Inference, step: usize, depth: usize, seen: &mut HashSet<usize>, out: &mut String) {
    let s = &inf.steps[step];
    let pad = "  ".repeat(depth);
    let _ =
        write!(out, "{pad}{} {} [{}]", d.name_of(s.map), show_value(Some(s.value), kind_of(s.value), inf.cap), s.rule);
    if let Some(note) = &s.note {
        let _ = write!(out, " ({note})");
    }
    if !s.premises.is_empty() && !seen.insert(step) {
        out.push_str(" (shown above)\n");
        return;
    }
    out.push('\n');
    for &p in &s.premises {
        match p {
            Premise::Step(j) => render(d, inf, j, depth + 1, seen, out),
            Premise::Default(m, kind) => {
                let _ = writeln!(out, "{pad}  {} {}", d.name_of(m), show_value(None, kind, inf.cap));
            }
        }
    }
}

/// Text proof trees for the connectivity and truncation bounds of a map.
/// Repeated subtrees are printed once.
pub fn explain(d: &SymDiagram, inf: &Inference, map: &str) -> Result<String, ExplainError> {
    let id = d.map_id(map).ok_or_else(|| ExplainError::UnknownMap(map.to_string()))?;
    let mut out = String::new();
    let mut seen = HashSet::new();
    for kind in [Kind::Conn, Kind::Trunc] {
        if let Some(s) = inf.step_for(id, kind) {
            render(d, inf, s, 0, &mut seen, &mut out);
        }
    }
    if out.is_empty() {
        Err(ExplainError::NoBoundDerived { map: map.to_string(), floor: FLOOR })
    } else {
        Ok(out)
    }
}
