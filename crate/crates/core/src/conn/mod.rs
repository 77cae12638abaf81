//! Symbolic propagation of connectivity and truncation bounds through
//! diagrams of named objects and maps.

mod diagram;
mod engine;
mod explain;

use std::fmt;

use serde::{Serialize, Serializer};

pub use diagram::{
    build, AnnotateError, Annotation, Arg, BuildError, BuildErrorKind, Construction, Ctor, Map, MapId, ObjId, Object,
    SphereMap, Statement, SymDiagram, TERMINAL,
};
pub use engine::{
    firing_bound, infer, infer_shuffled, ordered_instances, saturate, Bounds, Contradiction, Formula, Inference,
    Instance, Premise, Reading, Rule, Step, Value,
};
pub use explain::{derivation, explain, Derivation, ExplainError};

/// Every map is (-2)-connected, and (-2)-truncated means invertible.
pub const FLOOR: i64 = -2;

/// Default clamp for derived bounds.
pub const DEFAULT_CAP: i64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Conn,
    Trunc,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Conn => "conn",
            Kind::Trunc => "trunc",
        })
    }
}

/// A connectivity level: an integer, or `∞` for a proven isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Finite(i64),
    Infinite,
}

impl Level {
    pub fn shift(self, k: i64) -> Level {
        match self {
            Level::Finite(n) => Level::Finite(n + k),
            Level::Infinite => Level::Infinite,
        }
    }

    pub fn plus(self, other: Level) -> Level {
        match (self, other) {
            (Level::Finite(a), Level::Finite(b)) => Level::Finite(a + b),
            _ => Level::Infinite,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(n) => write!(f, "{n}"),
            Level::Infinite => f.write_str("inf"),
        }
    }
}

/// Integers as JSON numbers, `∞` as the string `"inf"`.
impl Serialize for Level {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Level::Finite(n) => s.serialize_i64(*n),
            Level::Infinite => s.serialize_str("inf"),
        }
    }
}
