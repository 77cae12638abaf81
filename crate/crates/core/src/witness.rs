//! Serializable counterexample data.

use serde::{Deserialize, Serialize};

use crate::finset::FinMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMap {
    pub role: String,
    pub map: FinMap,
}

/// The maps making up one case of a named check, enough to replay it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub check: String,
    pub maps: Vec<NamedMap>,
}

impl Witness {
    pub fn new(check: impl Into<String>) -> Witness {
        Witness { check: check.into(), maps: Vec::new() }
    }

    pub fn with(mut self, role: impl Into<String>, map: &FinMap) -> Witness {
        self.maps.push(NamedMap { role: role.into(), map: map.clone() });
        self
    }

    pub fn get(&self, role: &str) -> Option<&FinMap> {
        self.maps.iter().find(|m| m.role == role).map(|m| &m.map)
    }
}
