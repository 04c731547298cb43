//! The JSON report written by every subcommand.

use std::collections::BTreeMap;

use cosheaf::chain::LesReport;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    /// The subcommand and its flags as given.
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub field: u32,
    /// `dim H_k` of the full chain complex, by degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homology: Option<Vec<usize>>,
    /// `dim H_k` of the Morse complex, by degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morse_homology: Option<Vec<usize>>,
    /// Critical simplices by dimension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub critical_cells: Option<Vec<usize>>,
    /// Named pass/fail checks; the run succeeds iff all are true.
    pub verdicts: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub les: Vec<LesTable>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
    pub timing_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(role: &str, path: &str, contents: &str) -> Self {
        let digest = Sha256::digest(contents.as_bytes());
        InputDigest {
            role: role.into(),
            path: path.into(),
            sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

/// A long exact sequence as rows `node --map--> next node`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesTable {
    pub name: String,
    pub rows: Vec<LesRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesRow {
    pub node: String,
    pub dim: usize,
    pub exact: bool,
    /// The outgoing map and its rank; absent for the last node.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
}

impl LesTable {
    pub fn new(name: &str, les: &LesReport) -> Self {
        let rows = les
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let map = les.maps.get(i);
                LesRow {
                    node: n.to_string(),
                    dim: n.dim,
                    exact: les.exact[i],
                    map: map.map(|m| m.kind.to_string()),
                    rank: map.map(|m| m.rank),
                }
            })
            .collect();
        LesTable {
            name: name.into(),
            rows,
        }
    }
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// The report with its timing cleared, for comparing runs.
    pub fn without_timing(&self) -> Self {
        Report {
            timing_ms: 0,
            ..self.clone()
        }
    }
}
