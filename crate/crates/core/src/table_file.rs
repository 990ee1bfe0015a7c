//! The JSON exchange format for tables of basic morphisms.
//!
//! ```json
//! { "graph": "ckr_2_1.json", "pairs": [ {"target": "a1,b1", "source": "a2,b1"} ] }
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::KGraph;
use crate::path::{format_path, parse_path, NormalPath, PathError};
use crate::semigroup::BasicMorphism;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub target: String,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    /// Path of the k-graph document, as written in the file.
    pub graph: String,
    pub pairs: Vec<PairRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("pair {index}: {source}")]
    Path { index: usize, source: PathError },
}

impl TableDocument {
    pub fn parse(text: &str) -> Result<Self, TableError> {
        serde_json::from_str(text).map_err(|e| TableError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("table is always serializable");
        out.push('\n');
        out
    }

    /// Resolve every pair to `(target, source)` normal forms.
    pub fn resolve(&self, g: &KGraph) -> Result<Vec<(NormalPath, NormalPath)>, TableError> {
        self.pairs
            .iter()
            .enumerate()
            .map(|(index, rec)| {
                let wrap = |source| TableError::Path { index, source };
                Ok((
                    parse_path(g, &rec.target).map_err(wrap)?,
                    parse_path(g, &rec.source).map_err(wrap)?,
                ))
            })
            .collect()
    }

    pub fn from_pairs(g: &KGraph, graph: impl Into<String>, pairs: &[BasicMorphism]) -> Self {
        TableDocument {
            graph: graph.into(),
            pairs: pairs
                .iter()
                .map(|p| PairRecord {
                    target: format_path(g, p.target()),
                    source: format_path(g, p.source()),
                })
                .collect(),
        }
    }
}
