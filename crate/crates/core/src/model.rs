//! The k-graph data model and its JSON exchange format.
//!
//! A [`KGraph`] is a finite coloured skeleton together with factorization
//! squares. Construction only checks that every reference resolves; whether the
//! squares actually define a k-graph is decided by [`crate::validate`].

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a vertex in the canonical (lexicographic) vertex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Index of an edge in the canonical edge order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An edge record as it appears in a document.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub name: String,
    pub color: usize,
    pub range: String,
    pub source: String,
}

/// A factorization square `first[0]·first[1] = second[0]·second[1]`.
///
/// `first` is read low colour first, `second` high colour first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SquareRecord {
    pub first: [String; 2],
    pub second: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    /// 1-based colour.
    pub color: usize,
    pub range: VertexId,
    pub source: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Square {
    pub first: [EdgeId; 2],
    pub second: [EdgeId; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("rank must be at least 1")]
    InvalidRank,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("edge `{edge}` has colour {color}, outside 1..={rank}")]
    ColorOutOfRange {
        edge: String,
        color: usize,
        rank: usize,
    },
}

impl ModelError {
    pub fn code(&self) -> &'static str {
        match self {
            ModelError::Syntax { .. } => "SYNTAX",
            ModelError::InvalidRank => "INVALID_RANK",
            ModelError::UnknownVertex(_) => "UNKNOWN_VERTEX",
            ModelError::UnknownEdge(_) => "UNKNOWN_EDGE",
            ModelError::ColorOutOfRange { .. } => "COLOR_OUT_OF_RANGE",
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    rank: usize,
    vertices: Vec<String>,
    edges: Vec<EdgeRecord>,
    #[serde(default)]
    squares: Vec<SquareRecord>,
}

/// A finite k-graph presented by skeleton and factorization squares.
///
/// Immutable after construction. Vertices and edges are stored in
/// lexicographic order of their identifiers; ids index into that order.
#[derive(Clone)]
pub struct KGraph {
    rank: usize,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    squares: Vec<Square>,
    vertex_ids: HashMap<String, VertexId>,
    edge_ids: HashMap<String, EdgeId>,
    // low-colour-first pair -> high-colour-first pair, and back
    forward: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    backward: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    // [vertex][colour - 1] -> edges with that range
    by_range: Vec<Vec<Vec<EdgeId>>>,
}

impl KGraph {
    pub fn new(
        rank: usize,
        vertices: Vec<String>,
        edges: Vec<EdgeRecord>,
        squares: Vec<SquareRecord>,
    ) -> Result<Self, ModelError> {
        if rank == 0 {
            return Err(ModelError::InvalidRank);
        }
        let mut vertices = vertices;
        vertices.sort();

        let mut vertex_ids = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            vertex_ids.entry(v.clone()).or_insert(VertexId(i as u32));
        }

        let mut edge_records = edges;
        edge_records.sort();
        let mut edges = Vec::with_capacity(edge_records.len());
        for rec in edge_records {
            if rec.color == 0 || rec.color > rank {
                return Err(ModelError::ColorOutOfRange {
                    edge: rec.name,
                    color: rec.color,
                    rank,
                });
            }
            let range = *vertex_ids
                .get(&rec.range)
                .ok_or_else(|| ModelError::UnknownVertex(rec.range.clone()))?;
            let source = *vertex_ids
                .get(&rec.source)
                .ok_or_else(|| ModelError::UnknownVertex(rec.source.clone()))?;
            edges.push(Edge {
                name: rec.name,
                color: rec.color,
                range,
                source,
            });
        }
        let mut edge_ids = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            edge_ids.entry(e.name.clone()).or_insert(EdgeId(i as u32));
        }

        let lookup = |name: &String| {
            edge_ids
                .get(name)
                .copied()
                .ok_or_else(|| ModelError::UnknownEdge(name.clone()))
        };
        let mut resolved = Vec::with_capacity(squares.len());
        for sq in &squares {
            resolved.push(Square {
                first: [lookup(&sq.first[0])?, lookup(&sq.first[1])?],
                second: [lookup(&sq.second[0])?, lookup(&sq.second[1])?],
            });
        }
        resolved.sort();

        let mut forward = HashMap::new();
        let mut backward = HashMap::new();
        for sq in &resolved {
            let f = (sq.first[0], sq.first[1]);
            let s = (sq.second[0], sq.second[1]);
            forward.entry(f).or_insert(s);
            backward.entry(s).or_insert(f);
        }

        let mut by_range = vec![vec![Vec::new(); rank]; vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            by_range[e.range.index()][e.color - 1].push(EdgeId(i as u32));
        }

        Ok(KGraph {
            rank,
            vertices,
            edges,
            squares: resolved,
            vertex_ids,
            edge_ids,
            forward,
            backward,
            by_range,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_ids.get(name).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_ids.get(name).copied()
    }

    pub fn color(&self, e: EdgeId) -> usize {
        self.edges[e.index()].color
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    /// Edges of colour `color` (1-based) whose range is `v`.
    pub fn edges_into(&self, v: VertexId, color: usize) -> &[EdgeId] {
        &self.by_range[v.index()][color - 1]
    }

    /// Exchange the colours of a composable two-coloured pair using the
    /// squares: `x·y = x'·y'` with `colour(x') = colour(y)`.
    pub fn swap(&self, x: EdgeId, y: EdgeId) -> Option<(EdgeId, EdgeId)> {
        let (cx, cy) = (self.color(x), self.color(y));
        if cx < cy {
            self.forward.get(&(x, y)).copied()
        } else if cx > cy {
            self.backward.get(&(x, y)).copied()
        } else {
            None
        }
    }

    pub fn edge_records(&self) -> Vec<EdgeRecord> {
        self.edges
            .iter()
            .map(|e| EdgeRecord {
                name: e.name.clone(),
                color: e.color,
                range: self.vertex_name(e.range).to_string(),
                source: self.vertex_name(e.source).to_string(),
            })
            .collect()
    }

    pub fn square_records(&self) -> Vec<SquareRecord> {
        let name = |e: EdgeId| self.edge(e).name.clone();
        self.squares
            .iter()
            .map(|sq| SquareRecord {
                first: [name(sq.first[0]), name(sq.first[1])],
                second: [name(sq.second[0]), name(sq.second[1])],
            })
            .collect()
    }
}

impl PartialEq for KGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.vertices == other.vertices
            && self.edges == other.edges
            && self.squares == other.squares
    }
}

impl Eq for KGraph {}

impl fmt::Debug for KGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KGraph")
            .field("rank", &self.rank)
            .field("vertices", &self.vertices.len())
            .field("edges", &self.edges.len())
            .field("squares", &self.squares.len())
            .finish()
    }
}

/// Parse a k-graph document. Squares are not checked for completeness.
pub fn parse_kgraph(text: &str) -> Result<KGraph, ModelError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| ModelError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    KGraph::new(doc.rank, doc.vertices, doc.edges, doc.squares)
}

/// Canonical serialization: sorted vertices, edges and squares, two-space
/// indentation, trailing newline.
pub fn serialize_kgraph(g: &KGraph) -> String {
    let doc = Document {
        rank: g.rank,
        vertices: g.vertices.clone(),
        edges: g.edge_records(),
        squares: g.square_records(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("document is always serializable");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE_GRAPH: &str = r#"{
        "rank": 1,
        "vertices": ["v"],
        "edges": [
            {"name": "a2", "color": 1, "range": "v", "source": "v"},
            {"name": "a1", "color": 1, "range": "v", "source": "v"}
        ]
    }"#;

    #[test]
    fn rank_one_needs_no_squares() {
        let g = parse_kgraph(ONE_GRAPH).unwrap();
        assert_eq!(g.rank(), 1);
        assert_eq!(g.edges().len(), 2);
        assert!(g.squares().is_empty());
        assert_eq!(g.edge(EdgeId(0)).name, "a1");
    }

    #[test]
    fn undeclared_vertex_is_rejected() {
        let text = r#"{"rank": 1, "vertices": ["v"],
            "edges": [{"name": "a", "color": 1, "range": "v", "source": "w9"}]}"#;
        let err = parse_kgraph(text).unwrap_err();
        assert_eq!(err, ModelError::UnknownVertex("w9".into()));
        assert_eq!(err.code(), "UNKNOWN_VERTEX");
    }

    #[test]
    fn colour_out_of_range() {
        let text = r#"{"rank": 1, "vertices": ["v"],
            "edges": [{"name": "a", "color": 2, "range": "v", "source": "v"}]}"#;
        assert_eq!(parse_kgraph(text).unwrap_err().code(), "COLOR_OUT_OF_RANGE");
    }

    #[test]
    fn unknown_edge_in_square() {
        let text = r#"{"rank": 2, "vertices": ["v"],
            "edges": [{"name": "a", "color": 1, "range": "v", "source": "v"}],
            "squares": [{"first": ["a", "b"], "second": ["b", "a"]}]}"#;
        assert_eq!(parse_kgraph(text).unwrap_err(), ModelError::UnknownEdge("b".into()));
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = parse_kgraph("{\n  \"rank\": 1,\n  oops\n}").unwrap_err();
        match err {
            ModelError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn serialization_is_canonical() {
        let g = parse_kgraph(ONE_GRAPH).unwrap();
        let text = serialize_kgraph(&g);
        let again = serialize_kgraph(&parse_kgraph(&text).unwrap());
        assert_eq!(text, again);
        assert!(text.find("\"a1\"").unwrap() < text.find("\"a2\"").unwrap());
    }
}
