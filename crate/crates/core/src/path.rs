//! Morphisms of the k-graph in colour-sorted normal form.
//!
//! Every morphism is stored as the unique factorization whose colour word is
//! `1…1 2…2 … k…k`, read in composition order (the first edge carries the
//! range). Other factorizations are reached by exchanging adjacent edges of
//! different colours through the factorization squares.

use std::fmt;

use thiserror::Error;

use crate::degree::Degree;
use crate::model::{EdgeId, KGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("edges at positions {index} and {} are not composable", index + 1)]
    NotComposable { index: usize },
    #[error("degree interval is outside the path's degree")]
    DegreeOutOfRange,
    #[error("no factorization square for the pair ({0}, {1})")]
    MissingSquare(String, String),
    #[error("unknown edge or vertex `{0}`")]
    UnknownName(String),
    #[error("a path needs at least one edge or a vertex")]
    Empty,
    #[error("degree overflow")]
    DegreeOverflow,
}

impl PathError {
    pub fn code(&self) -> &'static str {
        match self {
            PathError::NotComposable { .. } => "NOT_COMPOSABLE",
            PathError::DegreeOutOfRange => "DEGREE_OUT_OF_RANGE",
            PathError::MissingSquare(..) => "MISSING_SQUARE",
            PathError::UnknownName(_) => "UNKNOWN_NAME",
            PathError::Empty => "EMPTY_PATH",
            PathError::DegreeOverflow => "DEGREE_OVERFLOW",
        }
    }
}

/// A morphism of the k-graph in colour-sorted form.
///
/// The field order fixes the derived ordering: paths sort by degree first,
/// which keeps tables and codes in a stable, readable order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalPath {
    degree: Degree,
    range: VertexId,
    edges: Vec<EdgeId>,
    source: VertexId,
}

impl NormalPath {
    pub fn identity(g: &KGraph, v: VertexId) -> Self {
        NormalPath {
            degree: Degree::zero(g.rank()),
            range: v,
            edges: Vec::new(),
            source: v,
        }
    }

    /// Build from an edge sequence already known to be colour-sorted and
    /// composable.
    fn from_sorted(g: &KGraph, edges: Vec<EdgeId>, junction: VertexId) -> Self {
        if edges.is_empty() {
            return Self::identity(g, junction);
        }
        let mut degree = vec![0u32; g.rank()];
        for &e in &edges {
            degree[g.color(e) - 1] += 1;
        }
        NormalPath {
            degree: Degree::from_vec(degree),
            range: g.edge(edges[0]).range,
            source: g.edge(*edges.last().unwrap()).source,
            edges,
        }
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn is_identity(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn display<'a>(&'a self, g: &'a KGraph) -> PathDisplay<'a> {
        PathDisplay { graph: g, path: self }
    }
}

pub struct PathDisplay<'a> {
    graph: &'a KGraph,
    path: &'a NormalPath,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_identity() {
            return write!(f, "{}", self.graph.vertex_name(self.path.range));
        }
        for (i, &e) in self.path.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.graph.edge(e).name)?;
        }
        Ok(())
    }
}

pub fn format_path(g: &KGraph, p: &NormalPath) -> String {
    p.display(g).to_string()
}

/// Parse `"a1,b2,a1"` (composition order) or a bare vertex name.
pub fn parse_path(g: &KGraph, text: &str) -> Result<NormalPath, PathError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(PathError::Empty);
    }
    if !text.contains(',') {
        if let Some(v) = g.vertex_id(text) {
            return Ok(NormalPath::identity(g, v));
        }
    }
    let raw = text
        .split(',')
        .map(|name| {
            let name = name.trim();
            g.edge_id(name).ok_or_else(|| PathError::UnknownName(name.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    normalize(g, &raw)
}

fn swap_pair(g: &KGraph, x: EdgeId, y: EdgeId) -> Result<(EdgeId, EdgeId), PathError> {
    g.swap(x, y).ok_or_else(|| {
        PathError::MissingSquare(g.edge(x).name.clone(), g.edge(y).name.clone())
    })
}

/// Insertion sort by colour through adjacent square exchanges. Each exchange
/// removes one colour inversion, so this terminates.
fn sort_by_color(g: &KGraph, edges: &mut [EdgeId]) -> Result<(), PathError> {
    for i in 1..edges.len() {
        let mut j = i;
        while j > 0 && g.color(edges[j - 1]) > g.color(edges[j]) {
            let (a, b) = swap_pair(g, edges[j - 1], edges[j])?;
            edges[j - 1] = a;
            edges[j] = b;
            j -= 1;
        }
    }
    Ok(())
}

/// Rewrite `edges` to the factorization with colour word `colors`.
///
/// `colors` must be a rearrangement of the colours of `edges`.
fn reorder(g: &KGraph, edges: &[EdgeId], colors: &[usize]) -> Result<Vec<EdgeId>, PathError> {
    debug_assert_eq!(edges.len(), colors.len());
    let mut e = edges.to_vec();
    for k in 0..e.len() {
        let q = (k..e.len())
            .find(|&q| g.color(e[q]) == colors[k])
            .expect("colour word is a rearrangement of the path's colours");
        for j in (k..q).rev() {
            let (a, b) = swap_pair(g, e[j], e[j + 1])?;
            e[j] = a;
            e[j + 1] = b;
        }
    }
    Ok(e)
}

fn check_composable(g: &KGraph, raw: &[EdgeId]) -> Result<(), PathError> {
    for (index, w) in raw.windows(2).enumerate() {
        if g.edge(w[0]).source != g.edge(w[1]).range {
            return Err(PathError::NotComposable { index });
        }
    }
    Ok(())
}

/// The colour-sorted representative of the morphism `raw[0]·raw[1]·…`.
pub fn normalize(g: &KGraph, raw: &[EdgeId]) -> Result<NormalPath, PathError> {
    if raw.is_empty() {
        return Err(PathError::Empty);
    }
    check_composable(g, raw)?;
    let mut edges = raw.to_vec();
    sort_by_color(g, &mut edges)?;
    Ok(NormalPath::from_sorted(g, edges, g.edge(raw[0]).range))
}

pub fn compose(g: &KGraph, p: &NormalPath, q: &NormalPath) -> Result<NormalPath, PathError> {
    if p.source != q.range {
        return Err(PathError::NotComposable {
            index: p.edges.len().saturating_sub(1),
        });
    }
    if q.is_identity() {
        return Ok(p.clone());
    }
    if p.is_identity() {
        return Ok(q.clone());
    }
    let degree = p.degree.checked_add(&q.degree).ok_or(PathError::DegreeOverflow)?;
    let mut edges = Vec::with_capacity(p.len() + q.len());
    edges.extend_from_slice(&p.edges);
    edges.extend_from_slice(&q.edges);
    sort_by_color(g, &mut edges)?;
    Ok(NormalPath {
        degree,
        range: p.range,
        source: q.source,
        edges,
    })
}

/// The unique factorization `p = p[0,m] · p[m,d(p)]`.
pub fn split(g: &KGraph, p: &NormalPath, m: &Degree) -> Result<(NormalPath, NormalPath), PathError> {
    let rest = p.degree.checked_sub(m).ok_or(PathError::DegreeOutOfRange)?;
    let mut colors = m.sorted_colors();
    colors.extend(rest.sorted_colors());
    let e = reorder(g, &p.edges, &colors)?;
    let cut = m.total();
    let junction = if cut == 0 {
        p.range
    } else {
        g.edge(e[cut - 1]).source
    };
    let head = NormalPath::from_sorted(g, e[..cut].to_vec(), junction);
    let tail = NormalPath::from_sorted(g, e[cut..].to_vec(), junction);
    Ok((head, tail))
}

/// The segment `p[m, n]`.
pub fn segment(g: &KGraph, p: &NormalPath, m: &Degree, n: &Degree) -> Result<NormalPath, PathError> {
    if !m.le(n) || !n.le(&p.degree) {
        return Err(PathError::DegreeOutOfRange);
    }
    let mid = n.checked_sub(m).ok_or(PathError::DegreeOutOfRange)?;
    let rest = p.degree.checked_sub(n).ok_or(PathError::DegreeOutOfRange)?;
    let mut colors = m.sorted_colors();
    colors.extend(mid.sorted_colors());
    colors.extend(rest.sorted_colors());
    let e = reorder(g, &p.edges, &colors)?;
    let (a, b) = (m.total(), n.total());
    let junction = if a == 0 { p.range } else { g.edge(e[a - 1]).source };
    Ok(NormalPath::from_sorted(g, e[a..b].to_vec(), junction))
}

/// If `z = q·s`, return `s`.
pub fn strip_prefix(g: &KGraph, z: &NormalPath, q: &NormalPath) -> Option<NormalPath> {
    if z.range != q.range || !q.degree.le(&z.degree) {
        return None;
    }
    if q.is_identity() {
        return Some(z.clone());
    }
    let (head, tail) = split(g, z, &q.degree).ok()?;
    (head == *q).then_some(tail)
}

/// Whether `z ∈ qC`.
pub fn has_prefix(g: &KGraph, z: &NormalPath, q: &NormalPath) -> bool {
    strip_prefix(g, z, q).is_some()
}

/// All paths `x` with `range(x) = v` and `degree(x) = m` (the set `vC_m`).
///
/// Paths are generated directly in colour-sorted form, so no rewriting is
/// needed and the output is sorted.
pub fn enumerate_from_vertex(g: &KGraph, v: VertexId, m: &Degree) -> Vec<NormalPath> {
    let colors = m.sorted_colors();
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(colors.len());
    fn walk(
        g: &KGraph,
        colors: &[usize],
        at: VertexId,
        stack: &mut Vec<EdgeId>,
        out: &mut Vec<Vec<EdgeId>>,
    ) {
        if stack.len() == colors.len() {
            out.push(stack.clone());
            return;
        }
        let c = colors[stack.len()];
        for &e in g.edges_into(at, c) {
            stack.push(e);
            walk(g, colors, g.edge(e).source, stack, out);
            stack.pop();
        }
    }
    walk(g, &colors, v, &mut stack, &mut out);
    let mut paths: Vec<NormalPath> = out
        .into_iter()
        .map(|edges| NormalPath::from_sorted(g, edges, v))
        .collect();
    paths.sort();
    paths
}

/// All `p·u` with `degree(u) = m`.
pub fn enumerate_extensions(g: &KGraph, p: &NormalPath, m: &Degree) -> Vec<NormalPath> {
    let mut out: Vec<NormalPath> = enumerate_from_vertex(g, p.source, m)
        .iter()
        .map(|u| compose(g, p, u).expect("extensions of a valid path compose"))
        .collect();
    out.sort();
    out
}

/// `C_m`: every path of degree `m`, at every vertex.
pub fn all_of_degree(g: &KGraph, m: &Degree) -> Vec<NormalPath> {
    let mut out: Vec<NormalPath> = g
        .vertex_ids()
        .flat_map(|v| enumerate_from_vertex(g, v, m))
        .collect();
    out.sort();
    out
}

/// Necessary condition for `pC ∩ qC ≠ ∅`: equal ranges and equal initial
/// segments up to `d(p) ∧ d(q)`.
fn heads_agree(g: &KGraph, p: &NormalPath, q: &NormalPath) -> bool {
    if p.range != q.range {
        return false;
    }
    let low = p.degree.meet(&q.degree);
    if low.is_zero() {
        return true;
    }
    let head = |x: &NormalPath| split(g, x, &low).expect("meet is below both").0;
    head(p) == head(q)
}

/// Minimal common extensions: the paths of degree `d(p) ∨ d(q)` lying in
/// `pC ∩ qC`. Empty iff `p` and `q` are independent.
pub fn mce(g: &KGraph, p: &NormalPath, q: &NormalPath) -> Vec<NormalPath> {
    if !heads_agree(g, p, q) {
        return Vec::new();
    }
    let join = p.degree.join(&q.degree);
    let step = join.checked_sub(&p.degree).expect("join dominates");
    let mut out: Vec<NormalPath> = enumerate_extensions(g, p, &step)
        .into_iter()
        .filter(|z| has_prefix(g, z, q))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Whether `pC ∩ qC` is non-empty. Stops at the first common extension.
pub fn dependent(g: &KGraph, p: &NormalPath, q: &NormalPath) -> bool {
    if !heads_agree(g, p, q) {
        return false;
    }
    if p.degree.le(&q.degree) {
        return has_prefix(g, q, p);
    }
    if q.degree.le(&p.degree) {
        return has_prefix(g, p, q);
    }
    let join = p.degree.join(&q.degree);
    let step = join.checked_sub(&p.degree).expect("join dominates");
    enumerate_from_vertex(g, p.source, &step).iter().any(|u| {
        let z = compose(g, p, u).expect("extensions of a valid path compose");
        has_prefix(g, &z, q)
    })
}
