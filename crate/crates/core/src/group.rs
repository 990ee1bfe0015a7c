//! The group of units: bijections between right ideals generated by maximal
//! codes, modulo agreement on a common essential ideal.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::degree::Degree;
use crate::model::{KGraph, VertexId};
use crate::path::{
    compose, enumerate_extensions, enumerate_from_vertex, split, strip_prefix, NormalPath, PathError,
};
use crate::semigroup::{BasicMorphism, MorphismTable};
use crate::structure::first_source;

pub const DEFAULT_DEGREE_CAP: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("the graph has a source at vertex `{vertex}` in colour {color}")]
    HasSources { vertex: String, color: usize },
    #[error("target and source of a pair must end at the same vertex")]
    SourceMismatch,
    #[error("the {0} paths do not form a code")]
    NotACode(&'static str),
    #[error("the {0} code is not maximal")]
    NotMaximal(&'static str),
    #[error("refinement degree {0} is below a domain degree")]
    DegreeTooSmall(Degree),
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCapExceeded { degree: Degree, cap: u32 },
    #[error("no domain path is a prefix of the input")]
    OutsideDomain,
    #[error("could not balance source vertices after {0} attempts")]
    Unbalanced(usize),
    #[error(transparent)]
    Path(#[from] PathError),
}

impl GroupError {
    pub fn code(&self) -> &'static str {
        match self {
            GroupError::HasSources { .. } => "HAS_SOURCES",
            GroupError::SourceMismatch => "SOURCE_MISMATCH",
            GroupError::NotACode(_) => "NOT_A_CODE",
            GroupError::NotMaximal(_) => "NOT_MAXIMAL",
            GroupError::DegreeTooSmall(_) => "DEGREE_TOO_SMALL",
            GroupError::DegreeCapExceeded { .. } => "DEGREE_CAP_EXCEEDED",
            GroupError::OutsideDomain => "OUTSIDE_DOMAIN",
            GroupError::Unbalanced(_) => "UNBALANCED",
            GroupError::Path(e) => e.code(),
        }
    }
}

/// A group element, stored as a bijective table between two maximal codes.
/// Pairs are sorted by domain path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pairs: Vec<BasicMorphism>,
}

impl GroupElement {
    pub fn pairs(&self) -> &[BasicMorphism] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn domain(&self) -> Vec<NormalPath> {
        self.pairs.iter().map(|p| p.source().clone()).collect()
    }

    pub fn range(&self) -> Vec<NormalPath> {
        self.pairs.iter().map(|p| p.target().clone()).collect()
    }

    fn from_sorted(mut pairs: Vec<BasicMorphism>) -> Self {
        pairs.sort();
        GroupElement { pairs }
    }

    fn swapped(&self) -> Self {
        Self::from_sorted(self.pairs.iter().map(BasicMorphism::inverse).collect())
    }

    pub fn to_table(&self, g: &KGraph) -> MorphismTable {
        MorphismTable::new(g, self.pairs.clone()).expect("group elements are compatible tables")
    }
}

/// Arithmetic in the group of a fixed k-graph without sources.
#[derive(Clone, Copy, Debug)]
pub struct Group<'g> {
    graph: &'g KGraph,
    degree_cap: u32,
}

/// Checks that every path of degree `m = ∨ d(x)` has exactly one prefix in
/// `xs`. Without sources this is equivalent to `xs` being a maximal code:
/// two dependent members would share a common extension of degree `m`.
fn check_maximal_code(g: &KGraph, xs: &[NormalPath], side: &'static str) -> Result<(), GroupError> {
    let set: HashSet<&NormalPath> = xs.iter().collect();
    if set.len() != xs.len() {
        return Err(GroupError::NotACode(side));
    }
    let m = xs
        .iter()
        .fold(Degree::zero(g.rank()), |acc, x| acc.join(x.degree()));
    let boxes = m.box_below();
    for v in g.vertex_ids() {
        for z in enumerate_from_vertex(g, v, &m) {
            let mut hits = 0;
            for d in &boxes {
                let head = if d.is_zero() {
                    NormalPath::identity(g, v)
                } else {
                    split(g, &z, d)?.0
                };
                if set.contains(&head) {
                    hits += 1;
                }
            }
            match hits {
                0 => return Err(GroupError::NotMaximal(side)),
                1 => {}
                _ => return Err(GroupError::NotACode(side)),
            }
        }
    }
    Ok(())
}

impl<'g> Group<'g> {
    pub fn new(graph: &'g KGraph) -> Result<Self, GroupError> {
        if let Some((v, color)) = first_source(graph) {
            return Err(GroupError::HasSources {
                vertex: graph.vertex_name(v).to_string(),
                color,
            });
        }
        Ok(Group {
            graph,
            degree_cap: DEFAULT_DEGREE_CAP,
        })
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn graph(&self) -> &'g KGraph {
        self.graph
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    /// Build an element from `(target, source)` pairs, checking both sides
    /// are maximal codes.
    pub fn element(&self, pairs: Vec<(NormalPath, NormalPath)>) -> Result<GroupElement, GroupError> {
        let pairs = pairs
            .into_iter()
            .map(|(x, y)| BasicMorphism::new(x, y).map_err(|_| GroupError::SourceMismatch))
            .collect::<Result<Vec<_>, _>>()?;
        let e = GroupElement::from_sorted(pairs);
        check_maximal_code(self.graph, &e.domain(), "domain")?;
        check_maximal_code(self.graph, &e.range(), "range")?;
        Ok(e)
    }

    /// Re-check the element invariants.
    pub fn check(&self, e: &GroupElement) -> Result<(), GroupError> {
        check_maximal_code(self.graph, &e.domain(), "domain")?;
        check_maximal_code(self.graph, &e.range(), "range")
    }

    pub fn identity(&self) -> GroupElement {
        let g = self.graph;
        GroupElement::from_sorted(
            g.vertex_ids()
                .map(|v| {
                    let id = NormalPath::identity(g, v);
                    BasicMorphism::new(id.clone(), id).expect("identity pair")
                })
                .collect(),
        )
    }

    fn check_cap(&self, m: &Degree) -> Result<(), GroupError> {
        if m.components().iter().any(|&c| c > self.degree_cap) {
            return Err(GroupError::DegreeCapExceeded {
                degree: m.clone(),
                cap: self.degree_cap,
            });
        }
        Ok(())
    }

    /// Expand every pair so the domain becomes all paths of degree `m`.
    pub fn refine_to_degree(&self, e: &GroupElement, m: &Degree) -> Result<GroupElement, GroupError> {
        self.check_cap(m)?;
        let g = self.graph;
        let mut pairs = Vec::new();
        for pair in &e.pairs {
            let step = m
                .checked_sub(pair.source().degree())
                .ok_or_else(|| GroupError::DegreeTooSmall(m.clone()))?;
            for s in enumerate_from_vertex(g, pair.source().source(), &step) {
                pairs.push(
                    BasicMorphism::new(compose(g, pair.target(), &s)?, compose(g, pair.source(), &s)?)
                        .expect("shared suffix"),
                );
            }
        }
        Ok(GroupElement::from_sorted(pairs))
    }

    fn join_of(&self, paths: impl IntoIterator<Item = NormalPath>) -> Degree {
        paths
            .into_iter()
            .fold(Degree::zero(self.graph.rank()), |acc, p| acc.join(p.degree()))
    }

    /// `a·b`: apply `b`, then `a`. The product is reduced before it is
    /// returned so repeated multiplication does not keep growing tables.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        let m = self.join_of(b.range().into_iter().chain(a.domain()));
        let b_fine = self.refine_to_degree(&b.swapped(), &m)?.swapped();
        let a_fine = self.refine_to_degree(a, &m)?;
        let lookup: HashMap<&NormalPath, &NormalPath> =
            a_fine.pairs.iter().map(|p| (p.source(), p.target())).collect();
        let pairs = b_fine
            .pairs
            .iter()
            .map(|p| {
                let x = lookup[p.target()];
                BasicMorphism::new(x.clone(), p.source().clone()).expect("vertices match")
            })
            .collect();
        Ok(self.reduce(&GroupElement::from_sorted(pairs)))
    }

    pub fn invert(&self, e: &GroupElement) -> GroupElement {
        e.swapped()
    }

    /// Equality in the group: both refined to the join of their domain
    /// degrees give the same table.
    pub fn equals(&self, a: &GroupElement, b: &GroupElement) -> Result<bool, GroupError> {
        let m = self.join_of(a.domain().into_iter().chain(b.domain()));
        Ok(self.refine_to_degree(a, &m)? == self.refine_to_degree(b, &m)?)
    }

    pub fn apply_to_path(&self, e: &GroupElement, p: &NormalPath) -> Result<NormalPath, GroupError> {
        let g = self.graph;
        for pair in &e.pairs {
            if let Some(rest) = strip_prefix(g, p, pair.source()) {
                return Ok(compose(g, pair.target(), &rest)?);
            }
        }
        Err(GroupError::OutsideDomain)
    }

    /// Merge complete one-step families `{(x·t, y·t) : d(t) = ε_i}` back into
    /// `(x, y)` until no merge applies.
    pub fn reduce(&self, e: &GroupElement) -> GroupElement {
        let g = self.graph;
        let k = g.rank();
        let mut pairs = e.pairs.clone();
        loop {
            let index: HashMap<NormalPath, usize> = pairs
                .iter()
                .enumerate()
                .map(|(i, p)| (p.source().clone(), i))
                .collect();
            let mut used = vec![false; pairs.len()];
            let mut merged = Vec::new();
            for i in 0..pairs.len() {
                if used[i] {
                    continue;
                }
                if let Some((parent, members)) = self.mergeable(&pairs, i, &index, &used, k) {
                    for j in members {
                        used[j] = true;
                    }
                    merged.push(parent);
                }
            }
            if merged.is_empty() {
                return GroupElement::from_sorted(pairs);
            }
            let mut next: Vec<BasicMorphism> = pairs
                .into_iter()
                .zip(used)
                .filter_map(|(p, u)| (!u).then_some(p))
                .collect();
            next.extend(merged);
            pairs = next;
        }
    }

    fn mergeable(
        &self,
        pairs: &[BasicMorphism],
        i: usize,
        index: &HashMap<NormalPath, usize>,
        used: &[bool],
        k: usize,
    ) -> Option<(BasicMorphism, Vec<usize>)> {
        let g = self.graph;
        let (x_full, y_full) = (pairs[i].target(), pairs[i].source());
        for c in 1..=k {
            if y_full.degree().get(c) == 0 || x_full.degree().get(c) == 0 {
                continue;
            }
            let y_head = y_full.degree().checked_sub(&Degree::unit(k, c)).expect("positive");
            let x_head = x_full.degree().checked_sub(&Degree::unit(k, c)).expect("positive");
            let (y, t) = split(g, y_full, &y_head).ok()?;
            let (x, t2) = split(g, x_full, &x_head).ok()?;
            if t != t2 {
                continue;
            }
            let mut members = Vec::new();
            let complete = enumerate_extensions(g, &y, &Degree::unit(k, c)).into_iter().all(|ys| {
                let Some(&j) = index.get(&ys) else { return false };
                if used[j] {
                    return false;
                }
                let s = strip_prefix(g, &ys, &y).expect("extension of y");
                let ok = compose(g, &x, &s).ok().as_ref() == Some(pairs[j].target());
                if ok {
                    members.push(j);
                }
                ok
            });
            if complete {
                return Some((BasicMorphism::new(x, y).expect("same source vertex"), members));
            }
        }
        None
    }

    /// A random element: both sides start from the vertex set and receive the
    /// same number of random one-step expansions (a path is replaced by all
    /// its extensions in one colour); the sides are then matched by a random
    /// bijection respecting source vertices. Retries until the source
    /// vertices balance.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, expansions: usize) -> Result<GroupElement, GroupError> {
        const ATTEMPTS: usize = 1000;
        for _ in 0..ATTEMPTS {
            let xs = self.random_code(rng, expansions);
            let ys = self.random_code(rng, expansions);
            let mut by_vertex: HashMap<VertexId, (Vec<NormalPath>, Vec<NormalPath>)> = HashMap::new();
            for x in xs {
                by_vertex.entry(x.source()).or_default().0.push(x);
            }
            for y in ys {
                by_vertex.entry(y.source()).or_default().1.push(y);
            }
            if by_vertex.values().any(|(a, b)| a.len() != b.len()) {
                continue;
            }
            let mut vertices: Vec<VertexId> = by_vertex.keys().copied().collect();
            vertices.sort();
            let mut pairs = Vec::new();
            for v in vertices {
                let (targets, mut sources) = by_vertex.remove(&v).expect("present");
                sources.shuffle(rng);
                for (x, y) in targets.into_iter().zip(sources) {
                    pairs.push((x, y));
                }
            }
            return self.element(pairs);
        }
        Err(GroupError::Unbalanced(ATTEMPTS))
    }

    fn random_code<R: Rng + ?Sized>(&self, rng: &mut R, expansions: usize) -> Vec<NormalPath> {
        let g = self.graph;
        let mut code: Vec<NormalPath> = g.vertex_ids().map(|v| NormalPath::identity(g, v)).collect();
        for _ in 0..expansions {
            let i = rng.gen_range(0..code.len());
            let color = rng.gen_range(1..=g.rank());
            let p = code.swap_remove(i);
            code.extend(enumerate_extensions(g, &p, &Degree::unit(g.rank(), color)));
        }
        code.sort();
        code
    }
}
