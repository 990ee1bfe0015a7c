//! Bounded decision procedures for the conditions under which the group is
//! simple: no sources, cofinality, aperiodicity.

use std::collections::VecDeque;
use std::fmt;

use crate::degree::Degree;
use crate::model::{EdgeId, KGraph, VertexId};
use crate::path::{compose, dependent, enumerate_from_vertex, normalize, NormalPath};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    UnknownUpToBound,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "HOLDS",
            Verdict::Fails => "FAILS",
            Verdict::UnknownUpToBound => "UNKNOWN_UP_TO_BOUND",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// First `(vertex, colour)` with no edge of that colour entering the vertex.
pub fn first_source(g: &KGraph) -> Option<(VertexId, usize)> {
    g.vertex_ids()
        .flat_map(|v| (1..=g.rank()).map(move |c| (v, c)))
        .find(|&(v, c)| g.edges_into(v, c).is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourcesReport {
    pub verdict: Verdict,
    pub counterexample: Option<(VertexId, usize)>,
}

pub fn has_no_sources(g: &KGraph) -> SourcesReport {
    match first_source(g) {
        Some(found) => SourcesReport {
            verdict: Verdict::Fails,
            counterexample: Some(found),
        },
        None => SourcesReport {
            verdict: Verdict::Holds,
            counterexample: None,
        },
    }
}

/// `reach[e][f]`: some path has range `e` and source `f`.
fn reachability(g: &KGraph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut reach = vec![vec![false; n]; n];
    for e in 0..n {
        reach[e][e] = true;
        let mut queue = VecDeque::from([e]);
        while let Some(v) = queue.pop_front() {
            for c in 1..=g.rank() {
                for &x in g.edges_into(VertexId(v as u32), c) {
                    let w = g.edge(x).source.index();
                    if !reach[e][w] {
                        reach[e][w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    reach
}

/// A path with range `e` and source `f`, found by breadth-first search over
/// the skeleton.
pub fn connecting_path(g: &KGraph, e: VertexId, f: VertexId) -> Option<NormalPath> {
    if e == f {
        return Some(NormalPath::identity(g, e));
    }
    let n = g.vertex_count();
    let mut via: Vec<Option<EdgeId>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[e.index()] = true;
    let mut queue = VecDeque::from([e]);
    while let Some(v) = queue.pop_front() {
        for c in 1..=g.rank() {
            for &x in g.edges_into(v, c) {
                let w = g.edge(x).source;
                if seen[w.index()] {
                    continue;
                }
                seen[w.index()] = true;
                via[w.index()] = Some(x);
                if w == f {
                    let mut edges = Vec::new();
                    let mut at = f;
                    while at != e {
                        let x = via[at.index()].expect("visited");
                        edges.push(x);
                        at = g.edge(x).range;
                    }
                    edges.reverse();
                    return Some(normalize(g, &edges).expect("edges chain together"));
                }
                queue.push_back(w);
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofinalityReport {
    pub verdict: Verdict,
    /// For `FAILS`: two vertices whose futures are disjoint. For
    /// `UNKNOWN_UP_TO_BOUND`: a pair with no connecting path.
    pub counterexample: Option<(VertexId, VertexId)>,
}

/// `HOLDS` when every vertex is reachable from every other; `FAILS` when two
/// vertices have no common vertex in their futures, so no path out of one can
/// be continued back into the other.
pub fn cofinality_check(g: &KGraph) -> CofinalityReport {
    let reach = reachability(g);
    let n = g.vertex_count();
    for e in 0..n {
        for f in 0..n {
            if !(0..n).any(|w| reach[e][w] && reach[f][w]) {
                return CofinalityReport {
                    verdict: Verdict::Fails,
                    counterexample: Some((VertexId(e as u32), VertexId(f as u32))),
                };
            }
        }
    }
    for e in 0..n {
        for f in 0..n {
            if !reach[e][f] {
                return CofinalityReport {
                    verdict: Verdict::UnknownUpToBound,
                    counterexample: Some((VertexId(e as u32), VertexId(f as u32))),
                };
            }
        }
    }
    CofinalityReport {
        verdict: Verdict::Holds,
        counterexample: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub left: NormalPath,
    pub right: NormalPath,
    pub extension: NormalPath,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AperiodicityReport {
    /// `HOLDS` (up to the bounds) or `UNKNOWN_UP_TO_BOUND`; never `FAILS`.
    pub verdict: Verdict,
    pub pair_bound: Degree,
    pub witness_bound: Degree,
    pub pairs_examined: usize,
    pub witnesses: Vec<Witness>,
    pub unresolved: Vec<(NormalPath, NormalPath)>,
}

/// For every pair `a ≠ b` with a common source vertex and degrees within
/// `pair_bound`, look for `u` of degree within `witness_bound` making `a·u`
/// and `b·u` independent. Extensions are tried by increasing total degree.
pub fn aperiodicity_scan(g: &KGraph, pair_bound: &Degree, witness_bound: &Degree) -> AperiodicityReport {
    let pair_degrees = pair_bound.box_below();
    let witness_degrees = witness_bound.box_below();
    let mut by_source: Vec<Vec<NormalPath>> = vec![Vec::new(); g.vertex_count()];
    for v in g.vertex_ids() {
        for d in &pair_degrees {
            for p in enumerate_from_vertex(g, v, d) {
                by_source[p.source().index()].push(p);
            }
        }
    }
    let mut extensions: Vec<Option<Vec<NormalPath>>> = vec![None; g.vertex_count()];

    let mut witnesses = Vec::new();
    let mut unresolved = Vec::new();
    let mut pairs_examined = 0;
    for (w, paths) in by_source.iter_mut().enumerate() {
        paths.sort();
        if paths.len() < 2 {
            continue;
        }
        let ext = extensions[w].get_or_insert_with(|| {
            witness_degrees
                .iter()
                .flat_map(|d| enumerate_from_vertex(g, VertexId(w as u32), d))
                .collect()
        });
        for i in 0..paths.len() {
            for j in (i + 1)..paths.len() {
                pairs_examined += 1;
                let (a, b) = (&paths[i], &paths[j]);
                let found = ext.iter().find(|u| {
                    let au = compose(g, a, u).expect("u starts at the common source");
                    let bu = compose(g, b, u).expect("u starts at the common source");
                    !dependent(g, &au, &bu)
                });
                match found {
                    Some(u) => witnesses.push(Witness {
                        left: a.clone(),
                        right: b.clone(),
                        extension: u.clone(),
                    }),
                    None => unresolved.push((a.clone(), b.clone())),
                }
            }
        }
    }
    AperiodicityReport {
        verdict: if unresolved.is_empty() {
            Verdict::Holds
        } else {
            Verdict::UnknownUpToBound
        },
        pair_bound: pair_bound.clone(),
        witness_bound: witness_bound.clone(),
        pairs_examined,
        witnesses,
        unresolved,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Simplicity {
    /// Every hypothesis holds, aperiodicity up to the scan bounds.
    Simple,
    /// No hypothesis fails, but one could not be confirmed.
    NotDecided,
    /// A decidable hypothesis fails.
    Fails,
}

impl Simplicity {
    pub fn as_str(self) -> &'static str {
        match self {
            Simplicity::Simple => "SIMPLE",
            Simplicity::NotDecided => "NOT_DECIDED",
            Simplicity::Fails => "FAILS",
        }
    }
}

impl fmt::Display for Simplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub verdict: Simplicity,
    pub sources: SourcesReport,
    pub cofinality: CofinalityReport,
    pub aperiodicity: AperiodicityReport,
    /// Some vertex has two distinct paths of a common degree within
    /// `(1,…,1)`, so the monoid is countably infinite rather than a finite
    /// symmetric inverse monoid.
    pub infinite: bool,
}

pub fn is_infinite(g: &KGraph) -> bool {
    let degrees = Degree::splat(g.rank(), 1).box_below();
    g.vertex_ids()
        .any(|v| degrees.iter().any(|d| enumerate_from_vertex(g, v, d).len() >= 2))
}

pub fn simplicity_verdict(g: &KGraph, pair_bound: &Degree, witness_bound: &Degree) -> SimplicityReport {
    let sources = has_no_sources(g);
    let cofinality = cofinality_check(g);
    let aperiodicity = aperiodicity_scan(g, pair_bound, witness_bound);
    let verdicts = [sources.verdict, cofinality.verdict, aperiodicity.verdict];
    let verdict = if verdicts.contains(&Verdict::Fails) {
        Simplicity::Fails
    } else if verdicts.iter().all(|&v| v == Verdict::Holds) {
        Simplicity::Simple
    } else {
        Simplicity::NotDecided
    };
    SimplicityReport {
        verdict,
        sources,
        cofinality,
        aperiodicity,
        infinite: is_infinite(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{bouquet_product, ckr, double_cover, Labelling};
    use crate::model::{EdgeRecord, KGraph};

    #[test]
    fn sources() {
        assert_eq!(has_no_sources(&ckr(2, 1)).verdict, Verdict::Holds);
        let edges = vec![EdgeRecord {
            name: "a".into(),
            color: 1,
            range: "v".into(),
            source: "v".into(),
        }];
        let g = KGraph::new(2, vec!["v".into()], edges, vec![]).unwrap();
        let report = has_no_sources(&g);
        assert_eq!(report.verdict, Verdict::Fails);
        assert_eq!(report.counterexample, Some((VertexId(0), 2)));
    }

    #[test]
    fn cofinality() {
        assert_eq!(cofinality_check(&ckr(2, 2)).verdict, Verdict::Holds);
        let sizes = [1, 1];
        let split = double_cover(2, &sizes, &Labelling::constant(&sizes, 0));
        let report = cofinality_check(&split);
        assert_eq!(report.verdict, Verdict::Fails);
        assert!(report.counterexample.is_some());
        let joined = double_cover(2, &sizes, &Labelling::uniform(&sizes));
        assert_eq!(cofinality_check(&joined).verdict, Verdict::Holds);
    }

    #[test]
    fn connecting_paths_run_backwards_along_edges() {
        let g = ckr(2, 2);
        for e in g.vertex_ids() {
            for f in g.vertex_ids() {
                let p = connecting_path(&g, e, f).unwrap();
                assert_eq!((p.range(), p.source()), (e, f));
            }
        }
    }

    #[test]
    fn bouquet_pairs_separate_immediately() {
        let g = bouquet_product(1, &[2]);
        let report = aperiodicity_scan(&g, &Degree::splat(1, 1), &Degree::splat(1, 1));
        assert_eq!(report.verdict, Verdict::Holds);
        let w = report
            .witnesses
            .iter()
            .find(|w| w.left.len() == 1 && w.right.len() == 1)
            .unwrap();
        assert!(w.extension.is_identity());
    }

    #[test]
    fn lattice_is_periodic_up_to_bound() {
        let g = bouquet_product(2, &[1, 1]);
        let report = aperiodicity_scan(&g, &Degree::splat(2, 1), &Degree::splat(2, 3));
        assert_eq!(report.verdict, Verdict::UnknownUpToBound);
        assert!(!report.unresolved.is_empty());
        let verdict = simplicity_verdict(&g, &Degree::splat(2, 1), &Degree::splat(2, 2));
        assert_eq!(verdict.verdict, Simplicity::NotDecided);
        assert!(!verdict.infinite);
    }

    #[test]
    fn two_v_is_simple() {
        let g = bouquet_product(2, &[2, 2]);
        let report = simplicity_verdict(&g, &Degree::splat(2, 1), &Degree::splat(2, 2));
        assert_eq!(report.verdict, Simplicity::Simple);
        assert!(report.infinite);
    }
}
