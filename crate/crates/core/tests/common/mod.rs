//! Brute-force oracles shared by the integration suites.
//!
//! Prefix tests here never call the library's segment machinery: `z ∈ pC` is
//! decided by enumerating every `u` of degree `d(z) - d(p)` at the source of
//! `p` and comparing `p·u` with `z`.

#![allow(dead_code)]

use std::collections::BTreeSet;

use kgraph::constructions::{bouquet_product, ckr, double_cover, Labelling};
use kgraph::path::{compose, enumerate_from_vertex};
use kgraph::semigroup::{BasicMorphism, MorphismTable};
use kgraph::{Degree, KGraph, NormalPath, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;

/// The `u` with `p·u = z`, found by exhaustive search.
pub fn factor(g: &KGraph, z: &NormalPath, p: &NormalPath) -> Option<NormalPath> {
    if z.range() != p.range() {
        return None;
    }
    let rest = z.degree().checked_sub(p.degree())?;
    enumerate_from_vertex(g, p.source(), &rest)
        .into_iter()
        .find(|u| compose(g, p, u).as_ref() == Ok(z))
}

/// `{p·u : d(u) = m}` built by composition alone.
pub fn extensions_by_composition(g: &KGraph, p: &NormalPath, m: &Degree) -> BTreeSet<NormalPath> {
    enumerate_from_vertex(g, p.source(), m)
        .iter()
        .map(|u| compose(g, p, u).expect("u starts at the source of p"))
        .collect()
}

/// Minimal common extensions: the paths of the joined degree at the common
/// range that arise both as `p·u` and as `q·w`.
pub fn mce_oracle(g: &KGraph, p: &NormalPath, q: &NormalPath) -> BTreeSet<NormalPath> {
    if p.range() != q.range() {
        return BTreeSet::new();
    }
    let join = p.degree().join(q.degree());
    let from_p = extensions_by_composition(g, p, &join.checked_sub(p.degree()).expect("join"));
    let from_q = extensions_by_composition(g, q, &join.checked_sub(q.degree()).expect("join"));
    enumerate_from_vertex(g, p.range(), &join)
        .into_iter()
        .filter(|z| from_p.contains(z) && from_q.contains(z))
        .collect()
}

/// Image of `w` under `y·c ↦ x·c`.
pub fn apply_basic(g: &KGraph, b: &BasicMorphism, w: &NormalPath) -> Option<NormalPath> {
    let u = factor(g, w, b.source())?;
    Some(compose(g, b.target(), &u).expect("shared source"))
}

/// Image of `w` under a table: every pair defined at `w` must agree.
pub fn apply_table(g: &KGraph, t: &MorphismTable, w: &NormalPath) -> Option<NormalPath> {
    let images: BTreeSet<NormalPath> = t.pairs().iter().filter_map(|b| apply_basic(g, b, w)).collect();
    assert!(images.len() <= 1, "table is not a function at {w:?}");
    images.into_iter().next()
}

/// Every path with degree componentwise at most `bound`.
pub fn paths_up_to(g: &KGraph, bound: &Degree) -> Vec<NormalPath> {
    let mut out = Vec::new();
    for d in bound.box_below() {
        for v in g.vertex_ids() {
            out.extend(enumerate_from_vertex(g, v, &d));
        }
    }
    out
}

pub fn random_degree<R: Rng>(rng: &mut R, bound: &Degree) -> Degree {
    Degree::from_vec(bound.components().iter().map(|&b| rng.gen_range(0..=b)).collect())
}

/// A uniformly chosen path of degree `d` with range `v`, if any exists.
pub fn random_path_from<R: Rng>(rng: &mut R, g: &KGraph, v: VertexId, d: &Degree) -> Option<NormalPath> {
    enumerate_from_vertex(g, v, d).choose(rng).cloned()
}

pub fn random_path<R: Rng>(rng: &mut R, g: &KGraph, bound: &Degree) -> NormalPath {
    loop {
        let v = VertexId(rng.gen_range(0..g.vertex_count()) as u32);
        let d = random_degree(rng, bound);
        if let Some(p) = random_path_from(rng, g, v, &d) {
            return p;
        }
    }
}

/// Named example graphs used across suites.
pub fn example_graphs() -> Vec<(String, KGraph)> {
    let mut out = vec![
        ("B2".to_string(), bouquet_product(1, &[2])),
        ("2V".to_string(), bouquet_product(2, &[2, 2])),
        ("N2".to_string(), bouquet_product(2, &[1, 1])),
        ("C_2,1".to_string(), ckr(2, 1)),
        ("C_2,2".to_string(), ckr(2, 2)),
        ("C_3,1".to_string(), ckr(3, 1)),
    ];
    let sizes = [1, 2];
    out.push(("cover_u(1,2)".into(), double_cover(2, &sizes, &Labelling::uniform(&sizes))));
    out.push(("cover_m(1,2)".into(), double_cover(2, &sizes, &Labelling::mixed(&sizes))));
    out
}
