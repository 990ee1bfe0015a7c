mod common;

use common::{example_graphs, factor, mce_oracle, paths_up_to, random_degree, random_path, random_path_from};
use kgraph::constructions::ckr;

use kgraph::path::{
    compose, dependent, format_path, has_prefix, mce, normalize, parse_path, segment, split, strip_prefix,
};
use kgraph::{Degree, KGraph, NormalPath};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(p, q, r)` with `p·q·r` defined.
fn composable_triple(rng: &mut ChaCha8Rng, g: &KGraph, bound: &Degree) -> (NormalPath, NormalPath, NormalPath) {
    loop {
        let p = random_path(rng, g, bound);
        let d = random_degree(rng, bound);
        let Some(q) = random_path_from(rng, g, p.source(), &d) else { continue };
        let d = random_degree(rng, bound);
        let Some(r) = random_path_from(rng, g, q.source(), &d) else { continue };
        return (p, q, r);
    }
}

#[test]
fn composition_is_associative_on_a_thousand_triples() {
    let g = ckr(2, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let (p, q, r) = composable_triple(&mut rng, &g, &Degree::splat(2, 2));
        let left = compose(&g, &compose(&g, &p, &q).unwrap(), &r).unwrap();
        let right = compose(&g, &p, &compose(&g, &q, &r).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(left.degree(), &p.degree().checked_add(q.degree()).unwrap().checked_add(r.degree()).unwrap());
    }
}

#[test]
fn identities_are_units() {
    for (_, g) in example_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let p = random_path(&mut rng, &g, &Degree::splat(g.rank(), 2));
            let left = NormalPath::identity(&g, p.range());
            let right = NormalPath::identity(&g, p.source());
            assert_eq!(compose(&g, &left, &p).unwrap(), p);
            assert_eq!(compose(&g, &p, &right).unwrap(), p);
        }
    }
}

#[test]
fn factorization_is_unique_by_enumeration() {
    // every degree split of every small path has exactly one factorization
    for (name, g) in example_graphs() {
        let bound = Degree::splat(g.rank(), if g.rank() >= 3 { 1 } else { 2 });
        let all = paths_up_to(&g, &bound);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let z = &all[rng.gen_range(0..all.len())];
            for m in z.degree().box_below() {
                let rest = z.degree().checked_sub(&m).unwrap();
                let count = all
                    .iter()
                    .filter(|p| p.degree() == &m && p.range() == z.range())
                    .filter_map(|p| factor(&g, z, p).map(|q| (p, q)))
                    .inspect(|(_, q)| assert_eq!(q.degree(), &rest))
                    .count();
                assert_eq!(count, 1, "{name}: {z:?} at {m}");
                let (head, tail) = split(&g, z, &m).unwrap();
                assert_eq!(factor(&g, z, &head), Some(tail));
            }
        }
    }
}

#[test]
fn levi_property() {
    // x·y = u·v with d(x) ≥ d(u) forces x = u·t and v = t·y
    for (name, g) in example_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let z = random_path(&mut rng, &g, &Degree::splat(g.rank(), 2));
            let dx = random_degree(&mut rng, z.degree());
            let du = random_degree(&mut rng, &dx);
            let (x, y) = split(&g, &z, &dx).unwrap();
            let (u, v) = split(&g, &z, &du).unwrap();
            let t = segment(&g, &z, &du, &dx).unwrap();
            assert_eq!(compose(&g, &u, &t).unwrap(), x, "{name}");
            assert_eq!(compose(&g, &t, &y).unwrap(), v, "{name}");
        }
    }
}

#[test]
fn every_two_coloured_path_has_one_partner() {
    // for each composable e·f of colours i ≠ j, exactly one f'·e' of the
    // opposite colour order has the same endpoints and the same normal form
    for (name, g) in example_graphs() {
        for e in 0..g.edges().len() {
            let e = kgraph::EdgeId(e as u32);
            for f in 0..g.edges().len() {
                let f = kgraph::EdgeId(f as u32);
                let (ce, cf) = (g.color(e), g.color(f));
                if ce == cf || g.edge(e).source != g.edge(f).range {
                    continue;
                }
                let target = normalize(&g, &[e, f]).unwrap();
                let partners = (0..g.edges().len())
                    .flat_map(|a| (0..g.edges().len()).map(move |b| (a, b)))
                    .map(|(a, b)| (kgraph::EdgeId(a as u32), kgraph::EdgeId(b as u32)))
                    .filter(|&(a, b)| g.color(a) == cf && g.color(b) == ce && g.edge(a).source == g.edge(b).range)
                    .filter(|&(a, b)| normalize(&g, &[a, b]).unwrap() == target)
                    .count();
                assert_eq!(partners, 1, "{name}");
            }
        }
    }
}

#[test]
fn segments_reassemble() {
    for (_, g) in example_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let z = random_path(&mut rng, &g, &Degree::splat(g.rank(), 3));
            let a = random_degree(&mut rng, z.degree());
            let b = random_degree(&mut rng, z.degree()).join(&a);
            let parts = [
                segment(&g, &z, &Degree::zero(g.rank()), &a).unwrap(),
                segment(&g, &z, &a, &b).unwrap(),
                segment(&g, &z, &b, z.degree()).unwrap(),
            ];
            let joined = compose(&g, &compose(&g, &parts[0], &parts[1]).unwrap(), &parts[2]).unwrap();
            assert_eq!(joined, z);
            // a segment of a segment is a segment
            let (head, _) = split(&g, &z, &b).unwrap();
            assert_eq!(segment(&g, &head, &a, &b).unwrap(), parts[1]);
        }
    }
}

#[test]
fn normalize_agrees_with_edgewise_composition() {
    for (_, g) in example_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let z = random_path(&mut rng, &g, &Degree::splat(g.rank(), 2));
            if !z.is_identity() {
                assert_eq!(normalize(&g, z.edges()).unwrap(), z);
            }
            // a random walk, edge by edge, in arbitrary colour order
            let mut raw = Vec::new();
            let mut acc = NormalPath::identity(&g, z.range());
            for _ in 0..rng.gen_range(0..6) {
                let color = rng.gen_range(1..=g.rank());
                let choices = g.edges_into(acc.source(), color);
                if choices.is_empty() {
                    continue;
                }
                let e = choices[rng.gen_range(0..choices.len())];
                raw.push(e);
                acc = compose(&g, &acc, &normalize(&g, &[e]).unwrap()).unwrap();
            }
            if !raw.is_empty() {
                assert_eq!(normalize(&g, &raw).unwrap(), acc);
            }
        }
    }
}

#[test]
fn text_form_round_trips() {
    for (_, g) in example_graphs() {
        for p in paths_up_to(&g, &Degree::splat(g.rank(), 1)) {
            assert_eq!(parse_path(&g, &format_path(&g, &p)).unwrap(), p);
        }
    }
}

#[test]
fn prefix_tests_agree_with_search() {
    for (_, g) in example_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let bound = Degree::splat(g.rank(), if g.rank() >= 3 { 1 } else { 2 });
        for _ in 0..200 {
            let z = random_path(&mut rng, &g, &bound);
            let q = random_path(&mut rng, &g, &bound);
            assert_eq!(strip_prefix(&g, &z, &q), factor(&g, &z, &q));
            assert_eq!(has_prefix(&g, &z, &q), factor(&g, &z, &q).is_some());
        }
    }
}

fn graph_strategy() -> impl Strategy<Value = usize> {
    0..example_graphs().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mce_is_symmetric_and_matches_search(index in graph_strategy(), seed in any::<u64>()) {
        let (_, g) = &example_graphs()[index];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bound = Degree::splat(g.rank(), if g.rank() >= 3 { 1 } else { 2 });
        let p = random_path(&mut rng, g, &bound);
        let q = random_path(&mut rng, g, &bound);
        let forward = mce(g, &p, &q);
        let mut backward = mce(g, &q, &p);
        backward.sort();
        let mut sorted = forward.clone();
        sorted.sort();
        prop_assert_eq!(&sorted, &backward);
        prop_assert_eq!(sorted.iter().cloned().collect::<std::collections::BTreeSet<_>>(), mce_oracle(g, &p, &q));
        prop_assert_eq!(dependent(g, &p, &q), !forward.is_empty());
    }

    #[test]
    fn split_then_compose_is_identity(index in graph_strategy(), seed in any::<u64>()) {
        let (_, g) = &example_graphs()[index];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = random_path(&mut rng, g, &Degree::splat(g.rank(), 3));
        let m = random_degree(&mut rng, z.degree());
        let (head, tail) = split(g, &z, &m).unwrap();
        prop_assert_eq!(head.degree(), &m);
        prop_assert_eq!(compose(g, &head, &tail).unwrap(), z);
    }
}
