mod common;

use common::{example_graphs, random_path};
use kgraph::constructions::{bouquet_product, ckr};
use kgraph::path::{compose, enumerate_from_vertex};
use kgraph::semigroup::is_maximal_code;
use kgraph::{Degree, Group, GroupElement, KGraph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn elements(g: &KGraph, seed: u64, n: usize) -> Vec<GroupElement> {
    let group = Group::new(g).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| group.random_element(&mut rng, 2).unwrap()).collect()
}

fn domain_join(g: &KGraph, e: &GroupElement) -> Degree {
    e.domain().iter().fold(Degree::zero(g.rank()), |acc, p| acc.join(p.degree()))
}

#[test]
fn graphs_with_sources_have_no_group() {
    let text = r#"{"rank": 1, "vertices": ["u", "v"], "edges": [{"name": "e", "color": 1, "range": "u", "source": "v"}], "squares": []}"#;
    let g = kgraph::parse_kgraph(text).unwrap();
    assert_eq!(Group::new(&g).unwrap_err().code(), "HAS_SOURCES");
}

#[test]
fn action_is_functorial() {
    for g in [bouquet_product(2, &[2, 2]), ckr(2, 1)] {
        let group = Group::new(&g).unwrap();
        let es = elements(&g, 21, 40);
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let mut applied = 0;
        for w in es.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let ab = group.multiply(a, b).unwrap();
            let depth = domain_join(&g, b)
                .join(&domain_join(&g, &ab))
                .checked_add(&domain_join(&g, a))
                .unwrap();
            for _ in 0..10 {
                let p = random_path(&mut rng, &g, &depth);
                if !p.degree().le(&depth) || p.degree() != &depth {
                    continue;
                }
                let direct = group.apply_to_path(&ab, &p).unwrap();
                let stepwise = group.apply_to_path(a, &group.apply_to_path(b, &p).unwrap()).unwrap();
                assert_eq!(direct, stepwise);
                applied += 1;
            }
        }
        assert!(applied > 0);
    }
}

#[test]
fn refinement_preserves_the_action_and_the_class() {
    let g = ckr(2, 1);
    let group = Group::new(&g).unwrap();
    for e in elements(&g, 23, 60) {
        let m = domain_join(&g, &e).checked_add(&Degree::unit(2, 2)).unwrap();
        let fine = group.refine_to_degree(&e, &m).unwrap();
        assert!(fine.domain().iter().all(|p| p.degree() == &m));
        assert!(group.equals(&e, &fine).unwrap());
        for p in fine.domain() {
            assert_eq!(group.apply_to_path(&e, &p).unwrap(), group.apply_to_path(&fine, &p).unwrap());
        }
        let reduced = group.reduce(&fine);
        assert!(reduced.len() <= fine.len());
        assert!(group.equals(&reduced, &e).unwrap());
    }
}

#[test]
fn construction_check_matches_the_literal_maximal_code_test() {
    let mut accepted = 0;
    for (name, g) in example_graphs() {
        if g.rank() > 2 {
            continue;
        }
        let Ok(group) = Group::new(&g) else { continue };
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..200 {
            let xs: Vec<_> = (0..rng.gen_range(1..=6))
                .map(|_| random_path(&mut rng, &g, &Degree::splat(g.rank(), 1)))
                .collect();
            let literal = matches!(is_maximal_code(&g, &xs), Ok(true));
            let built = group.element(xs.iter().map(|x| (x.clone(), x.clone())).collect());
            assert_eq!(built.is_ok(), literal, "{name}: {xs:?}");
            accepted += built.is_ok() as usize;
        }
        // the full degree-ε_1 layer is always a maximal code
        let layer: Vec<_> = g
            .vertex_ids()
            .flat_map(|v| enumerate_from_vertex(&g, v, &Degree::unit(g.rank(), 1)))
            .collect();
        assert!(group.element(layer.iter().map(|x| (x.clone(), x.clone())).collect()).is_ok());
    }
    assert!(accepted > 20);
}

#[test]
fn unbalanced_and_foreign_pairs_are_rejected() {
    let g = bouquet_product(2, &[2, 2]);
    let group = Group::new(&g).unwrap();
    let a1 = kgraph::path::parse_path(&g, "a1").unwrap();
    let a2 = kgraph::path::parse_path(&g, "a2").unwrap();
    let b1 = kgraph::path::parse_path(&g, "b1").unwrap();
    // domain {a1, a2} is maximal but range {a1, a1} is not a code
    assert!(group.element(vec![(a1.clone(), a1.clone()), (a1.clone(), a2.clone())]).is_err());
    // range {a1, b1} is not a code
    assert!(group.element(vec![(a1.clone(), a1.clone()), (b1.clone(), a2.clone())]).is_err());
    let swap = group.element(vec![(a2.clone(), a1.clone()), (a1.clone(), a2.clone())]).unwrap();
    let square = group.multiply(&swap, &swap).unwrap();
    assert!(group.equals(&square, &group.identity()).unwrap());
    let v = kgraph::NormalPath::identity(&g, a1.range());
    assert_eq!(group.apply_to_path(&swap, &v).unwrap_err().code(), "OUTSIDE_DOMAIN");
    let a1a1 = compose(&g, &a1, &a1).unwrap();
    assert_eq!(group.apply_to_path(&swap, &a1a1).unwrap(), compose(&g, &a2, &a1).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn inverse_undoes_the_action(seed in any::<u64>()) {
        let g = bouquet_product(2, &[2, 2]);
        let group = Group::new(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = group.random_element(&mut rng, 3).unwrap();
        let inv = group.invert(&e);
        for p in e.domain() {
            let image = group.apply_to_path(&e, &p).unwrap();
            prop_assert_eq!(group.apply_to_path(&inv, &image).unwrap(), p);
        }
        prop_assert!(group.equals(&group.invert(&inv), &e).unwrap());
    }

    #[test]
    fn equality_is_symmetric(seed in any::<u64>()) {
        let g = ckr(2, 1);
        let group = Group::new(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = group.random_element(&mut rng, 2).unwrap();
        let b = if rng.gen_bool(0.5) { group.reduce(&a) } else { group.random_element(&mut rng, 2).unwrap() };
        prop_assert_eq!(group.equals(&a, &b).unwrap(), group.equals(&b, &a).unwrap());
    }
}
