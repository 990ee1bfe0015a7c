//! Benchmark fixtures shared by the criterion targets.

use kgraph::constructions::{bouquet_product, ckr};
use kgraph::KGraph;

pub fn two_v() -> KGraph {
    bouquet_product(2, &[2, 2])
}

pub fn ckr_graph(k: usize, r: usize) -> KGraph {
    ckr(k, r)
}
