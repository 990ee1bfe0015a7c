//! Generators for the example families: products of bouquets (the graphs
//! behind `nV`), two-vertex double covers of a product of bouquets under a
//! `Z/2` labelling, and the graphs `C_{k,R}` with free top homology of rank `R`.

use std::collections::BTreeMap;

use crate::model::{EdgeRecord, KGraph, SquareRecord};

/// Name of the `s`-th symbol (1-based) of colour `color`: `a1, a2, …` for
/// colour 1, `b1, …` for colour 2, and so on; `c27_1` style past 26 colours.
pub fn symbol_name(color: usize, s: usize) -> String {
    if color <= 26 {
        let letter = (b'a' + (color - 1) as u8) as char;
        format!("{letter}{s}")
    } else {
        format!("c{color}_{s}")
    }
}

fn edge(name: String, color: usize, range: &str, source: &str) -> EdgeRecord {
    EdgeRecord {
        name,
        color,
        range: range.to_string(),
        source: source.to_string(),
    }
}

fn square(first: [&str; 2], second: [&str; 2]) -> SquareRecord {
    SquareRecord {
        first: [first[0].to_string(), first[1].to_string()],
        second: [second[0].to_string(), second[1].to_string()],
    }
}

/// One vertex `v`, `sizes[i-1]` loops of colour `i`, and the commuting squares
/// `e·f = f·e`.
///
/// # Panics
/// If `k == 0` or `sizes.len() != k`.
pub fn bouquet_product(k: usize, sizes: &[usize]) -> KGraph {
    assert!(k >= 1 && sizes.len() == k, "need one size per colour");
    let mut edges = Vec::new();
    for (i, &m) in sizes.iter().enumerate() {
        for s in 1..=m {
            edges.push(edge(symbol_name(i + 1, s), i + 1, "v", "v"));
        }
    }
    let mut squares = Vec::new();
    for i in 1..=k {
        for j in (i + 1)..=k {
            for s in 1..=sizes[i - 1] {
                for t in 1..=sizes[j - 1] {
                    let e = symbol_name(i, s);
                    let f = symbol_name(j, t);
                    squares.push(square([&e, &f], [&f, &e]));
                }
            }
        }
    }
    KGraph::new(k, vec!["v".to_string()], edges, squares).expect("bouquet product is well formed")
}

/// A `Z/2`-valued labelling of the symbols `X_1 ⊔ … ⊔ X_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labelling {
    // labels[i][s] for colour i+1, symbol s+1
    labels: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LabellingError {
    #[error("label for `{0}` must be 0 or 1")]
    NotBinary(String),
    #[error("no label for symbol `{0}`")]
    Missing(String),
    #[error("unknown symbol `{0}`")]
    Unknown(String),
}

impl Labelling {
    /// `ℓ ≡ 1`.
    pub fn uniform(sizes: &[usize]) -> Self {
        Labelling {
            labels: sizes.iter().map(|&m| vec![1; m]).collect(),
        }
    }

    /// `ℓ ≡ 0` on colour 1 and `ℓ ≡ 1` elsewhere.
    pub fn mixed(sizes: &[usize]) -> Self {
        Labelling {
            labels: sizes
                .iter()
                .enumerate()
                .map(|(i, &m)| vec![u8::from(i > 0); m])
                .collect(),
        }
    }

    pub fn constant(sizes: &[usize], value: u8) -> Self {
        Labelling {
            labels: sizes.iter().map(|&m| vec![value & 1; m]).collect(),
        }
    }

    /// From a map `symbol name -> 0|1` that must cover every symbol exactly.
    pub fn explicit(sizes: &[usize], map: &BTreeMap<String, u8>) -> Result<Self, LabellingError> {
        let mut labels = Vec::with_capacity(sizes.len());
        let mut seen = 0;
        for (i, &m) in sizes.iter().enumerate() {
            let mut row = Vec::with_capacity(m);
            for s in 1..=m {
                let name = symbol_name(i + 1, s);
                let value = *map.get(&name).ok_or_else(|| LabellingError::Missing(name.clone()))?;
                if value > 1 {
                    return Err(LabellingError::NotBinary(name));
                }
                row.push(value);
                seen += 1;
            }
            labels.push(row);
        }
        if seen != map.len() {
            let known: Vec<String> = sizes
                .iter()
                .enumerate()
                .flat_map(|(i, &m)| (1..=m).map(move |s| symbol_name(i + 1, s)))
                .collect();
            let extra = map.keys().find(|k| !known.contains(k)).cloned().unwrap_or_default();
            return Err(LabellingError::Unknown(extra));
        }
        Ok(Labelling { labels })
    }

    /// Label of symbol `s` (1-based) of colour `color` (1-based).
    pub fn get(&self, color: usize, s: usize) -> u8 {
        self.labels[color - 1][s - 1]
    }
}

fn cover_vertex(t: u8) -> String {
    format!("v@{t}")
}

fn cover_edge(color: usize, s: usize, bar: bool, t: u8) -> String {
    let base = symbol_name(color, s);
    if bar {
        format!("{base}bar@{t}")
    } else {
        format!("{base}@{t}")
    }
}

/// The two-vertex k-graph obtained from the double cover of the product of
/// bouquets determined by `labelling`.
///
/// Vertices `v@0, v@1`; for each symbol `x` and `t ∈ Z/2` an edge `x@t` from
/// `v@(t+ℓ(x))` to `v@t` and a reversed edge `xbar@t` from `v@t` to
/// `v@(t+ℓ(x))`. For symbols `a` of colour `i` and `b` of colour `j > i` each
/// commuting square `(b,t)(a,t+ℓ(b)) = (a,t)(b,t+ℓ(a))` of the cover yields
/// four factorization rules, one for each choice of barred edges.
///
/// # Panics
/// If `k < 2` or `sizes.len() != k`.
pub fn double_cover(k: usize, sizes: &[usize], labelling: &Labelling) -> KGraph {
    assert!(k >= 2 && sizes.len() == k, "need k >= 2 and one size per colour");
    let mut edges = Vec::new();
    for (i, &m) in sizes.iter().enumerate() {
        let color = i + 1;
        for s in 1..=m {
            let l = labelling.get(color, s);
            for t in 0..2u8 {
                let shifted = cover_vertex((t + l) % 2);
                let here = cover_vertex(t);
                edges.push(edge(cover_edge(color, s, false, t), color, &here, &shifted));
                edges.push(edge(cover_edge(color, s, true, t), color, &shifted, &here));
            }
        }
    }

    let mut squares = Vec::new();
    for ci in 1..=k {
        for cj in (ci + 1)..=k {
            for sa in 1..=sizes[ci - 1] {
                for sb in 1..=sizes[cj - 1] {
                    let la = labelling.get(ci, sa);
                    let lb = labelling.get(cj, sb);
                    for t in 0..2u8 {
                        let i_b = t;
                        let i_a = (t + lb) % 2;
                        let j_a = t;
                        let j_b = (t + la) % 2;
                        let a = |bar, x| cover_edge(ci, sa, bar, x);
                        let b = |bar, x| cover_edge(cj, sb, bar, x);
                        // (b,i_b)(a,i_a) = (a,j_a)(b,j_b)
                        squares.push(square(
                            [&a(false, j_a), &b(false, j_b)],
                            [&b(false, i_b), &a(false, i_a)],
                        ));
                        // (a,i_a)(b̄,j_b) = (b̄,i_b)(a,j_a)
                        squares.push(square(
                            [&a(false, i_a), &b(true, j_b)],
                            [&b(true, i_b), &a(false, j_a)],
                        ));
                        // (ā,j_a)(b,i_b) = (b,j_b)(ā,i_a)
                        squares.push(square(
                            [&a(true, j_a), &b(false, i_b)],
                            [&b(false, j_b), &a(true, i_a)],
                        ));
                        // (b̄,j_b)(ā,j_a) = (ā,i_a)(b̄,i_b)
                        squares.push(square(
                            [&a(true, i_a), &b(true, i_b)],
                            [&b(true, j_b), &a(true, j_a)],
                        ));
                    }
                }
            }
        }
    }
    KGraph::new(k, vec![cover_vertex(0), cover_vertex(1)], edges, squares)
        .expect("double cover is well formed")
}

fn ckr_vertex(v: usize) -> String {
    format!("v{v}")
}

fn ckr_edge(color: usize, range: usize, m: usize, source: usize) -> String {
    format!("e{color}_v{range}_{m}_v{source}")
}

/// The k-graph `C_{k,R}` on `R+1` vertices: per colour, three loops at every
/// vertex and two edges between every ordered pair of distinct vertices.
///
/// Squares, for colours `i ≠ j`:
/// - a loop followed by an edge `u ← v` becomes the edge followed by the
///   loop with the same index at `v`;
/// - otherwise (all loops, or no loops) the colours and indices are exchanged
///   and the vertex sequence is kept.
///
/// # Panics
/// If `k == 0` or `r == 0`.
pub fn ckr(k: usize, r: usize) -> KGraph {
    assert!(k >= 1 && r >= 1, "need k >= 1 and R >= 1");
    let n = r + 1;
    let mult = |u: usize, v: usize| if u == v { 3 } else { 2 };
    let mut edges = Vec::new();
    for color in 1..=k {
        for u in 1..=n {
            for v in 1..=n {
                for m in 1..=mult(u, v) {
                    edges.push(edge(ckr_edge(color, u, m, v), color, &ckr_vertex(u), &ckr_vertex(v)));
                }
            }
        }
    }

    // For each composable path e^i_{u,m,v} e^j_{v,n,w} with i < j, its partner.
    let mut squares = Vec::new();
    for i in 1..=k {
        for j in (i + 1)..=k {
            for u in 1..=n {
                for v in 1..=n {
                    for w in 1..=n {
                        for m in 1..=mult(u, v) {
                            for nn in 1..=mult(v, w) {
                                let first = [ckr_edge(i, u, m, v), ckr_edge(j, v, nn, w)];
                                let second = if u == v && v != w {
                                    // loop then edge
                                    [ckr_edge(j, u, nn, w), ckr_edge(i, w, m, w)]
                                } else if u != v && v == w {
                                    // edge then loop: the inverse reading
                                    [ckr_edge(j, u, nn, u), ckr_edge(i, u, m, v)]
                                } else {
                                    [ckr_edge(j, u, nn, v), ckr_edge(i, v, m, w)]
                                };
                                squares.push(SquareRecord { first, second });
                            }
                        }
                    }
                }
            }
        }
    }
    KGraph::new(k, (1..=n).map(ckr_vertex).collect(), edges, squares).expect("C_{k,R} is well formed")
}
