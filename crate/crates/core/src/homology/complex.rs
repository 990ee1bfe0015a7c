use num_bigint::BigInt;

use super::matrix::IntMatrix;
use super::HomologyError;
use crate::model::KGraph;

/// `M_i(e, f)`: the number of colour-`i` edges with range `e` and source `f`.
pub fn coordinate_matrices(g: &KGraph) -> Vec<IntMatrix> {
    let n = g.vertex_count();
    let mut out = vec![IntMatrix::zeros(n, n); g.rank()];
    for e in g.edges() {
        out[e.color - 1][(e.range.index(), e.source.index())] += 1;
    }
    out
}

/// `I - M^t` for each coordinate matrix.
pub fn boundary_blocks(g: &KGraph) -> Vec<IntMatrix> {
    let n = g.vertex_count();
    coordinate_matrices(g)
        .into_iter()
        .map(|m| {
            let mut a = m.transpose();
            for i in 0..n {
                for j in 0..n {
                    let x = std::mem::take(&mut a[(i, j)]);
                    a[(i, j)] = if i == j { BigInt::from(1) - x } else { -x };
                }
            }
            a
        })
        .collect()
}

/// All `p`-subsets of `1..=k` in colex order.
pub fn colex_subsets(k: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, p: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for c in start..=k {
            cur.push(c);
            go(k, p, c + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, p, 1, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// The complex `D_p = Λ^p Z^k ⊗ Z^{vertices}` with boundaries built from
/// `I - M_i^t`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    rank: usize,
    vertices: usize,
    /// `subsets[p]`: basis subsets of `D_p`; the basis of `D_p` is
    /// `subsets[p] × vertices`, subset-major.
    subsets: Vec<Vec<Vec<usize>>>,
    /// `boundaries[p - 1] = ∂_p : D_p → D_{p-1}` for `p = 1..=k`.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self, p: usize) -> usize {
        self.subsets.get(p).map_or(0, |s| s.len() * self.vertices)
    }

    /// Basis label of `D_p`, index `i`: colour subset and vertex index.
    pub fn basis_label(&self, p: usize, i: usize) -> (&[usize], usize) {
        (&self.subsets[p][i / self.vertices], i % self.vertices)
    }

    /// `∂_p` for `p = 0..=k+1`; the ends are zero maps.
    pub fn boundary(&self, p: usize) -> IntMatrix {
        if p == 0 {
            IntMatrix::zeros(0, self.dim(0))
        } else if p > self.rank {
            IntMatrix::zeros(self.dim(self.rank), 0)
        } else {
            self.boundaries[p - 1].clone()
        }
    }
}

/// `∂_p(ε_S ⊗ e) = Σ_j (-1)^{j+1} ε_{S∖i_j} ⊗ (I - M_{i_j}^t) ε_e`, with
/// `S = {i_1 < … < i_p}`. Fails if some `∂_p ∂_{p+1}` is non-zero.
pub fn evans_complex(g: &KGraph) -> Result<ChainComplex, HomologyError> {
    let k = g.rank();
    let n = g.vertex_count();
    let blocks = boundary_blocks(g);
    let subsets: Vec<Vec<Vec<usize>>> = (0..=k).map(|p| colex_subsets(k, p)).collect();

    let mut boundaries = Vec::with_capacity(k);
    for p in 1..=k {
        let lower = &subsets[p - 1];
        let position = |s: &[usize]| lower.iter().position(|t| t == s).expect("subset of size p-1");
        let mut d = IntMatrix::zeros(lower.len() * n, subsets[p].len() * n);
        for (si, s) in subsets[p].iter().enumerate() {
            for (j, &color) in s.iter().enumerate() {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let rest: Vec<usize> = s.iter().copied().filter(|&c| c != color).collect();
                let ri = position(&rest);
                let a = &blocks[color - 1];
                for e in 0..n {
                    for f in 0..n {
                        let x = &a[(f, e)];
                        if sign > 0 {
                            d[(ri * n + f, si * n + e)] += x;
                        } else {
                            d[(ri * n + f, si * n + e)] -= x;
                        }
                    }
                }
            }
        }
        boundaries.push(d);
    }
    for p in 1..k {
        if !boundaries[p - 1].mul(&boundaries[p]).is_zero() {
            return Err(HomologyError::ComplexInconsistent { degree: p });
        }
    }
    Ok(ChainComplex {
        rank: k,
        vertices: n,
        subsets,
        boundaries,
    })
}
