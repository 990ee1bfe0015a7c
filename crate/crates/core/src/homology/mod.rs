//! Integer homology of the Evans complex, via Smith normal form.

mod complex;
mod matrix;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

pub use complex::{boundary_blocks, colex_subsets, coordinate_matrices, evans_complex, ChainComplex};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};

use crate::model::KGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("boundary maps do not compose to zero at degree {degree}")]
    ComplexInconsistent { degree: usize },
}

impl HomologyError {
    pub fn code(&self) -> &'static str {
        match self {
            HomologyError::ComplexInconsistent { .. } => "COMPLEX_INCONSISTENT",
        }
    }
}

/// `Z^free_rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_m` with `t_1 | t_2 | …` and every `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    #[serde(serialize_with = "as_strings")]
    pub torsion: Vec<BigInt>,
}

fn as_strings<S: serde::Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(ToString::to_string))
}

impl HomologyGroup {
    pub fn trivial() -> Self {
        HomologyGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, if finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().fold(BigInt::one(), |acc, t| acc * t))
    }

    /// The cokernel of a matrix with `rows` rows whose Smith form has the
    /// given diagonal.
    fn cokernel(rows: usize, diagonal: &[BigInt]) -> Self {
        let nonzero: Vec<&BigInt> = diagonal.iter().filter(|d| !d.is_zero()).collect();
        HomologyGroup {
            free_rank: rows - nonzero.len(),
            torsion: nonzero.into_iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" (+) "))
    }
}

/// `ker ∂_p / im ∂_{p+1}` for `p = 0..=k`.
///
/// The kernel basis comes from the Smith form of `∂_p`; the image of
/// `∂_{p+1}` is rewritten in that basis and its own Smith form gives the
/// quotient.
pub fn homology(cx: &ChainComplex) -> Vec<HomologyGroup> {
    (0..=cx.rank())
        .map(|p| {
            let outgoing = smith_normal_form(&cx.boundary(p));
            let r = outgoing.rank();
            let incoming = cx.boundary(p + 1);
            let coords = outgoing.v_inv.mul(&incoming);
            debug_assert!((0..r).all(|i| (0..coords.cols()).all(|j| coords[(i, j)].is_zero())));
            let image = coords.rows_from(r);
            let snf = smith_normal_form(&image);
            HomologyGroup::cokernel(image.rows(), &snf.s.diagonal())
        })
        .collect()
}

/// `(H_0, H_k)` directly: `H_k` is the common kernel of the blocks
/// `I - M_i^t`, `H_0` the cokernel of `[I - M_1^t | … | I - M_k^t]`.
pub fn h0_hk_shortcut(g: &KGraph) -> (HomologyGroup, HomologyGroup) {
    let n = g.vertex_count();
    let blocks = boundary_blocks(g);
    let mut wide = IntMatrix::zeros(n, 0);
    let mut tall = IntMatrix::zeros(0, n);
    for b in &blocks {
        wide = wide.hstack(b);
        tall = tall.vstack(b);
    }
    let h0 = HomologyGroup::cokernel(n, &smith_normal_form(&wide).s.diagonal());
    let hk = HomologyGroup {
        free_rank: n - smith_normal_form(&tall).rank(),
        torsion: Vec::new(),
    };
    (h0, hk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{bouquet_product, ckr, double_cover, Labelling};

    #[test]
    fn display() {
        assert_eq!(HomologyGroup::trivial().to_string(), "0");
        let h = HomologyGroup {
            free_rank: 2,
            torsion: vec![BigInt::from(3)],
        };
        assert_eq!(h.to_string(), "Z^2 (+) Z/3");
        assert_eq!(h.order(), None);
    }

    #[test]
    fn two_v_is_acyclic() {
        let cx = evans_complex(&bouquet_product(2, &[2, 2])).unwrap();
        assert!(homology(&cx).iter().all(HomologyGroup::is_trivial));
    }

    #[test]
    fn ckr_top_homology() {
        let g = ckr(2, 2);
        let h = homology(&evans_complex(&g).unwrap());
        assert_eq!(h[2].free_rank, 2);
        let (h0, hk) = h0_hk_shortcut(&g);
        assert_eq!(h0, h[0]);
        assert_eq!(hk, h[2]);
    }

    #[test]
    fn uniform_cover_of_single_loops() {
        let sizes = [1, 1];
        let g = double_cover(2, &sizes, &Labelling::uniform(&sizes));
        let h = homology(&evans_complex(&g).unwrap());
        assert_eq!(h[0].order(), Some(BigInt::from(3)));
    }
}
