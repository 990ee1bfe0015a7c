//! Finite joins of basic morphisms `x·y⁻¹` and the inverse-semigroup
//! operations on them.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::degree::Degree;
use crate::model::KGraph;
use crate::path::{
    all_of_degree, compose, enumerate_extensions, has_prefix, mce, strip_prefix, NormalPath,
};
use crate::structure::first_source;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("target and source of a basic morphism must end at the same vertex")]
    SourceMismatch,
    #[error("pairs {0} and {1} disagree on a common extension")]
    Incompatible(usize, usize),
    #[error("the set is not a code")]
    NotACode,
    #[error("`{0}` does not extend the covered path")]
    NotExtension(String),
    #[error("the graph has a source at vertex `{vertex}` in colour {color}")]
    HasSources { vertex: String, color: usize },
}

impl SemigroupError {
    pub fn code(&self) -> &'static str {
        match self {
            SemigroupError::SourceMismatch => "SOURCE_MISMATCH",
            SemigroupError::Incompatible(..) => "INCOMPATIBLE",
            SemigroupError::NotACode => "NOT_A_CODE",
            SemigroupError::NotExtension(_) => "NOT_EXTENSION",
            SemigroupError::HasSources { .. } => "HAS_SOURCES",
        }
    }
}

/// The partial bijection `y·c ↦ x·c` from `yC` onto `xC`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasicMorphism {
    // source first so that sorted tables are ordered by domain
    source: NormalPath,
    target: NormalPath,
}

impl BasicMorphism {
    pub fn new(target: NormalPath, source: NormalPath) -> Result<Self, SemigroupError> {
        if target.source() != source.source() {
            return Err(SemigroupError::SourceMismatch);
        }
        Ok(BasicMorphism { source, target })
    }

    pub fn target(&self) -> &NormalPath {
        &self.target
    }

    pub fn source(&self) -> &NormalPath {
        &self.source
    }

    pub fn is_idempotent(&self) -> bool {
        self.source == self.target
    }

    pub fn inverse(&self) -> Self {
        BasicMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }

    /// Image of `p` if `p` lies in the domain `yC`.
    pub fn apply(&self, g: &KGraph, p: &NormalPath) -> Option<NormalPath> {
        let rest = strip_prefix(g, p, &self.source)?;
        Some(compose(g, &self.target, &rest).expect("suffix starts at the shared source"))
    }
}

/// `(us, vs) ≤ (u, v)`: `a` is a restriction of `b`.
pub fn leq_basic(g: &KGraph, a: &BasicMorphism, b: &BasicMorphism) -> bool {
    match strip_prefix(g, &a.source, &b.source) {
        Some(s) => strip_prefix(g, &a.target, &b.target).as_ref() == Some(&s),
        None => false,
    }
}

/// `(a·b⁻¹)(c·d⁻¹) = ⋁ (a·p)(d·q)⁻¹` over `b·p = c·q` in the minimal
/// common extensions of `b` and `c`.
pub fn basic_product(g: &KGraph, left: &BasicMorphism, right: &BasicMorphism) -> MorphismTable {
    let mut pairs = Vec::new();
    for z in mce(g, &left.source, &right.target) {
        let p = strip_prefix(g, &z, &left.source).expect("common extension");
        let q = strip_prefix(g, &z, &right.target).expect("common extension");
        pairs.push(BasicMorphism {
            target: compose(g, &left.target, &p).expect("composable"),
            source: compose(g, &right.source, &q).expect("composable"),
        });
    }
    MorphismTable::pruned(g, pairs)
}

/// Whether two basic morphisms agree, in both directions, wherever both are
/// defined.
pub fn compatible(g: &KGraph, a: &BasicMorphism, b: &BasicMorphism) -> bool {
    let agree = |a_src: &NormalPath, a_tgt: &NormalPath, b_src: &NormalPath, b_tgt: &NormalPath| {
        mce(g, a_src, b_src).iter().all(|z| {
            let p = strip_prefix(g, z, a_src).expect("common extension");
            let q = strip_prefix(g, z, b_src).expect("common extension");
            compose(g, a_tgt, &p).ok() == compose(g, b_tgt, &q).ok()
        })
    };
    agree(&a.source, &a.target, &b.source, &b.target) && agree(&a.target, &a.source, &b.target, &b.source)
}

/// An element of the inverse monoid of bijections between finitely generated
/// right ideals, stored as its maximal basic morphisms.
///
/// The stored pairs are an antichain under [`leq_basic`] whose sources are
/// the minimal generators of the domain ideal; this representative is unique,
/// so equality of tables is equality of elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MorphismTable {
    pairs: Vec<BasicMorphism>,
}

impl MorphismTable {
    /// Build a table, checking that the pairs are pairwise compatible.
    pub fn new(g: &KGraph, pairs: Vec<BasicMorphism>) -> Result<Self, SemigroupError> {
        for i in 0..pairs.len() {
            for j in (i + 1)..pairs.len() {
                if !compatible(g, &pairs[i], &pairs[j]) {
                    return Err(SemigroupError::Incompatible(i, j));
                }
            }
        }
        Ok(Self::pruned(g, pairs))
    }

    /// Build from pairs known to be compatible.
    pub(crate) fn pruned(g: &KGraph, pairs: Vec<BasicMorphism>) -> Self {
        let mut pairs = pairs;
        pairs.sort();
        pairs.dedup();
        let keep: Vec<bool> = (0..pairs.len())
            .map(|i| {
                !(0..pairs.len())
                    .any(|j| j != i && pairs[j] != pairs[i] && leq_basic(g, &pairs[i], &pairs[j]))
            })
            .collect();
        let pairs = pairs
            .into_iter()
            .zip(keep)
            .filter_map(|(p, k)| k.then_some(p))
            .collect();
        MorphismTable { pairs }
    }

    pub fn empty() -> Self {
        MorphismTable::default()
    }

    /// `{(v, v)}` over all vertices.
    pub fn identity(g: &KGraph) -> Self {
        let pairs = g
            .vertex_ids()
            .map(|v| {
                let id = NormalPath::identity(g, v);
                BasicMorphism {
                    source: id.clone(),
                    target: id,
                }
            })
            .collect();
        MorphismTable { pairs }
    }

    pub fn pairs(&self) -> &[BasicMorphism] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_idempotent(&self) -> bool {
        self.pairs.iter().all(BasicMorphism::is_idempotent)
    }

    /// Image of `p` under the partial bijection, if `p` is in the domain.
    pub fn apply(&self, g: &KGraph, p: &NormalPath) -> Option<NormalPath> {
        self.pairs.iter().find_map(|b| b.apply(g, p))
    }
}

/// `s·t`: apply `t`, then `s`.
pub fn table_product(g: &KGraph, s: &MorphismTable, t: &MorphismTable) -> MorphismTable {
    let mut pairs = Vec::new();
    for a in &s.pairs {
        for b in &t.pairs {
            pairs.extend(basic_product(g, a, b).pairs);
        }
    }
    MorphismTable::pruned(g, pairs)
}

pub fn invert_table(g: &KGraph, s: &MorphismTable) -> MorphismTable {
    MorphismTable::pruned(g, s.pairs.iter().map(BasicMorphism::inverse).collect())
}

/// The largest table below both `s` and `t`: the restriction to the paths on
/// which they agree.
pub fn meet(g: &KGraph, s: &MorphismTable, t: &MorphismTable) -> MorphismTable {
    let mut pairs = Vec::new();
    for a in &s.pairs {
        for b in &t.pairs {
            for z in mce(g, &a.source, &b.source) {
                let p = strip_prefix(g, &z, &a.source).expect("common extension");
                let q = strip_prefix(g, &z, &b.source).expect("common extension");
                let x = compose(g, &a.target, &p).expect("composable");
                if compose(g, &b.target, &q).ok().as_ref() == Some(&x) {
                    pairs.push(BasicMorphism { source: z, target: x });
                }
            }
        }
    }
    MorphismTable::pruned(g, pairs)
}

/// Pairwise independence.
pub fn is_code(g: &KGraph, xs: &[NormalPath]) -> bool {
    for i in 0..xs.len() {
        for j in (i + 1)..xs.len() {
            if xs[i] == xs[j] || !mce(g, &xs[i], &xs[j]).is_empty() {
                return false;
            }
        }
    }
    true
}

fn join_degrees<'a>(k: usize, paths: impl IntoIterator<Item = &'a NormalPath>) -> Degree {
    paths
        .into_iter()
        .fold(Degree::zero(k), |acc, p| acc.join(p.degree()))
}

/// Whether `xs` is a code whose right ideal is essential: with `m` the join
/// of the degrees, every path of degree `m` has a prefix in `xs`.
pub fn is_maximal_code(g: &KGraph, xs: &[NormalPath]) -> Result<bool, SemigroupError> {
    if !is_code(g, xs) {
        return Err(SemigroupError::NotACode);
    }
    if xs.is_empty() {
        return Ok(g.vertex_count() == 0);
    }
    let m = join_degrees(g.rank(), xs);
    Ok(all_of_degree(g, &m)
        .iter()
        .all(|z| xs.iter().any(|x| has_prefix(g, z, x))))
}

fn require_no_sources(g: &KGraph) -> Result<(), SemigroupError> {
    match first_source(g) {
        Some((v, color)) => Err(SemigroupError::HasSources {
            vertex: g.vertex_name(v).to_string(),
            color,
        }),
        None => Ok(()),
    }
}

/// Whether every path below `a` meets some member of `cover`. Each member
/// must extend `a`.
pub fn is_tight_cover(g: &KGraph, a: &NormalPath, cover: &[NormalPath]) -> Result<bool, SemigroupError> {
    require_no_sources(g)?;
    for c in cover {
        if !has_prefix(g, c, a) {
            return Err(SemigroupError::NotExtension(c.display(g).to_string()));
        }
    }
    if cover.is_empty() {
        return Ok(false);
    }
    let m = join_degrees(g.rank(), cover);
    let step = m.checked_sub(a.degree()).expect("members extend a");
    Ok(enumerate_extensions(g, a, &step)
        .iter()
        .all(|z| cover.iter().any(|c| has_prefix(g, z, c))))
}

/// The degree-`m` paths of the right ideal generated by `xs`.
pub fn ideal_at_degree(g: &KGraph, xs: &[NormalPath], m: &Degree) -> BTreeSet<NormalPath> {
    let mut out = BTreeSet::new();
    for x in xs {
        if let Some(step) = m.checked_sub(x.degree()) {
            out.extend(enumerate_extensions(g, x, &step));
        }
    }
    out
}

/// Whether the identities on `XC` and `YC` are identified in the Boolean
/// quotient: both ideals contain the same paths of the joined degree.
pub fn idempotent_equiv(g: &KGraph, xs: &[NormalPath], ys: &[NormalPath]) -> Result<bool, SemigroupError> {
    if !is_code(g, xs) || !is_code(g, ys) {
        return Err(SemigroupError::NotACode);
    }
    let m = join_degrees(g.rank(), xs.iter().chain(ys));
    Ok(ideal_at_degree(g, xs, &m) == ideal_at_degree(g, ys, &m))
}

/// Nonzero with zero square.
pub fn is_infinitesimal(g: &KGraph, s: &MorphismTable) -> bool {
    !s.is_empty() && table_product(g, s, s).is_empty()
}
