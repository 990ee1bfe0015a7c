//! Exact computation with higher-rank graphs.
//!
//! A k-graph is given by a coloured skeleton and factorization squares
//! ([`model`]); [`validate`] decides whether those squares really define one.
//! On top of the path category ([`path`]) the crate implements the inverse
//! monoid of bijections between finitely generated right ideals
//! ([`semigroup`]), its group of units ([`group`]), bounded checks for the
//! simplicity hypotheses ([`structure`]), and the homology of the Evans
//! complex ([`homology`]). [`constructions`] generates the standard example
//! families.

pub mod constructions;
pub mod degree;
pub mod group;
pub mod homology;
pub mod model;
pub mod path;
pub mod semigroup;
pub mod structure;
pub mod table_file;
pub mod validate;

pub use degree::Degree;
pub use group::{Group, GroupElement, GroupError};
pub use homology::{HomologyGroup, IntMatrix};
pub use model::{parse_kgraph, serialize_kgraph, EdgeId, KGraph, ModelError, VertexId};
pub use path::{NormalPath, PathError};
pub use semigroup::{BasicMorphism, MorphismTable};
pub use validate::{validate, ValidationReport, ViolationCode};
