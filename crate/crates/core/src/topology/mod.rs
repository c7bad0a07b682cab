//! Simplicial complexes, reduced integral homology and homological
//! connectedness.

mod complex;
mod conn;
mod homology;
pub(crate) mod independence;
pub mod snf;

pub use complex::{SimplicialComplex, FACE_LIMIT};
pub use conn::{ceil_half_minus_two, floor_half_minus_two, ConnValue, ConnWindow};
pub use homology::{boundary_composes_to_zero, boundary_matrix, conn_h, reduced_homology, HomologyGroup};
pub use independence::{fold_reduce, independence_complex, independence_conn_h, IndependenceOptions};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("vertex id {0} occurs in both complexes; use the tagged join")]
    VertexCollision(usize),
    #[error("complex is truncated at {materialized} vertices per face; need {needed}")]
    NotMaterialized { materialized: usize, needed: usize },
    #[error("face count {count} exceeds the guard {limit}")]
    FaceGuard { count: usize, limit: usize },
    #[error("complexes are limited to 128 vertices, got {0}")]
    TooManyVertices(usize),
    #[error("face uses unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("face set is not closed under taking subsets")]
    NotClosed,
    #[error("integer overflow during Smith normal form")]
    Overflow,
    #[error("residual matrix with {entries} entries is too large for dense reduction")]
    MatrixTooLarge { entries: usize },
    #[error("dimension cap must be at least -1, got {0}")]
    BadCap(i32),
}
