//! Isomorphism-class enumeration of small bipartite multigraphs, simple
//! graphs and 3-partite 3-graphs.

mod bipartite;
mod hyper;
mod simple;

pub use bipartite::{bipartite_canonical_rows, enumerate_bipartite, BIPARTITE_GUARD};
pub use hyper::{enumerate_three_graphs, three_graph_canonical_mask, SupportGroup, SUPPORT_GUARD};
pub use simple::{canonical_code, enumerate_graphs, graph_from_code, GRAPH_GUARD};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("enumeration too large: {what} is {size}, limit {limit}")]
    Guard { what: &'static str, size: usize, limit: usize },
    #[error("class sizes {got:?} do not match {expected:?}")]
    SizeMismatch { expected: [usize; 3], got: [usize; 3] },
}
