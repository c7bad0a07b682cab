//! Graph objects and the matching/cover primitives everything else builds on.

mod bipartite;
mod hypergraph;
mod line;
mod matching;
mod packing;
mod simple;

pub use bipartite::{BipartiteMultigraph, EdgeId, Side};
pub use hypergraph::{ThreePartiteHypergraph, DEFAULT_CLASS_GUARD};
pub use line::{line_graph, line_graph_3, link_graph, link_graph_by_labels, LinkGraph};
pub use matching::{
    has_augmenting_path, max_matching_bipartite, max_matching_on, vertex_cover_bipartite, Matching,
};
pub use packing::{max_packing, min_transversal};
pub use simple::SimpleGraph;

use alloc::string::String;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge endpoint `{0}` is not in the expected class")]
    WrongClass(String),
    #[error("vertex index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("class index must be 1, 2 or 3, got {0}")]
    BadClass(usize),
    #[error("instance exceeds the size guard: {what} is {size}, limit {limit}")]
    SizeGuard { what: &'static str, size: usize, limit: usize },
    #[error("not a matching: edges {0} and {1} share a vertex")]
    NotMatching(EdgeId, EdgeId),
    #[error("edge id {0} does not exist")]
    UnknownEdge(EdgeId),
}
