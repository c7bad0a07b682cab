//! Edge deletion and explosion, the ψ recursion, decouplable/explodable edges
//! and M-reduction.

mod certify;
mod ops;
mod oracle;
mod psi;
mod reduce;

pub use certify::Certifier;
pub use ops::{delete_edge, explode_edge};
pub use oracle::{is_decouplable, is_explodable, ConnOracle, Decision, HomologyOracle};
pub use psi::{psi, psi_at_least, PsiConfig, PsiStats};
pub use reduce::{m_reduce, MReduced};

use thiserror::Error;

use crate::topology::TopologyError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MeshulamError {
    #[error("({0}, {1}) is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} of the matching is not a vertex of J")]
    MatchingOutsideJ(usize),
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
    #[error("connectedness oracle was inconclusive at edge ({0}, {1})")]
    Inconclusive(usize, usize),
    #[error("psi search exceeded its budget after {nodes} nodes")]
    Budget { nodes: u64 },
    #[error("graph has {0} vertices; the limit is 128")]
    TooLarge(usize),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}
