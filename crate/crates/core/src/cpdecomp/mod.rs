//! CP-decompositions: C4/P4 block covers of a line-graph subgraph with
//! respect to a matching, alternating reach sets and C4-switches.

mod characterize;
pub mod lemmas;
mod reach;
mod search;
mod verify;

pub use characterize::{check_characterization, CharacterizationReport, CharacterizationStatus};
pub use reach::{alternating_c4s, c4_switch, reach, switch_family, AlternatingReach};
pub use search::find_cp;
pub use verify::{at_home, verify_cp, CpVerdict, Violation};

use alloc::vec::Vec;
use thiserror::Error;

use crate::graphs::EdgeId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    C4,
    P4,
}

/// A C4 or P4 of `G` containing two matching edges.
///
/// `vertices` lists the unified vertex indices in cycle/path order and
/// `edges[i]` joins `vertices[i]` and `vertices[i + 1]` (cyclically for C4).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub kind: BlockKind,
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeId>,
    pub m_edges: Vec<EdgeId>,
}

impl Block {
    /// Interior vertices of a P4 (none for C4).
    pub fn interior(&self) -> &[usize] {
        match self.kind {
            BlockKind::P4 if self.vertices.len() == 4 => &self.vertices[1..3],
            _ => &[],
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CpDecomposition {
    pub blocks: Vec<Block>,
}

impl CpDecomposition {
    pub fn order(&self) -> usize {
        self.blocks.len()
    }

    pub fn count(&self, kind: BlockKind) -> usize {
        self.blocks.iter().filter(|b| b.kind == kind).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CpError {
    #[error("matching has odd size {0}")]
    OddMatching(usize),
    #[error("matching edge {0} is not a vertex of J")]
    MatchingOutsideJ(EdgeId),
    #[error("edge {0} is not a matching edge")]
    NotInMatching(EdgeId),
    #[error("edge {0} must not be a matching edge")]
    InMatching(EdgeId),
    #[error("edges {0} and {1} are not incident or are parallel")]
    NotIncident(EdgeId, EdgeId),
    #[error("edge {0} is not a vertex of J")]
    OutsideJ(EdgeId),
    #[error("not an alternating 4-cycle: {0}")]
    BadCycle(&'static str),
    #[error("enumeration limit of {0} steps exceeded")]
    Budget(usize),
    #[error(transparent)]
    Graph(#[from] crate::graphs::GraphError),
    #[error(transparent)]
    Topology(#[from] crate::topology::TopologyError),
}
