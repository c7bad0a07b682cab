//! Algorithmic core: bipartite multigraphs and 3-partite 3-graphs, their line
//! and link graphs, independence complexes with integral homology, the ψ
//! recursion, CP-decompositions, good sets and Ryser-extremality checks.
//!
//! Everything here is `no_std` (with `alloc`); file formats and the CLI live in
//! the harness crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bits;
pub mod cpdecomp;
pub mod enumerate;
pub mod goodsets;
pub mod graphs;
pub mod meshulam;
pub mod ryser;
pub mod topology;

pub use graphs::{BipartiteMultigraph, EdgeId, GraphError, Matching, Side, SimpleGraph, ThreePartiteHypergraph};
pub use topology::{ConnValue, ConnWindow, SimplicialComplex};
