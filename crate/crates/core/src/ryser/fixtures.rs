use alloc::vec::Vec;

use crate::graphs::{BipartiteMultigraph, ThreePartiteHypergraph};

/// Three-class version of the Fano plane with one point removed: the six
/// remaining points split into classes `{x0, x1}`, `{y0, y1}`, `{z0, z1}`.
pub fn truncated_fano() -> ThreePartiteHypergraph {
    ThreePartiteHypergraph::from_indices([2, 2, 2], &[[0, 0, 0], [1, 0, 1], [1, 1, 0], [0, 1, 1]]).expect("valid fixture")
}

/// A matching of size `2m` plus `m` edges, each meeting two of its edges.
pub fn paired_matching(m: usize) -> BipartiteMultigraph {
    let mut edges: Vec<(usize, usize)> = (0..2 * m).map(|i| (i, i)).collect();
    edges.extend((0..m).map(|j| (2 * j, 2 * j + 1)));
    BipartiteMultigraph::from_indices(2 * m, 2 * m, &edges).expect("valid fixture")
}

/// A matching of size `3m` plus `m` triples, each meeting three of its edges.
pub fn paired_triples(m: usize) -> ThreePartiteHypergraph {
    let n = 3 * m;
    let mut edges: Vec<[usize; 3]> = (0..n).map(|i| [i, i, i]).collect();
    edges.extend((0..m).map(|j| [3 * j, 3 * j + 1, 3 * j + 2]));
    ThreePartiteHypergraph::from_indices([n, n, n], &edges).expect("valid fixture")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    Bipartite(BipartiteMultigraph),
    Hypergraph(ThreePartiteHypergraph),
}

/// Names accepted by [`fixture`].
pub const FIXTURE_NAMES: &[&str] = &[
    "c4",
    "p4",
    "two-edges",
    "star3",
    "c4+c4",
    "paired-r2-m1",
    "trunc-fano",
    "trunc-fano-x2",
    "triple",
    "triples3",
    "paired-r3-m1",
];

pub fn fixture(name: &str) -> Option<Fixture> {
    let bg = |a, b, e: &[(usize, usize)]| Fixture::Bipartite(BipartiteMultigraph::from_indices(a, b, e).expect("valid fixture"));
    let hg = |s, e: &[[usize; 3]]| Fixture::Hypergraph(ThreePartiteHypergraph::from_indices(s, e).expect("valid fixture"));
    Some(match name {
        "c4" => bg(2, 2, &[(0, 0), (1, 0), (1, 1), (0, 1)]),
        "p4" => bg(2, 2, &[(0, 0), (1, 0), (1, 1)]),
        "two-edges" => bg(2, 2, &[(0, 0), (1, 1)]),
        "star3" => bg(1, 3, &[(0, 0), (0, 1), (0, 2)]),
        "c4+c4" => bg(4, 4, &[(0, 0), (1, 0), (1, 1), (0, 1), (2, 2), (3, 2), (3, 3), (2, 3)]),
        "paired-r2-m1" => Fixture::Bipartite(paired_matching(1)),
        "trunc-fano" => Fixture::Hypergraph(truncated_fano()),
        "trunc-fano-x2" => Fixture::Hypergraph(truncated_fano().disjoint_union(&truncated_fano(), "'")),
        "triple" => hg([1, 1, 1], &[[0, 0, 0]]),
        "triples3" => hg([3, 3, 3], &[[0, 0, 0], [1, 1, 1], [2, 2, 2]]),
        "paired-r3-m1" => Fixture::Hypergraph(paired_triples(1)),
        _ => return None,
    })
}
