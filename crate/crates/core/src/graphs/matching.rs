use alloc::vec::Vec;

use super::{BipartiteMultigraph, EdgeId, GraphError};

/// A set of pairwise disjoint edges, stored as sorted edge ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    edges: Vec<EdgeId>,
}

impl Matching {
    /// Validates that `edges` exist in `g` and are pairwise disjoint.
    pub fn new(g: &BipartiteMultigraph, mut edges: Vec<EdgeId>) -> Result<Self, GraphError> {
        edges.sort_unstable();
        edges.dedup();
        if let Some(&e) = edges.iter().find(|&&e| e >= g.edge_count()) {
            return Err(GraphError::UnknownEdge(e));
        }
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                if g.share_vertex(e, f) {
                    return Err(GraphError::NotMatching(e, f));
                }
            }
        }
        Ok(Self { edges })
    }

    pub(crate) fn from_sorted_unchecked(edges: Vec<EdgeId>) -> Self {
        Self { edges }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// For each unified vertex, the matching edge covering it.
    pub fn partner_edges(&self, g: &BipartiteMultigraph) -> Vec<Option<EdgeId>> {
        let mut out = alloc::vec![None; g.vertex_count()];
        for &e in &self.edges {
            for v in g.endpoints(e) {
                out[v] = Some(e);
            }
        }
        out
    }

    /// Symmetric difference with a set of edges (used for switches).
    pub fn exchange(&self, remove: &[EdgeId], add: &[EdgeId]) -> Self {
        let mut edges: Vec<EdgeId> = self.edges.iter().copied().filter(|e| !remove.contains(e)).collect();
        edges.extend_from_slice(add);
        edges.sort_unstable();
        edges.dedup();
        Self { edges }
    }
}

/// Maximum matching by augmenting paths. `A` vertices are processed in index
/// order and incident edges in ascending id order, so the result is
/// deterministic.
pub fn max_matching_bipartite(g: &BipartiteMultigraph) -> Matching {
    max_matching_on(g, |_| true)
}

/// Maximum matching using only the edges for which `allowed` holds.
pub fn max_matching_on(g: &BipartiteMultigraph, allowed: impl Fn(EdgeId) -> bool) -> Matching {
    let na = g.class_size(super::Side::A);
    let nb = g.class_size(super::Side::B);
    let usable: Vec<bool> = (0..g.edge_count()).map(&allowed).collect();
    // match_b[b] = edge matched at b
    let mut match_b: Vec<Option<EdgeId>> = alloc::vec![None; nb];
    let mut seen = alloc::vec![false; nb];
    for a in 0..na {
        seen.iter_mut().for_each(|s| *s = false);
        augment(g, &usable, a, &mut match_b, &mut seen);
    }
    let mut edges: Vec<EdgeId> = match_b.into_iter().flatten().collect();
    edges.sort_unstable();
    Matching::from_sorted_unchecked(edges)
}

fn augment(
    g: &BipartiteMultigraph,
    usable: &[bool],
    a: usize,
    match_b: &mut [Option<EdgeId>],
    seen: &mut [bool],
) -> bool {
    for &e in g.incident(a) {
        if !usable[e] {
            continue;
        }
        let b = g.edge(e).1;
        if seen[b] {
            continue;
        }
        seen[b] = true;
        let free = match match_b[b] {
            None => true,
            Some(f) => augment(g, usable, g.edge(f).0, match_b, seen),
        };
        if free {
            match_b[b] = Some(e);
            return true;
        }
    }
    false
}

/// Minimum vertex cover (unified indices) via König's construction. Its size
/// equals the matching number.
pub fn vertex_cover_bipartite(g: &BipartiteMultigraph) -> Vec<usize> {
    let m = max_matching_bipartite(g);
    let partner = m.partner_edges(g);
    let na = g.class_size(super::Side::A);
    // Z: vertices reachable from unmatched A vertices by alternating paths.
    let mut in_z = alloc::vec![false; g.vertex_count()];
    let mut stack: Vec<usize> = (0..na).filter(|&a| partner[a].is_none()).collect();
    for &a in &stack {
        in_z[a] = true;
    }
    while let Some(a) = stack.pop() {
        for &e in g.incident(a) {
            if m.contains(e) {
                continue;
            }
            let b = g.opposite(e, a);
            if in_z[b] {
                continue;
            }
            in_z[b] = true;
            if let Some(f) = partner[b] {
                let a2 = g.opposite(f, b);
                if !in_z[a2] {
                    in_z[a2] = true;
                    stack.push(a2);
                }
            }
        }
    }
    let cover: Vec<usize> = (0..g.vertex_count()).filter(|&v| (v < na) != in_z[v]).collect();
    debug_assert_eq!(cover.len(), m.len());
    cover
}

/// Whether `m` admits an augmenting path (false iff `m` is maximum).
pub fn has_augmenting_path(g: &BipartiteMultigraph, m: &Matching) -> bool {
    max_matching_bipartite(g).len() > m.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn small_cases() {
        let g = BipartiteMultigraph::from_indices(2, 2, &[(0, 0), (0, 1), (1, 0)]).unwrap();
        let m = max_matching_bipartite(&g);
        assert_eq!(m.len(), 2);
        assert_eq!(vertex_cover_bipartite(&g).len(), 2);
        let star = BipartiteMultigraph::from_indices(1, 3, &[(0, 0), (0, 1), (0, 2), (0, 2)]).unwrap();
        assert_eq!(max_matching_bipartite(&star).len(), 1);
        assert_eq!(vertex_cover_bipartite(&star), vec![0]);
    }

    #[test]
    fn matching_validation() {
        let g = BipartiteMultigraph::from_indices(2, 2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        assert!(Matching::new(&g, vec![0, 2]).is_ok());
        assert_eq!(Matching::new(&g, vec![0, 1]), Err(GraphError::NotMatching(0, 1)));
        assert_eq!(Matching::new(&g, vec![5]), Err(GraphError::UnknownEdge(5)));
    }
}
