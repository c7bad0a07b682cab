use alloc::vec::Vec;

use super::GraphError;
use crate::bits::{bit, bits};

/// Simple undirected graph whose vertices carry integer ids (edge ids when
/// the graph is a line graph). Ids are kept sorted, so local index order is
/// id order and edge lists come out lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    ids: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Builds a graph from vertex ids and edges given as id pairs.
    pub fn new(mut ids: Vec<usize>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(alloc::format!("{}", w[0])));
        }
        let mut g = Self { adj: alloc::vec![Vec::new(); ids.len()], ids };
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let (Some(i), Some(j)) = (g.local(u), g.local(v)) else {
                let bad = if g.local(u).is_none() { u } else { v };
                return Err(GraphError::UnknownVertex(alloc::format!("{bad}")));
            };
            g.adj[i].push(j);
            g.adj[j].push(i);
        }
        for row in &mut g.adj {
            row.sort_unstable();
            row.dedup();
        }
        Ok(g)
    }

    /// Graph on `0..n` from local edge pairs.
    pub fn from_local(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::new((0..n).collect(), edges)
    }

    /// Builds from local adjacency masks (n <= 128).
    pub fn from_masks(ids: Vec<usize>, rows: &[u128]) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        let adj = rows.iter().map(|&r| bits(r).collect()).collect();
        Self { ids, adj }
    }

    pub fn vertex_ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Local index of an id.
    pub fn local(&self, id: usize) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn id(&self, local: usize) -> usize {
        self.ids[local]
    }

    pub fn contains(&self, id: usize) -> bool {
        self.local(id).is_some()
    }

    /// Local neighbour indices of a local vertex.
    pub fn local_neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, id: usize) -> Option<usize> {
        self.local(id).map(|v| self.adj[v].len())
    }

    pub fn neighbors(&self, id: usize) -> Vec<usize> {
        match self.local(id) {
            Some(v) => self.adj[v].iter().map(|&j| self.ids[j]).collect(),
            None => Vec::new(),
        }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        match (self.local(u), self.local(v)) {
            (Some(i), Some(j)) => self.adj[i].binary_search(&j).is_ok(),
            _ => false,
        }
    }

    /// Edges as id pairs `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, row) in self.adj.iter().enumerate() {
            for &j in row {
                if i < j {
                    out.push((self.ids[i], self.ids[j]));
                }
            }
        }
        out
    }

    /// Local edges `(i, j)` with `i < j`.
    pub fn local_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.adj.iter().enumerate() {
            out.extend(row.iter().filter(|&&j| i < j).map(|&j| (i, j)));
        }
        out
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    /// Induced subgraph on the ids for which `keep` holds.
    pub fn induced(&self, mut keep: impl FnMut(usize) -> bool) -> Self {
        let mut map = alloc::vec![usize::MAX; self.ids.len()];
        let mut ids = Vec::new();
        for (i, &id) in self.ids.iter().enumerate() {
            if keep(id) {
                map[i] = ids.len();
                ids.push(id);
            }
        }
        let mut adj = alloc::vec![Vec::new(); ids.len()];
        for (i, row) in self.adj.iter().enumerate() {
            if map[i] == usize::MAX {
                continue;
            }
            adj[map[i]] = row.iter().filter(|&&j| map[j] != usize::MAX).map(|&j| map[j]).collect();
        }
        Self { ids, adj }
    }

    /// Same graph without the edge `uv`; unchanged if absent.
    pub fn without_edge(&self, u: usize, v: usize) -> Self {
        let mut g = self.clone();
        if let (Some(i), Some(j)) = (self.local(u), self.local(v)) {
            g.adj[i].retain(|&x| x != j);
            g.adj[j].retain(|&x| x != i);
        }
        g
    }

    /// Local adjacency masks; requires at most 128 vertices.
    pub fn masks(&self) -> Result<Vec<u128>, GraphError> {
        if self.ids.len() > 128 {
            return Err(GraphError::SizeGuard { what: "graph vertices", size: self.ids.len(), limit: 128 });
        }
        Ok(self.adj.iter().map(|row| row.iter().fold(0u128, |m, &j| m | bit(j))).collect())
    }

    /// Disjoint union; ids of `other` are shifted past the largest id here.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.ids.last().map_or(0, |&x| x + 1);
        let n = self.ids.len();
        let mut ids = self.ids.clone();
        ids.extend(other.ids.iter().map(|&x| x + shift));
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|row| row.iter().map(|&j| j + n).collect()));
        Self { ids, adj }
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let n = self.ids.len();
        let mut seen = alloc::vec![false; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }
}
