use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::GraphError;

/// Stable identifier of an edge: its position in the edge list. Parallel
/// edges get distinct ids.
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// Bipartite multigraph with classes `A` and `B`.
///
/// Vertices are addressed either by `(side, index)` or by a unified index
/// where `A` occupies `0..|A|` and `B` occupies `|A|..|A|+|B|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    class_a: Vec<String>,
    class_b: Vec<String>,
    edges: Vec<(usize, usize)>,
    incidence: Vec<Vec<EdgeId>>,
}

impl BipartiteMultigraph {
    /// Builds a graph from labelled classes and `(a, b)` label pairs.
    pub fn new(
        class_a: Vec<String>,
        class_b: Vec<String>,
        edges: &[(String, String)],
    ) -> Result<Self, GraphError> {
        let mut seen: Vec<&str> = class_a.iter().chain(class_b.iter()).map(|s| s.as_str()).collect();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0].into()));
        }
        let find = |class: &[String], other: &[String], label: &str| -> Result<usize, GraphError> {
            match class.iter().position(|v| v == label) {
                Some(i) => Ok(i),
                None if other.iter().any(|v| v == label) => Err(GraphError::WrongClass(label.into())),
                None => Err(GraphError::UnknownVertex(label.into())),
            }
        };
        let mut idx = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            idx.push((find(&class_a, &class_b, a)?, find(&class_b, &class_a, b)?));
        }
        Ok(Self::assemble(class_a, class_b, idx))
    }

    /// Builds a graph with generated labels `a0, a1, ...` and `b0, b1, ...`.
    pub fn from_indices(a: usize, b: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        for &(x, y) in edges {
            if x >= a {
                return Err(GraphError::IndexOutOfRange { index: x, size: a });
            }
            if y >= b {
                return Err(GraphError::IndexOutOfRange { index: y, size: b });
            }
        }
        let class_a = (0..a).map(|i| format!("a{i}")).collect();
        let class_b = (0..b).map(|i| format!("b{i}")).collect();
        Ok(Self::assemble(class_a, class_b, edges.to_vec()))
    }

    fn assemble(class_a: Vec<String>, class_b: Vec<String>, edges: Vec<(usize, usize)>) -> Self {
        let na = class_a.len();
        let mut incidence = alloc::vec![Vec::new(); na + class_b.len()];
        for (id, &(x, y)) in edges.iter().enumerate() {
            incidence[x].push(id);
            incidence[na + y].push(id);
        }
        Self { class_a, class_b, edges, incidence }
    }

    pub fn class_a(&self) -> &[String] {
        &self.class_a
    }

    pub fn class_b(&self) -> &[String] {
        &self.class_b
    }

    pub fn class(&self, side: Side) -> &[String] {
        match side {
            Side::A => &self.class_a,
            Side::B => &self.class_b,
        }
    }

    pub fn class_size(&self, side: Side) -> usize {
        self.class(side).len()
    }

    pub fn vertex_count(&self) -> usize {
        self.class_a.len() + self.class_b.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(a index, b index)` in id order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (usize, usize) {
        self.edges[e]
    }

    /// Unified index of a vertex.
    pub fn vertex(&self, side: Side, i: usize) -> usize {
        match side {
            Side::A => i,
            Side::B => self.class_a.len() + i,
        }
    }

    /// Inverse of [`vertex`](Self::vertex).
    pub fn locate(&self, v: usize) -> (Side, usize) {
        let na = self.class_a.len();
        if v < na {
            (Side::A, v)
        } else {
            (Side::B, v - na)
        }
    }

    pub fn label(&self, v: usize) -> &str {
        match self.locate(v) {
            (Side::A, i) => &self.class_a[i],
            (Side::B, i) => &self.class_b[i],
        }
    }

    /// Unified endpoints `[a, b]` of an edge.
    pub fn endpoints(&self, e: EdgeId) -> [usize; 2] {
        let (x, y) = self.edges[e];
        [x, self.class_a.len() + y]
    }

    /// Edge ids incident with a unified vertex, ascending.
    pub fn incident(&self, v: usize) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    /// The endpoint of `e` other than `v`.
    pub fn opposite(&self, e: EdgeId, v: usize) -> usize {
        let [x, y] = self.endpoints(e);
        if v == x {
            y
        } else {
            x
        }
    }

    pub fn share_vertex(&self, e: EdgeId, f: EdgeId) -> bool {
        let (a1, b1) = self.edges[e];
        let (a2, b2) = self.edges[f];
        a1 == a2 || b1 == b2
    }

    /// True for distinct edges with the same endpoints.
    pub fn parallel(&self, e: EdgeId, f: EdgeId) -> bool {
        e != f && self.edges[e] == self.edges[f]
    }

    /// Shared vertex (unified) of two intersecting, non-parallel edges.
    pub fn common_vertex(&self, e: EdgeId, f: EdgeId) -> Option<usize> {
        let [x1, y1] = self.endpoints(e);
        let [x2, y2] = self.endpoints(f);
        match (x1 == x2, y1 == y2) {
            (true, false) => Some(x1),
            (false, true) => Some(y1),
            _ => None,
        }
    }

    /// Distinct neighbours (unified indices, ascending) of a unified vertex.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.incidence[v].iter().map(|&e| self.opposite(e, v)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Number of edges between `a` and `b` (class indices).
    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        self.edges.iter().filter(|&&e| e == (a, b)).count()
    }

    /// `|A| x |B|` multiplicity matrix, row-major.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<u8>> {
        let mut m = alloc::vec![alloc::vec![0u8; self.class_b.len()]; self.class_a.len()];
        for &(a, b) in &self.edges {
            m[a][b] = m[a][b].saturating_add(1);
        }
        m
    }

    /// Subgraph on the same vertex set keeping the edges for which `keep`
    /// holds. Returns the graph and, for each new edge id, the old id.
    pub fn filter_edges(&self, mut keep: impl FnMut(EdgeId) -> bool) -> (Self, Vec<EdgeId>) {
        let old: Vec<EdgeId> = (0..self.edges.len()).filter(|&e| keep(e)).collect();
        let edges = old.iter().map(|&e| self.edges[e]).collect();
        (Self::assemble(self.class_a.clone(), self.class_b.clone(), edges), old)
    }

    /// Disjoint union; labels of `other` get `suffix` appended.
    pub fn disjoint_union(&self, other: &Self, suffix: &str) -> Self {
        let mut class_a = self.class_a.clone();
        let mut class_b = self.class_b.clone();
        class_a.extend(other.class_a.iter().map(|s| format!("{s}{suffix}")));
        class_b.extend(other.class_b.iter().map(|s| format!("{s}{suffix}")));
        let (na, nb) = (self.class_a.len(), self.class_b.len());
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + na, b + nb)));
        Self::assemble(class_a, class_b, edges)
    }

    /// Same graph with the classes swapped.
    pub fn transpose(&self) -> Self {
        let edges = self.edges.iter().map(|&(a, b)| (b, a)).collect();
        Self::assemble(self.class_b.clone(), self.class_a.clone(), edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn labelled_construction() {
        let g = BipartiteMultigraph::new(
            s(&["x", "y"]),
            s(&["p"]),
            &[("x".into(), "p".into()), ("x".into(), "p".into()), ("y".into(), "p".into())],
        )
        .unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.parallel(0, 1));
        assert!(!g.parallel(0, 2));
        assert_eq!(g.common_vertex(0, 2), Some(2));
        assert_eq!(g.common_vertex(0, 1), None);
        assert_eq!(g.neighbors(2), vec![0, 1]);
        assert_eq!(g.multiplicity(0, 0), 2);
    }

    #[test]
    fn rejects_bad_input() {
        let e = BipartiteMultigraph::new(s(&["x"]), s(&["x"]), &[]);
        assert_eq!(e, Err(GraphError::DuplicateVertex("x".into())));
        let e = BipartiteMultigraph::new(s(&["x"]), s(&["p"]), &[("p".into(), "x".into())]);
        assert_eq!(e, Err(GraphError::WrongClass("p".into())));
        let e = BipartiteMultigraph::new(s(&["x"]), s(&["p"]), &[("x".into(), "q".into())]);
        assert_eq!(e, Err(GraphError::UnknownVertex("q".into())));
        assert!(BipartiteMultigraph::from_indices(1, 1, &[(0, 1)]).is_err());
    }
}
