use alloc::vec::Vec;

use super::{BipartiteMultigraph, GraphError, SimpleGraph, ThreePartiteHypergraph};

/// Line graph with vertex ids equal to edge ids. Intersecting edges are
/// adjacent, parallel edges included.
pub fn line_graph(g: &BipartiteMultigraph) -> SimpleGraph {
    let mut pairs = Vec::new();
    for v in 0..g.vertex_count() {
        let inc = g.incident(v);
        for (i, &e) in inc.iter().enumerate() {
            for &f in &inc[i + 1..] {
                pairs.push((e, f));
            }
        }
    }
    SimpleGraph::new((0..g.edge_count()).collect(), &pairs).expect("edge ids are distinct")
}

/// Line graph of a 3-graph (edges adjacent when they share a vertex).
pub fn line_graph_3(h: &ThreePartiteHypergraph) -> SimpleGraph {
    let es = h.edges();
    let mut pairs = Vec::new();
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            if (0..3).any(|k| es[i][k] == es[j][k]) {
                pairs.push((i, j));
            }
        }
    }
    SimpleGraph::new((0..es.len()).collect(), &pairs).expect("edge ids are distinct")
}

/// Link graph `link(H, i, S)` together with the coloring that remembers,
/// for each link edge, the hyperedge it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkGraph {
    /// Bipartite graph on the two classes other than `V_i`, in index order.
    pub graph: BipartiteMultigraph,
    /// Hyperedge id of each link edge.
    pub origin: Vec<usize>,
    /// The `V_i` vertex (class index) each link edge came from.
    pub color: Vec<usize>,
}

/// `class` is 1, 2 or 3; `subset` holds indices into that class.
pub fn link_graph(h: &ThreePartiteHypergraph, class: usize, subset: &[usize]) -> Result<LinkGraph, GraphError> {
    if !(1..=3).contains(&class) {
        return Err(GraphError::BadClass(class));
    }
    let i = class - 1;
    let size = h.class(i).len();
    if let Some(&bad) = subset.iter().find(|&&s| s >= size) {
        return Err(GraphError::IndexOutOfRange { index: bad, size });
    }
    let (j, k) = match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let mut edges = Vec::new();
    let mut origin = Vec::new();
    let mut color = Vec::new();
    for (id, e) in h.edges().iter().enumerate() {
        if subset.contains(&e[i]) {
            edges.push((e[j], e[k]));
            origin.push(id);
            color.push(e[i]);
        }
    }
    let labelled: Vec<(alloc::string::String, alloc::string::String)> =
        edges.iter().map(|&(a, b)| (h.class(j)[a].clone(), h.class(k)[b].clone())).collect();
    let graph = BipartiteMultigraph::new(h.class(j).to_vec(), h.class(k).to_vec(), &labelled)?;
    Ok(LinkGraph { graph, origin, color })
}

/// As [`link_graph`] with `S` given by labels; a label outside `V_class` is
/// an error.
pub fn link_graph_by_labels(
    h: &ThreePartiteHypergraph,
    class: usize,
    subset: &[&str],
) -> Result<LinkGraph, GraphError> {
    if !(1..=3).contains(&class) {
        return Err(GraphError::BadClass(class));
    }
    let members = h.class(class - 1);
    let mut idx = Vec::with_capacity(subset.len());
    for &s in subset {
        match members.iter().position(|v| v == s) {
            Some(p) => idx.push(p),
            None if h.classes().iter().flatten().any(|v| v == s) => return Err(GraphError::WrongClass(s.into())),
            None => return Err(GraphError::UnknownVertex(s.into())),
        }
    }
    link_graph(h, class, &idx)
}
