use super::MeshulamError;
use crate::graphs::SimpleGraph;

/// `J - e`: same vertices, one edge fewer.
pub fn delete_edge(j: &SimpleGraph, e: (usize, usize)) -> Result<SimpleGraph, MeshulamError> {
    if !j.adjacent(e.0, e.1) {
        return Err(MeshulamError::NotAnEdge(e.0, e.1));
    }
    Ok(j.without_edge(e.0, e.1))
}

/// `J ⋇ e`: the subgraph induced on the vertices outside `N[x] ∪ N[y]`.
pub fn explode_edge(j: &SimpleGraph, e: (usize, usize)) -> Result<SimpleGraph, MeshulamError> {
    let (x, y) = e;
    if !j.adjacent(x, y) {
        return Err(MeshulamError::NotAnEdge(x, y));
    }
    let mut gone = j.neighbors(x);
    gone.extend(j.neighbors(y));
    gone.sort_unstable();
    Ok(j.induced(|v| gone.binary_search(&v).is_err()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_and_path() {
        let k3 = SimpleGraph::from_local(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(explode_edge(&k3, (0, 1)).unwrap().is_empty());
        let p4 = SimpleGraph::from_local(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let x = explode_edge(&p4, (0, 1)).unwrap();
        assert_eq!(x.vertex_ids(), &[3]);
        assert_eq!(delete_edge(&p4, (1, 2)).unwrap().edge_count(), 2);
        assert_eq!(delete_edge(&p4, (0, 2)), Err(MeshulamError::NotAnEdge(0, 2)));
    }
}
