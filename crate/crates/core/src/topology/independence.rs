use alloc::vec::Vec;

use super::{conn_h, ConnValue, ConnWindow, SimplicialComplex, TopologyError, FACE_LIMIT};
use crate::bits::{above, bit, bits, low_mask};
use crate::graphs::SimpleGraph;

/// Independence complex `I(G)`. With `max_size = Some(k)` only independent
/// sets of at most `k` vertices are generated.
pub fn independence_complex(g: &SimpleGraph, max_size: Option<usize>) -> Result<SimplicialComplex, TopologyError> {
    let adj = g.masks().map_err(|_| TopologyError::TooManyVertices(g.vertex_count()))?;
    let alive = low_mask(adj.len());
    let (faces, complete) = independent_sets(&adj, alive, max_size.unwrap_or(usize::MAX))?;
    Ok(SimplicialComplex::from_face_set(g.vertex_ids().to_vec(), faces, if complete { None } else { max_size }))
}

/// Independent sets of the graph induced on `alive`, up to `max_size`
/// vertices. The flag says whether no larger independent set exists.
fn independent_sets(adj: &[u128], alive: u128, max_size: usize) -> Result<(Vec<u128>, bool), TopologyError> {
    let mut out = alloc::vec![0u128];
    let mut complete = true;
    let mut stack: Vec<(u128, u128)> = alloc::vec![(0, alive)];
    while let Some((face, cand)) = stack.pop() {
        if cand == 0 {
            continue;
        }
        if face.count_ones() as usize >= max_size {
            complete = false;
            continue;
        }
        for v in bits(cand) {
            let f = face | bit(v);
            out.push(f);
            if out.len() > FACE_LIMIT {
                return Err(TopologyError::FaceGuard { count: out.len(), limit: FACE_LIMIT });
            }
            stack.push((f, cand & !adj[v] & above(v)));
        }
    }
    Ok((out, complete))
}

/// Repeatedly deletes a vertex `v` for which some other vertex `u` has
/// `N(u) ⊆ N(v)`. Each deletion preserves the homotopy type of `I(G)`.
/// Returns the surviving vertex mask.
fn fold_mask(adj: &[u128], mut alive: u128) -> u128 {
    'outer: loop {
        for v in bits(alive).collect::<Vec<_>>().into_iter().rev() {
            let nv = adj[v] & alive;
            for u in bits(alive & !bit(v)) {
                if adj[u] & alive & !nv == 0 {
                    alive &= !bit(v);
                    continue 'outer;
                }
            }
        }
        return alive;
    }
}

/// The graph left after exhausting fold deletions.
pub fn fold_reduce(g: &SimpleGraph) -> Result<SimpleGraph, TopologyError> {
    let adj = g.masks().map_err(|_| TopologyError::TooManyVertices(g.vertex_count()))?;
    let alive = fold_mask(&adj, low_mask(adj.len()));
    let keep: Vec<usize> = bits(alive).map(|i| g.id(i)).collect();
    Ok(g.induced(|id| keep.binary_search(&id).is_ok()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndependenceOptions {
    /// Apply fold deletions before building the complex.
    pub fold: bool,
}

impl Default for IndependenceOptions {
    fn default() -> Self {
        Self { fold: true }
    }
}

/// `conn_H(I(G))` scanned up to dimension `cap`. An isolated vertex makes
/// `I(G)` a cone, which is reported as `Exact(∞)` directly.
pub fn independence_conn_h(g: &SimpleGraph, cap: i32, opts: IndependenceOptions) -> Result<ConnWindow, TopologyError> {
    if cap < -1 {
        return Err(TopologyError::BadCap(cap));
    }
    let adj = g.masks().map_err(|_| TopologyError::TooManyVertices(g.vertex_count()))?;
    conn_h_masks(&adj, low_mask(adj.len()), cap, opts)
}

pub(crate) fn conn_h_masks(adj: &[u128], alive: u128, cap: i32, opts: IndependenceOptions) -> Result<ConnWindow, TopologyError> {
    if alive == 0 {
        return Ok(ConnWindow::Exact(ConnValue::Finite(-2)));
    }
    if bits(alive).any(|v| adj[v] & alive == 0) {
        return Ok(ConnWindow::Exact(ConnValue::Infinite));
    }
    let alive = if opts.fold { fold_mask(adj, alive) } else { alive };
    if alive.count_ones() == 1 {
        return Ok(ConnWindow::Exact(ConnValue::Infinite));
    }
    // compact the surviving vertices
    let idx: Vec<usize> = bits(alive).collect();
    let local: Vec<u128> = idx
        .iter()
        .map(|&v| idx.iter().enumerate().filter(|&(_, &w)| adj[v] & bit(w) != 0).fold(0u128, |m, (j, _)| m | bit(j)))
        .collect();
    let max_size = (cap + 2) as usize;
    let (faces, complete) = independent_sets(&local, low_mask(idx.len()), max_size)?;
    let c = SimplicialComplex::from_face_set(idx, faces, if complete { None } else { Some(max_size) });
    conn_h(&c, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::reduced_homology;
    use alloc::vec;

    fn cycle(n: usize) -> SimpleGraph {
        let e: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::from_local(n, &e).unwrap()
    }

    #[test]
    fn cycles() {
        // I(C_5) is a circle; I(C_4) is two points
        let c5 = independence_complex(&cycle(5), None).unwrap();
        let h = reduced_homology(&c5, 1).unwrap();
        assert_eq!(h.iter().map(|g| g.rank).collect::<Vec<_>>(), vec![0, 0, 1]);
        for fold in [false, true] {
            let o = IndependenceOptions { fold };
            assert_eq!(independence_conn_h(&cycle(5), 2, o).unwrap(), ConnWindow::Exact(ConnValue::Finite(0)));
            assert_eq!(independence_conn_h(&cycle(4), 2, o).unwrap(), ConnWindow::Exact(ConnValue::Finite(-1)));
            assert_eq!(independence_conn_h(&cycle(6), 2, o).unwrap(), ConnWindow::Exact(ConnValue::Finite(0)));
        }
    }

    #[test]
    fn truncation_flag() {
        let empty3 = SimpleGraph::from_local(3, &[]).unwrap();
        let c = independence_complex(&empty3, Some(2)).unwrap();
        assert!(!c.is_complete());
        assert_eq!(c.face_count(), 7);
        let full = independence_complex(&empty3, Some(3)).unwrap();
        assert!(full.is_complete());
    }
}
