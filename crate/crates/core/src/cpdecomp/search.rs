use alloc::vec::Vec;

use super::verify::covered;
use super::{Block, BlockKind, CpDecomposition, CpError};
use crate::graphs::{BipartiteMultigraph, EdgeId, Matching, SimpleGraph};

/// Exhaustive search for a CP-decomposition of `J` with respect to `M`.
/// `Ok(None)` proves that none exists.
pub fn find_cp(g: &BipartiteMultigraph, j: &SimpleGraph, m: &Matching) -> Result<Option<CpDecomposition>, CpError> {
    if m.len() % 2 == 1 {
        return Err(CpError::OddMatching(m.len()));
    }
    if let Some(&e) = m.edges().iter().find(|&&e| !j.contains(e)) {
        return Err(CpError::MatchingOutsideJ(e));
    }
    let partner = m.partner_edges(g);
    // matching edges whose blocks decide coverage of each V(J) edge
    let mut owners: Vec<(EdgeId, Vec<EdgeId>)> = Vec::new();
    for &h in j.vertex_ids() {
        let mut o: Vec<EdgeId> = g.endpoints(h).iter().filter_map(|&v| partner[v]).collect();
        o.sort_unstable();
        o.dedup();
        if o.is_empty() {
            // both ends exposed: nothing can ever cover h
            return Ok(None);
        }
        owners.push((h, o));
    }
    let mut s = Search { g, j, owners, blocks: Vec::new() };
    let mut free: Vec<EdgeId> = m.edges().to_vec();
    if s.go(&mut free) {
        Ok(Some(CpDecomposition { blocks: s.blocks }))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    g: &'a BipartiteMultigraph,
    j: &'a SimpleGraph,
    owners: Vec<(EdgeId, Vec<EdgeId>)>,
    blocks: Vec<Block>,
}

impl Search<'_> {
    fn go(&mut self, free: &mut Vec<EdgeId>) -> bool {
        if free.is_empty() {
            return true;
        }
        let m = free.remove(0);
        for idx in 0..free.len() {
            let m2 = free.remove(idx);
            for cand in candidates(self.g, self.j, m, m2) {
                self.blocks.push(cand);
                if self.consistent(free) && self.go(free) {
                    return true;
                }
                self.blocks.pop();
            }
            free.insert(idx, m2);
        }
        free.insert(0, m);
        false
    }

    /// Every V(J) edge whose owning matching edges are all placed must be
    /// covered already.
    fn consistent(&self, free: &[EdgeId]) -> bool {
        self.owners
            .iter()
            .filter(|(_, o)| o.iter().all(|x| !free.contains(x)))
            .all(|&(h, _)| covered(self.g, self.j, &self.blocks, h))
    }
}

/// Candidate blocks pairing `m` and `m2`: the C4 (lowest suitable edge ids)
/// first, then each P4.
fn candidates(g: &BipartiteMultigraph, j: &SimpleGraph, m: EdgeId, m2: EdgeId) -> Vec<Block> {
    let [a, b] = g.endpoints(m);
    let [a2, b2] = g.endpoints(m2);
    let between = |x: usize, y: usize| -> Vec<EdgeId> {
        g.incident(x).iter().copied().filter(|&e| g.opposite(e, x) == y && j.contains(e)).collect()
    };
    let mut out = Vec::new();
    let e_side = between(a2, b);
    let f_side = between(a, b2);
    let e = e_side.iter().copied().find(|&e| j.adjacent(m, e) && j.adjacent(m2, e));
    let f = f_side.iter().copied().find(|&f| j.adjacent(m, f) && j.adjacent(m2, f));
    if let (Some(e), Some(f)) = (e, f) {
        out.push(Block {
            kind: BlockKind::C4,
            vertices: alloc::vec![a, b, a2, b2],
            edges: alloc::vec![m, e, m2, f],
            m_edges: alloc::vec![m.min(m2), m.max(m2)],
        });
    }
    // path b - a - b2 - a2 with middle edge a b2
    for &mid in &f_side {
        if j.adjacent(m, mid) && j.adjacent(mid, m2) {
            out.push(Block {
                kind: BlockKind::P4,
                vertices: alloc::vec![b, a, b2, a2],
                edges: alloc::vec![m, mid, m2],
                m_edges: alloc::vec![m.min(m2), m.max(m2)],
            });
        }
    }
    // path a - b - a2 - b2 with middle edge b a2
    for &mid in &e_side {
        if j.adjacent(m, mid) && j.adjacent(mid, m2) {
            out.push(Block {
                kind: BlockKind::P4,
                vertices: alloc::vec![a, b, a2, b2],
                edges: alloc::vec![m, mid, m2],
                m_edges: alloc::vec![m.min(m2), m.max(m2)],
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpdecomp::verify_cp;
    use crate::graphs::line_graph;
    use alloc::vec;

    fn run(a: usize, b: usize, edges: &[(usize, usize)], m: Vec<EdgeId>) -> Option<CpDecomposition> {
        let g = BipartiteMultigraph::from_indices(a, b, edges).unwrap();
        let j = line_graph(&g);
        let m = Matching::new(&g, m).unwrap();
        let d = find_cp(&g, &j, &m).unwrap();
        if let Some(d) = &d {
            assert!(verify_cp(&g, &j, &m, d).accepted);
        }
        d
    }

    #[test]
    fn basic_shapes() {
        let c4 = run(2, 2, &[(0, 0), (1, 0), (1, 1), (0, 1)], vec![0, 2]).unwrap();
        assert_eq!(c4.blocks.len(), 1);
        assert_eq!(c4.blocks[0].kind, BlockKind::C4);
        let p4 = run(2, 2, &[(0, 0), (1, 0), (1, 1)], vec![0, 2]).unwrap();
        assert_eq!(p4.blocks[0].kind, BlockKind::P4);
        assert_eq!(p4.blocks[0].edges, vec![0, 1, 2]);
        assert!(run(2, 2, &[(0, 0), (1, 1)], vec![0, 1]).is_none());
    }

    #[test]
    fn odd_matching_rejected() {
        let g = BipartiteMultigraph::from_indices(1, 1, &[(0, 0)]).unwrap();
        let m = Matching::new(&g, vec![0]).unwrap();
        assert_eq!(find_cp(&g, &line_graph(&g), &m), Err(CpError::OddMatching(1)));
    }
}
