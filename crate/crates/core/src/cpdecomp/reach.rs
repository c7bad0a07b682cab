use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use super::CpError;
use crate::graphs::{BipartiteMultigraph, EdgeId, Matching, SimpleGraph};

/// Matching edges lying on some alternating path that starts with `m`,
/// continues with `e`, and uses only edges of `V(J)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingReach {
    pub reached: Vec<EdgeId>,
}

/// Computes the reach set of the seed `(m, e)`.
///
/// Orient non-matching edges from the class of `m ∩ e` to the other class
/// and matching edges the opposite way. Alternating paths starting with
/// `m, e` are then directed walks from the far end of `e` that avoid both
/// ends of `m`, and any such walk shortens to a path with the same start.
pub fn reach(g: &BipartiteMultigraph, j: &SimpleGraph, m_set: &Matching, m: EdgeId, e: EdgeId) -> Result<AlternatingReach, CpError> {
    if !m_set.contains(m) {
        return Err(CpError::NotInMatching(m));
    }
    if m_set.contains(e) {
        return Err(CpError::InMatching(e));
    }
    if !j.contains(e) {
        return Err(CpError::OutsideJ(e));
    }
    if !j.contains(m) {
        return Err(CpError::MatchingOutsideJ(m));
    }
    let y = g.common_vertex(m, e).ok_or(CpError::NotIncident(m, e))?;
    let x = g.opposite(m, y);
    let start = g.opposite(e, y);
    let partner = m_set.partner_edges(g);
    let mut seen = alloc::vec![false; g.vertex_count()];
    seen[x] = true;
    seen[y] = true;
    seen[start] = true;
    let mut reached = BTreeSet::new();
    reached.insert(m);
    let mut queue = VecDeque::new();
    queue.push_back(start);
    // `u` is always on the side of x, reached by a non-matching edge
    while let Some(u) = queue.pop_front() {
        let Some(mu) = partner[u] else { continue };
        if !j.contains(mu) {
            continue;
        }
        reached.insert(mu);
        let w = g.opposite(mu, u);
        if seen[w] {
            continue;
        }
        seen[w] = true;
        for &h in g.incident(w) {
            if m_set.contains(h) || !j.contains(h) {
                continue;
            }
            let z = g.opposite(h, w);
            if !seen[z] {
                seen[z] = true;
                queue.push_back(z);
            }
        }
    }
    Ok(AlternatingReach { reached: reached.into_iter().collect() })
}

/// All alternating 4-cycles `(m, e, m', f)` with `m < m'` in `M` and
/// `e, f ∈ V(J) \ M`, where `e` shares with `m` its B-end and `f` its A-end.
pub fn alternating_c4s(g: &BipartiteMultigraph, j: &SimpleGraph, m_set: &Matching) -> Vec<[EdgeId; 4]> {
    let mut out = Vec::new();
    let ms = m_set.edges();
    for (i, &m) in ms.iter().enumerate() {
        for &m2 in &ms[i + 1..] {
            let [a, b] = g.endpoints(m);
            let [a2, b2] = g.endpoints(m2);
            let between = |x: usize, y: usize| -> Vec<EdgeId> {
                g.incident(x)
                    .iter()
                    .copied()
                    .filter(|&h| g.opposite(h, x) == y && j.contains(h) && !m_set.contains(h))
                    .collect()
            };
            for e in between(a2, b) {
                for f in between(a, b2) {
                    out.push([m, e, m2, f]);
                }
            }
        }
    }
    out
}

/// `M× = M ∪ {e, f} \ {m, m'}` for an alternating 4-cycle `(m, e, m', f)`.
pub fn c4_switch(g: &BipartiteMultigraph, m_set: &Matching, cycle: [EdgeId; 4]) -> Result<Matching, CpError> {
    let [m, e, m2, f] = cycle;
    if cycle.iter().any(|&x| x >= g.edge_count()) {
        return Err(CpError::BadCycle("unknown edge"));
    }
    if !m_set.contains(m) || !m_set.contains(m2) {
        return Err(CpError::BadCycle("m and m' must be matching edges"));
    }
    if m_set.contains(e) || m_set.contains(f) {
        return Err(CpError::BadCycle("e and f must not be matching edges"));
    }
    let meets = |p: EdgeId, q: EdgeId| g.common_vertex(p, q).is_some();
    if !(meets(m, e) && meets(e, m2) && meets(m2, f) && meets(f, m)) || g.share_vertex(e, f) {
        return Err(CpError::BadCycle("edges do not form a 4-cycle"));
    }
    let out = m_set.exchange(&[m, m2], &[e, f]);
    debug_assert!(Matching::new(g, out.edges().to_vec()).is_ok());
    Ok(out)
}

/// Matchings reachable from `M` by repeated C4-switches inside `V(J)`,
/// breadth first, at most `limit` of them (including `M`).
pub fn switch_family(g: &BipartiteMultigraph, j: &SimpleGraph, m_set: &Matching, limit: usize) -> Vec<Matching> {
    let mut seen: BTreeSet<Matching> = BTreeSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(m_set.clone());
    queue.push_back(m_set.clone());
    while let Some(cur) = queue.pop_front() {
        order.push(cur.clone());
        if order.len() >= limit {
            break;
        }
        for c in alternating_c4s(g, j, &cur) {
            if let Ok(next) = c4_switch(g, &cur, c) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::line_graph;
    use alloc::vec;

    #[test]
    fn exposed_far_end_gives_only_m() {
        let g = BipartiteMultigraph::from_indices(2, 1, &[(0, 0), (1, 0)]).unwrap();
        let j = line_graph(&g);
        let m = Matching::new(&g, vec![0]).unwrap();
        assert_eq!(reach(&g, &j, &m, 0, 1).unwrap().reached, vec![0]);
        assert!(reach(&g, &j, &m, 1, 0).is_err());
    }

    #[test]
    fn switch_on_c4() {
        let g = BipartiteMultigraph::from_indices(2, 2, &[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        let j = line_graph(&g);
        let m = Matching::new(&g, vec![0, 2]).unwrap();
        let cs = alternating_c4s(&g, &j, &m);
        assert_eq!(cs, vec![[0, 1, 2, 3]]);
        let mx = c4_switch(&g, &m, cs[0]).unwrap();
        assert_eq!(mx.edges(), &[1, 3]);
        assert_eq!(reach(&g, &j, &m, 0, 1).unwrap().reached, vec![0, 2]);
        assert_eq!(reach(&g, &j, &mx, 1, 0).unwrap().reached, vec![1, 3]);
        assert_eq!(switch_family(&g, &j, &m, 10).len(), 2);
        assert!(c4_switch(&g, &m, [0, 2, 1, 3]).is_err());
    }
}
