use alloc::vec::Vec;

use super::{ConnOracle, MeshulamError};
use crate::graphs::SimpleGraph;
use crate::topology::{floor_half_minus_two, ConnValue};

/// Result of [`m_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MReduced {
    pub graph: SimpleGraph,
    /// Deleted edges in deletion order.
    pub deleted: Vec<(usize, usize)>,
}

/// Deletes the lexicographically smallest decouplable edge until none is
/// left. `matching` lists the matching edges, which must be vertices of `J`,
/// and `conn(J) <= |M|/2 - 2` must hold.
pub fn m_reduce(j: &SimpleGraph, matching: &[usize], oracle: &mut dyn ConnOracle) -> Result<MReduced, MeshulamError> {
    if let Some(&m) = matching.iter().find(|&&m| !j.contains(m)) {
        return Err(MeshulamError::MatchingOutsideJ(m));
    }
    let bound = ConnValue::Finite(floor_half_minus_two(matching.len()));
    match oracle.conn(j)?.at_most(bound) {
        Some(true) => {}
        Some(false) => return Err(MeshulamError::Precondition("conn(J) exceeds |M|/2 - 2")),
        None => return Err(MeshulamError::Precondition("oracle cannot bound conn(J)")),
    }
    let mut cur = j.clone();
    let mut deleted = Vec::new();
    'scan: loop {
        let here = oracle.conn(&cur)?;
        for (u, v) in cur.edges() {
            let minus = cur.without_edge(u, v);
            match oracle.conn(&minus)?.le(here) {
                Some(true) => {
                    deleted.push((u, v));
                    cur = minus;
                    continue 'scan;
                }
                Some(false) => {}
                None => return Err(MeshulamError::Inconclusive(u, v)),
            }
        }
        return Ok(MReduced { graph: cur, deleted });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{line_graph, BipartiteMultigraph};
    use crate::meshulam::HomologyOracle;

    #[test]
    fn four_cycle_line_graph_is_reduced() {
        // L(C4) = C4, conn = -1 = |M|/2 - 2
        let g = BipartiteMultigraph::from_indices(2, 2, &[(0, 0), (0, 1), (1, 1), (1, 0)]).unwrap();
        let j = line_graph(&g);
        let r = m_reduce(&j, &[0, 2], &mut HomologyOracle::for_matching(2)).unwrap();
        assert!(r.deleted.is_empty());
        let err = m_reduce(&j, &[0], &mut HomologyOracle::for_matching(1));
        assert!(matches!(err, Err(MeshulamError::Precondition(_))));
    }
}
