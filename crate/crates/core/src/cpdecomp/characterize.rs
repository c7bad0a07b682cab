use super::{find_cp, verify_cp, CpDecomposition, CpError};
use crate::graphs::{line_graph, max_matching_bipartite, BipartiteMultigraph, Matching};
use crate::topology::{independence_conn_h, ConnValue, ConnWindow, IndependenceOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharacterizationStatus {
    /// Homology and the CP search agree.
    Consistent,
    /// The two sides disagree in a way homology alone can decide.
    Violation,
    /// A CP-decomposition exists but homology does not reach the threshold;
    /// homotopy connectivity may still be `ν/2 - 2`.
    Pi1Inconclusive,
    /// `ν` is odd, so the threshold `ν/2 - 2` is not an integer.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterizationReport {
    pub nu: usize,
    pub matching: Matching,
    /// `conn_H(I(L(G)))` scanned up to `ν/2 - 1`; `None` when not applicable.
    pub window: Option<ConnWindow>,
    pub cp: Option<CpDecomposition>,
    /// `conn_H ≤ ν/2 - 2`, which forces `conn ≤ ν/2 - 2` and therefore equality.
    pub homology_extremal: Option<bool>,
    pub status: CharacterizationStatus,
}

/// Compares extremality of `L(G)` with the existence of a CP-decomposition
/// for a maximum matching.
///
/// Homology bounds connectivity from above, so `conn_H = ν/2 - 2` certifies
/// extremality. When `conn_H` is larger the graph may still be extremal
/// through a non-simply-connected complex, except for `ν = 2` where
/// `conn = -1` is read off `H_0`.
pub fn check_characterization(g: &BipartiteMultigraph) -> Result<CharacterizationReport, CpError> {
    let m = max_matching_bipartite(g);
    let nu = m.len();
    if nu % 2 == 1 {
        return Ok(CharacterizationReport {
            nu,
            matching: m,
            window: None,
            cp: None,
            homology_extremal: None,
            status: CharacterizationStatus::NotApplicable,
        });
    }
    let k = (nu / 2) as i32;
    let j = line_graph(g);
    let window = independence_conn_h(&j, k - 1, IndependenceOptions::default())?;
    let extremal = window.at_most(ConnValue::Finite(k - 2)).expect("cap is above the threshold");
    let cp = find_cp(g, &j, &m)?;
    if let Some(d) = &cp {
        debug_assert!(verify_cp(g, &j, &m, d).accepted);
    }
    let status = match (extremal, cp.is_some()) {
        (true, true) | (false, false) => CharacterizationStatus::Consistent,
        (true, false) => CharacterizationStatus::Violation,
        (false, true) if k <= 1 => CharacterizationStatus::Violation,
        (false, true) => CharacterizationStatus::Pi1Inconclusive,
    };
    Ok(CharacterizationReport { nu, matching: m, window: Some(window), cp, homology_extremal: Some(extremal), status })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpdecomp::BlockKind;

    fn status(edges: &[(usize, usize)], a: usize, b: usize) -> CharacterizationReport {
        check_characterization(&BipartiteMultigraph::from_indices(a, b, edges).unwrap()).unwrap()
    }

    #[test]
    fn small_cases() {
        let c4 = status(&[(0, 0), (1, 0), (1, 1), (0, 1)], 2, 2);
        assert_eq!(c4.status, CharacterizationStatus::Consistent);
        assert_eq!(c4.cp.unwrap().count(BlockKind::C4), 1);
        let p4 = status(&[(0, 0), (1, 0), (1, 1)], 2, 2);
        assert_eq!(p4.homology_extremal, Some(true));
        assert_eq!(p4.cp.unwrap().count(BlockKind::P4), 1);
        let two = status(&[(0, 0), (1, 1)], 2, 2);
        assert_eq!(two.status, CharacterizationStatus::Consistent);
        assert_eq!(two.window, Some(ConnWindow::Exact(ConnValue::Infinite)));
        assert!(two.cp.is_none());
        let one = status(&[(0, 0)], 1, 1);
        assert_eq!(one.status, CharacterizationStatus::NotApplicable);
    }
}
