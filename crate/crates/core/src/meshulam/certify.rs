use super::{psi_at_least, Decision, MeshulamError, PsiConfig};
use crate::graphs::SimpleGraph;
use crate::topology::{independence_conn_h, ConnValue, ConnWindow, IndependenceOptions};

/// Two-sided certificates for `conn(I(J))`: ψ and isolated vertices bound
/// it from below, homology from above. `floor` is a lower bound already
/// known to the caller (for line graphs, `⌈ν/2⌉ - 2`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Certifier {
    pub psi: PsiConfig,
}

impl Certifier {
    pub fn new(psi: PsiConfig) -> Self {
        Self { psi }
    }

    /// Decides `conn(I(J)) >= t`.
    pub fn at_least(&self, j: &SimpleGraph, floor: ConnValue, t: ConnValue) -> Result<Decision, MeshulamError> {
        if t <= floor || j.has_isolated_vertex() {
            return Ok(Decision::Yes);
        }
        let cap = match t {
            ConnValue::Finite(v) => v,
            ConnValue::Infinite => j.vertex_count() as i32,
        };
        let w = independence_conn_h(j, cap, IndependenceOptions::default())?;
        if w.at_least(t) == Some(false) {
            return Ok(Decision::No);
        }
        let cfg = PsiConfig { homology_prune: true, ..self.psi };
        match psi_at_least(j, t, cfg) {
            Ok((true, _)) => Ok(Decision::Yes),
            Ok((false, _)) | Err(MeshulamError::Budget { .. }) => Ok(Decision::Inconclusive),
            Err(e) => Err(e),
        }
    }

    /// `conn(I(J))` when homology scanned up to `cap` meets a lower bound.
    /// Also returns the homology window.
    pub fn exact(&self, j: &SimpleGraph, floor: ConnValue, cap: i32) -> Result<(Option<ConnValue>, ConnWindow), MeshulamError> {
        if j.has_isolated_vertex() {
            return Ok((Some(ConnValue::Infinite), ConnWindow::Exact(ConnValue::Infinite)));
        }
        let w = independence_conn_h(j, cap, IndependenceOptions::default())?;
        let Some(v) = w.exact() else { return Ok((None, w)) };
        if v <= floor {
            return Ok((Some(v), w));
        }
        let exact = self.at_least(j, floor, v)? == Decision::Yes;
        Ok((exact.then_some(v), w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles() {
        let c = Certifier::default();
        let c4 = SimpleGraph::from_local(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let f = ConnValue::Finite(-1);
        assert_eq!(c.exact(&c4, f, 2).unwrap().0, Some(ConnValue::Finite(-1)));
        assert_eq!(c.at_least(&c4, f, ConnValue::Finite(0)).unwrap(), Decision::No);
        // I(C5) is a circle: conn = 0, above the floor, certified by ψ
        let c5 = SimpleGraph::from_local(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(c.exact(&c5, f, 3).unwrap().0, Some(ConnValue::Finite(0)));
        let two = SimpleGraph::from_local(2, &[]).unwrap();
        assert_eq!(c.at_least(&two, f, ConnValue::Infinite).unwrap(), Decision::Yes);
    }
}
