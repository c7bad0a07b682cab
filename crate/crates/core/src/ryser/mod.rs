//! Ryser-extremal 3-partite 3-graphs: link connectedness, the subset bounds
//! on links, rainbow matchings and the deficiency version of the rainbow
//! matching bound.

mod fixtures;

pub use fixtures::{fixture, paired_matching, paired_triples, truncated_fano, Fixture, FIXTURE_NAMES};

use alloc::vec::Vec;
use thiserror::Error;

use crate::bits::bit;
use crate::graphs::{
    line_graph, link_graph, max_matching_bipartite, max_packing, vertex_cover_bipartite, BipartiteMultigraph, GraphError,
    LinkGraph, ThreePartiteHypergraph, DEFAULT_CLASS_GUARD,
};
use crate::meshulam::{Certifier, Decision, MeshulamError};
use crate::topology::{ceil_half_minus_two, independence_conn_h, ConnValue, ConnWindow, IndependenceOptions, TopologyError};

/// Largest class for the sweeps over all `S ⊆ V_i`.
pub const SUBSET_GUARD: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RyserError {
    #[error("class index must be 1, 2 or 3, got {0}")]
    BadClass(usize),
    #[error("class of size {size} exceeds the subset guard {limit}")]
    Guard { size: usize, limit: usize },
    #[error("the hypergraph is not Ryser-extremal (nu = {nu}, tau = {tau})")]
    NotExtremal { nu: usize, tau: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Meshulam(#[from] MeshulamError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// A bipartite multigraph whose edges carry colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredBipartiteGraph {
    pub base: BipartiteMultigraph,
    pub colors: Vec<usize>,
}

impl From<LinkGraph> for ColoredBipartiteGraph {
    fn from(l: LinkGraph) -> Self {
        Self { base: l.graph, colors: l.color }
    }
}

/// Largest matching with pairwise distinct colors. Colors are treated as
/// extra vertices, so this is a 3-set packing.
pub fn rainbow_matching_number(g: &ColoredBipartiteGraph) -> Result<usize, RyserError> {
    let n = g.base.vertex_count();
    let mut palette: Vec<usize> = g.colors.clone();
    palette.sort_unstable();
    palette.dedup();
    if n + palette.len() > 128 {
        return Err(RyserError::Guard { size: n + palette.len(), limit: 128 });
    }
    let masks: Vec<u128> = (0..g.base.edge_count())
        .map(|e| {
            let [a, b] = g.base.endpoints(e);
            let c = palette.binary_search(&g.colors[e]).expect("color is in the palette");
            bit(a) | bit(b) | bit(n + c)
        })
        .collect();
    Ok(max_packing(&masks).len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RyserNumbers {
    pub nu: usize,
    pub tau: usize,
}

impl RyserNumbers {
    pub fn is_extremal(self) -> bool {
        self.tau == 2 * self.nu
    }

    /// `τ ≤ 2ν`.
    pub fn tau_at_most_two_nu(self) -> bool {
        self.tau <= 2 * self.nu
    }
}

pub fn ryser_numbers(h: &ThreePartiteHypergraph) -> Result<RyserNumbers, RyserError> {
    Ok(RyserNumbers { nu: h.matching_number(DEFAULT_CLASS_GUARD)?, tau: h.vertex_cover_number(DEFAULT_CLASS_GUARD)? })
}

/// `τ(H) = 2ν(H)`.
pub fn is_ryser_extremal(h: &ThreePartiteHypergraph) -> Result<bool, RyserError> {
    let r = ryser_numbers(h)?;
    debug_assert!(r.tau_at_most_two_nu());
    Ok(r.is_extremal())
}

fn class_index(class: usize) -> Result<usize, RyserError> {
    if (1..=3).contains(&class) {
        Ok(class - 1)
    } else {
        Err(RyserError::BadClass(class))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    /// 1, 2 or 3.
    pub class: usize,
    pub link_nu: usize,
    /// `conn_H(I(L(link(H, V_i))))` scanned to `ν(H) - 1`.
    pub window: ConnWindow,
    /// Certified `conn` of the same complex, when available.
    pub conn: Option<ConnValue>,
    /// `conn = ν(H) - 2`, decided by homology or by certificates.
    pub conn_matches: Option<bool>,
    /// `ν(link) = τ(H)`.
    pub nu_matches: bool,
    /// `conn = ν(link)/2 - 2`.
    pub link_extremal: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalityReport {
    pub nu: usize,
    pub tau: usize,
    pub per_class: Vec<ClassReport>,
}

impl ExtremalityReport {
    /// No check failed (undecided checks are not failures).
    pub fn consistent(&self) -> bool {
        self.per_class.iter().all(|c| c.nu_matches && c.conn_matches != Some(false) && c.link_extremal != Some(false))
    }

    pub fn fully_certified(&self) -> bool {
        self.per_class.iter().all(|c| c.conn_matches == Some(true) && c.link_extremal == Some(true))
    }
}

/// Checks the link quantities of a Ryser-extremal 3-graph: each full link
/// has `ν(link) = τ(H)` and `conn(L(link)) = ν(H) - 2`.
pub fn verify_connoflink(h: &ThreePartiteHypergraph, cert: &Certifier) -> Result<ExtremalityReport, RyserError> {
    let r = ryser_numbers(h)?;
    if !r.is_extremal() {
        return Err(RyserError::NotExtremal { nu: r.nu, tau: r.tau });
    }
    let target = ConnValue::Finite(r.nu as i32 - 2);
    let mut per_class = Vec::new();
    for class in 1..=3 {
        let all: Vec<usize> = (0..h.class(class - 1).len()).collect();
        let link = link_graph(h, class, &all)?;
        let link_nu = max_matching_bipartite(&link.graph).len();
        let l = line_graph(&link.graph);
        let floor = ConnValue::Finite(ceil_half_minus_two(link_nu));
        let (conn, window) = cert.exact(&l, floor, r.nu as i32 - 1)?;
        let conn_matches = match conn {
            Some(c) => Some(c == target),
            None => window.at_most(target).and_then(|le| if le { None } else { Some(false) }),
        };
        let link_extremal = if link_nu % 2 == 1 {
            Some(false)
        } else {
            conn.map(|c| c == ConnValue::Finite(link_nu as i32 / 2 - 2))
        };
        per_class.push(ClassReport { class, link_nu, window, conn, conn_matches, nu_matches: link_nu == r.tau, link_extremal });
    }
    Ok(ExtremalityReport { nu: r.nu, tau: r.tau, per_class })
}

fn subset_of(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetBound {
    pub subset: Vec<usize>,
    pub link_nu: usize,
    pub window: ConnWindow,
    /// `conn_H ≥ (τ(H) - |V_i \ S|)/2 - 2`.
    pub lower_homology: Option<bool>,
    /// The same bound from `⌈ν(link)/2⌉ - 2`, a certified lower bound on conn.
    pub lower_certified: bool,
    /// `conn_H ≤ ν(H) - |V_i \ S| - 2`, which proves the upper inequality.
    pub upper_certified: Option<bool>,
    /// `|V_i \ S| + τ(link) ≥ τ(H)`.
    pub cover_inequality: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkBoundsReport {
    pub class: usize,
    pub nu: usize,
    pub tau: usize,
    pub subsets: Vec<SubsetBound>,
    /// Subsets certified to satisfy the upper inequality.
    pub upper_witnesses: Vec<Vec<usize>>,
    /// Every witness has `|S| ≥ |V_i| - (2ν - τ)`.
    pub size_bound_holds: bool,
}

impl LinkBoundsReport {
    pub fn violations(&self) -> usize {
        let per = self
            .subsets
            .iter()
            .filter(|s| s.lower_homology == Some(false) || !s.lower_certified || !s.cover_inequality)
            .count();
        per + usize::from(!self.size_bound_holds)
    }
}

/// Evaluates the lower and upper link bounds for every `S ⊆ V_i`.
pub fn verify_linkconn_bounds(h: &ThreePartiteHypergraph, class: usize) -> Result<LinkBoundsReport, RyserError> {
    let i = class_index(class)?;
    let n = h.class(i).len();
    if n > SUBSET_GUARD {
        return Err(RyserError::Guard { size: n, limit: SUBSET_GUARD });
    }
    let r = ryser_numbers(h)?;
    let (nu, tau) = (r.nu as i32, r.tau as i32);
    let mut subsets = Vec::new();
    let mut upper_witnesses = Vec::new();
    for mask in 0u32..1 << n {
        let s = subset_of(mask, n);
        let outside = (n - s.len()) as i32;
        let link = link_graph(h, class, &s)?;
        let link_nu = max_matching_bipartite(&link.graph).len();
        let link_tau = vertex_cover_bipartite(&link.graph).len();
        // conn ≥ x for integral conn means conn ≥ ⌈x⌉
        let lower = ConnValue::Finite((tau - outside + 1).div_euclid(2) - 2);
        let upper = ConnValue::Finite(nu - outside - 2);
        let cap = match (lower, upper) {
            (ConnValue::Finite(a), ConnValue::Finite(b)) => a.max(b + 1).max(-1),
            _ => unreachable!(),
        };
        let l = line_graph(&link.graph);
        let window = independence_conn_h(&l, cap, IndependenceOptions::default())?;
        let floor = ConnValue::Finite(ceil_half_minus_two(link_nu));
        let upper_certified = window.at_most(upper);
        if upper_certified == Some(true) {
            upper_witnesses.push(s.clone());
        }
        subsets.push(SubsetBound {
            subset: s,
            link_nu,
            window,
            lower_homology: window.at_least(lower),
            lower_certified: floor >= lower,
            upper_certified,
            cover_inequality: outside + link_tau as i32 >= tau,
        });
    }
    let size_bound_holds = upper_witnesses.iter().all(|s| s.len() as i32 >= n as i32 - (2 * nu - tau));
    Ok(LinkBoundsReport { class, nu: r.nu, tau: r.tau, subsets, upper_witnesses, size_bound_holds })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeficiencyHypothesis {
    /// The hypothesis was certified for every subset.
    Holds,
    /// Some subset has `conn_H` below the threshold.
    Fails,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficiencyReport {
    pub class: usize,
    pub d: usize,
    pub hypothesis: DeficiencyHypothesis,
    /// Per subset: whether `conn(L(link(H, S))) ≥ |S| - d - 2` was decided.
    pub per_subset: Vec<(Vec<usize>, Decision)>,
    pub nu: usize,
    /// `ν(H) ≥ |V_i| - d`; `None` unless the hypothesis holds.
    pub conclusion: Option<bool>,
}

/// Checks the deficiency bound: if every `S ⊆ V_i` has
/// `conn(L(link(H, S))) ≥ |S| - d - 2` then `ν(H) ≥ |V_i| - d`. Only
/// certified lower bounds establish the hypothesis.
pub fn verify_deficiency_bound(h: &ThreePartiteHypergraph, class: usize, d: usize, cert: &Certifier) -> Result<DeficiencyReport, RyserError> {
    let i = class_index(class)?;
    let n = h.class(i).len();
    if n > SUBSET_GUARD {
        return Err(RyserError::Guard { size: n, limit: SUBSET_GUARD });
    }
    let mut per_subset = Vec::new();
    let mut hypothesis = DeficiencyHypothesis::Holds;
    for mask in 0u32..1 << n {
        let s = subset_of(mask, n);
        let t = ConnValue::Finite(s.len() as i32 - d as i32 - 2);
        let link = link_graph(h, class, &s)?;
        let floor = ConnValue::Finite(ceil_half_minus_two(max_matching_bipartite(&link.graph).len()));
        let dec = cert.at_least(&line_graph(&link.graph), floor, t)?;
        match dec {
            Decision::No => hypothesis = DeficiencyHypothesis::Fails,
            Decision::Inconclusive if hypothesis == DeficiencyHypothesis::Holds => hypothesis = DeficiencyHypothesis::Inconclusive,
            _ => {}
        }
        per_subset.push((s, dec));
    }
    let nu = h.matching_number(DEFAULT_CLASS_GUARD)?;
    let conclusion = (hypothesis == DeficiencyHypothesis::Holds).then_some(nu + d >= n);
    Ok(DeficiencyReport { class, d, hypothesis, per_subset, nu, conclusion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn truncated_fano_numbers() {
        let h = truncated_fano();
        assert_eq!(ryser_numbers(&h).unwrap(), RyserNumbers { nu: 1, tau: 2 });
        let rep = verify_connoflink(&h, &Certifier::default()).unwrap();
        assert!(rep.fully_certified(), "{rep:?}");
        for c in &rep.per_class {
            assert_eq!(c.link_nu, 2);
            assert_eq!(c.conn, Some(ConnValue::Finite(-1)));
        }
        let link = link_graph(&h, 1, &[0, 1]).unwrap();
        assert_eq!(rainbow_matching_number(&link.into()).unwrap(), 1);
    }

    #[test]
    fn single_triple_bounds() {
        let h = ThreePartiteHypergraph::from_indices([1, 1, 1], &[[0, 0, 0]]).unwrap();
        assert!(!is_ryser_extremal(&h).unwrap());
        assert!(matches!(verify_connoflink(&h, &Certifier::default()), Err(RyserError::NotExtremal { .. })));
        let rep = verify_linkconn_bounds(&h, 1).unwrap();
        assert_eq!(rep.upper_witnesses, vec![Vec::<usize>::new()]);
        assert_eq!(rep.violations(), 0);
    }

    #[test]
    fn rainbow_extremes() {
        let base = BipartiteMultigraph::from_indices(2, 2, &[(0, 0), (1, 1)]).unwrap();
        let same = ColoredBipartiteGraph { base: base.clone(), colors: vec![7, 7] };
        assert_eq!(rainbow_matching_number(&same).unwrap(), 1);
        let distinct = ColoredBipartiteGraph { base, colors: vec![0, 1] };
        assert_eq!(rainbow_matching_number(&distinct).unwrap(), 2);
    }

    #[test]
    fn deficiency_on_disjoint_triples() {
        let h = ThreePartiteHypergraph::from_indices([3, 3, 3], &[[0, 0, 0], [1, 1, 1], [2, 2, 2]]).unwrap();
        let rep = verify_deficiency_bound(&h, 1, 0, &Certifier::default()).unwrap();
        assert_eq!(rep.hypothesis, DeficiencyHypothesis::Holds);
        assert_eq!(rep.conclusion, Some(true));
        let vac = verify_deficiency_bound(&h, 1, 3, &Certifier::default()).unwrap();
        assert_eq!(vac.conclusion, Some(true));
    }
}
