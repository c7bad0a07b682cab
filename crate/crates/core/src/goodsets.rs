//! Decent, equineighbored and good vertex sets of a bipartite multigraph.
//!
//! Subsets are given by class-local indices on one side. Neighbourhoods are
//! vertex sets, so parallel edges count once.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use thiserror::Error;

use crate::graphs::{line_graph, max_matching_bipartite, max_matching_on, BipartiteMultigraph, GraphError, Matching, Side};
use crate::meshulam::{Certifier, Decision, MeshulamError};
use crate::topology::{ceil_half_minus_two, ConnValue, ConnWindow};

/// Default class-size guard for subset enumeration.
pub const SUBSET_GUARD: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSubset {
    pub side: Side,
    /// Sorted class-local indices.
    pub vertices: Vec<usize>,
}

impl VertexSubset {
    pub fn new(side: Side, mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self { side, vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Bit `i` of `mask` selects class-local vertex `i`.
    pub fn from_mask(side: Side, mask: u32) -> Self {
        Self { side, vertices: crate::bits::bits(mask as u128).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GoodSetError {
    #[error("vertex {index} is not in a class of size {size}")]
    BadSubset { index: usize, size: usize },
    #[error("class of size {size} exceeds the subset guard {limit}")]
    Guard { size: usize, limit: usize },
    #[error("the matching is not perfect")]
    NotPerfect,
    #[error("the matching is not maximum")]
    NotMaximum,
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Meshulam(#[from] MeshulamError),
}

fn check(g: &BipartiteMultigraph, x: &VertexSubset) -> Result<(), GoodSetError> {
    let size = g.class_size(x.side);
    match x.vertices.iter().find(|&&i| i >= size) {
        Some(&index) => Err(GoodSetError::BadSubset { index, size }),
        None => Ok(()),
    }
}

/// `N(X)` as class-local indices of the other side.
pub fn neighborhood(g: &BipartiteMultigraph, x: &VertexSubset) -> Result<Vec<usize>, GoodSetError> {
    check(g, x)?;
    let mut out = BTreeSet::new();
    for &i in &x.vertices {
        for w in g.neighbors(g.vertex(x.side, i)) {
            out.insert(g.locate(w).1);
        }
    }
    Ok(out.into_iter().collect())
}

/// Whether the edge between unified vertices `u` and `v` lies in some
/// maximum matching: `ν(G - u - v) = ν(G) - 1`.
fn in_some_maximum(g: &BipartiteMultigraph, nu: usize, u: usize, v: usize) -> bool {
    let rest = max_matching_on(g, |e| {
        let [a, b] = g.endpoints(e);
        a != u && a != v && b != u && b != v
    });
    rest.len() + 1 == nu
}

/// The three decency conditions, in order.
pub fn decent_conditions(g: &BipartiteMultigraph, x: &VertexSubset) -> Result<[bool; 3], GoodSetError> {
    let n = neighborhood(g, x)?;
    let nu = max_matching_bipartite(g).len();
    let c1 = n.len() <= x.len();
    let c2 = nu == n.len() + g.class_size(x.side) - x.len();
    let mut c3 = true;
    'outer: for &i in &x.vertices {
        let u = g.vertex(x.side, i);
        for w in g.neighbors(u) {
            if !in_some_maximum(g, nu, u, w) {
                c3 = false;
                break 'outer;
            }
        }
    }
    Ok([c1, c2, c3])
}

pub fn is_decent(g: &BipartiteMultigraph, x: &VertexSubset) -> Result<bool, GoodSetError> {
    Ok(decent_conditions(g, x)?.iter().all(|&c| c))
}

pub fn is_equineighbored(g: &BipartiteMultigraph, x: &VertexSubset) -> Result<bool, GoodSetError> {
    Ok(!x.is_empty() && neighborhood(g, x)?.len() == x.len())
}

/// Vertices of `x0.side` reachable from `x0` on `M`-alternating paths that
/// start with a non-matching edge, including `x0` itself.
pub fn alternating_closure(g: &BipartiteMultigraph, m: &Matching, x0: &VertexSubset) -> Result<VertexSubset, GoodSetError> {
    check(g, x0)?;
    let partner = m.partner_edges(g);
    let mut seen = alloc::vec![false; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &i in &x0.vertices {
        let v = g.vertex(x0.side, i);
        seen[v] = true;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for &h in g.incident(v) {
            if m.contains(h) {
                continue;
            }
            let y = g.opposite(h, v);
            if seen[y] {
                continue;
            }
            seen[y] = true;
            if let Some(p) = partner[y] {
                let x = g.opposite(p, y);
                if !seen[x] {
                    seen[x] = true;
                    queue.push_back(x);
                }
            }
        }
    }
    let side = x0.side;
    let vs = (0..g.class_size(side)).filter(|&i| seen[g.vertex(side, i)]).collect();
    Ok(VertexSubset::new(side, vs))
}

/// The set built from the `M`-unsaturated vertices `X0` of `side` by
/// alternating reachability. Returns `(X, X0)`.
pub fn decent_from_matching(g: &BipartiteMultigraph, m: &Matching, side: Side) -> Result<(VertexSubset, VertexSubset), GoodSetError> {
    if m.len() != max_matching_bipartite(g).len() {
        return Err(GoodSetError::NotMaximum);
    }
    let partner = m.partner_edges(g);
    let x0 = VertexSubset::new(side, (0..g.class_size(side)).filter(|&i| partner[g.vertex(side, i)].is_none()).collect());
    Ok((alternating_closure(g, m, &x0)?, x0))
}

/// Outcome of the closure construction under a perfect matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    /// `X0` was empty, so the closure is empty and not equineighbored.
    Empty,
    Set(VertexSubset),
}

/// Alternating closure of `x0` under a perfect matching `m`.
pub fn perfect_closure(g: &BipartiteMultigraph, m: &Matching, x0: &VertexSubset) -> Result<Closure, GoodSetError> {
    if 2 * m.len() != g.vertex_count() {
        return Err(GoodSetError::NotPerfect);
    }
    if x0.is_empty() {
        return Ok(Closure::Empty);
    }
    Ok(Closure::Set(alternating_closure(g, m, x0)?))
}

fn neighborhood_masks(g: &BipartiteMultigraph, side: Side) -> Vec<u128> {
    (0..g.class_size(side))
        .map(|i| g.neighbors(g.vertex(side, i)).into_iter().fold(0u128, |acc, w| acc | crate::bits::bit(g.locate(w).1)))
        .collect()
}

/// Equineighbored subsets of one side in increasing mask order, optionally
/// only the inclusion-minimal ones. The class must have at most `guard`
/// vertices and the other class at most 128.
pub fn equineighbored_sets(g: &BipartiteMultigraph, side: Side, minimal_only: bool, guard: usize) -> Result<Vec<VertexSubset>, GoodSetError> {
    let n = g.class_size(side);
    let limit = guard.min(24);
    if n > limit {
        return Err(GoodSetError::Guard { size: n, limit });
    }
    let other = g.class_size(side.other());
    if other > 128 {
        return Err(GoodSetError::Guard { size: other, limit: 128 });
    }
    let rows = neighborhood_masks(g, side);
    let full = 1usize << n;
    let mut nb = alloc::vec![0u128; full];
    let mut eq = alloc::vec![false; full];
    for s in 1..full {
        let low = s.trailing_zeros() as usize;
        nb[s] = nb[s & (s - 1)] | rows[low];
        eq[s] = nb[s].count_ones() == s.count_ones();
    }
    let mut out = Vec::new();
    if minimal_only {
        // any[s]: some nonempty subset of s is equineighbored
        let mut any = eq.clone();
        for i in 0..n {
            for s in 0..full {
                if s >> i & 1 == 1 && any[s ^ (1 << i)] {
                    any[s] = true;
                }
            }
        }
        for s in 1..full {
            if eq[s] && !(0..n).any(|i| s >> i & 1 == 1 && any[s ^ (1 << i)]) {
                out.push(VertexSubset::from_mask(side, s as u32));
            }
        }
    } else {
        out.extend((1..full).filter(|&s| eq[s]).map(|s| VertexSubset::from_mask(side, s as u32)));
    }
    Ok(out)
}

/// `G_y`: `G` minus the edges from `y` to the part of `x.side` outside `X`.
/// `y` is a class-local index on the other side. Also returns how many
/// edges were removed.
pub fn strip_outside(g: &BipartiteMultigraph, x: &VertexSubset, y: usize) -> (BipartiteMultigraph, usize) {
    let yv = g.vertex(x.side.other(), y);
    let inside = |v: usize| x.vertices.contains(&g.locate(v).1);
    let (h, kept) = g.filter_edges(|e| {
        let [a, b] = g.endpoints(e);
        let (here, there) = if a == yv { (a, b) } else { (b, a) };
        here != yv || inside(there)
    });
    let removed = g.edge_count() - kept.len();
    (h, removed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YCheck {
    /// Class-local index in `N(X)`.
    pub y: usize,
    pub removed_edges: usize,
    /// Homology window of `L(G_y)` scanned just past `conn(L(G))`.
    pub window: ConnWindow,
    /// Whether `conn(L(G_y)) > conn(L(G))`.
    pub increases: Decision,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Goodness {
    Good,
    NotGood,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodReport {
    pub subset: VertexSubset,
    pub decent: [bool; 3],
    /// `conn(L(G))` when certified.
    pub conn: Option<ConnValue>,
    pub checks: Vec<YCheck>,
    pub verdict: Goodness,
}

fn line_floor(g: &BipartiteMultigraph) -> ConnValue {
    ConnValue::Finite(ceil_half_minus_two(max_matching_bipartite(g).len()))
}

/// Certified `conn(L(G))`, scanning homology to `⌊ν/2⌋`.
pub fn line_conn(g: &BipartiteMultigraph, cert: &Certifier) -> Result<Option<ConnValue>, GoodSetError> {
    let nu = max_matching_bipartite(g).len();
    Ok(cert.exact(&line_graph(g), line_floor(g), (nu / 2) as i32)?.0)
}

/// Decides goodness: `X` must be nonempty and decent, and for every `y` in
/// `N(X)` the connectedness of `L(G_y)` must exceed that of `L(G)`.
pub fn is_good(g: &BipartiteMultigraph, x: &VertexSubset, cert: &Certifier) -> Result<GoodReport, GoodSetError> {
    let conn = line_conn(g, cert)?;
    is_good_with(g, x, cert, conn)
}

fn is_good_with(g: &BipartiteMultigraph, x: &VertexSubset, cert: &Certifier, conn: Option<ConnValue>) -> Result<GoodReport, GoodSetError> {
    let decent = decent_conditions(g, x)?;
    let mut report = GoodReport { subset: x.clone(), decent, conn, checks: Vec::new(), verdict: Goodness::NotGood };
    if x.is_empty() || !decent.iter().all(|&c| c) {
        return Ok(report);
    }
    let Some(c) = conn else {
        report.verdict = Goodness::Inconclusive;
        return Ok(report);
    };
    if c.is_infinite() {
        return Ok(report);
    }
    let target = c.plus(1);
    let mut all = Decision::Yes;
    for y in neighborhood(g, x)? {
        let (gy, removed) = strip_outside(g, x, y);
        let (increases, window) = if removed == 0 {
            (Decision::No, ConnWindow::Exact(c))
        } else {
            let l = line_graph(&gy);
            let d = cert.at_least(&l, line_floor(&gy), target)?;
            let cap = match target {
                ConnValue::Finite(v) => v,
                ConnValue::Infinite => 0,
            };
            (d, crate::topology::independence_conn_h(&l, cap, Default::default()).map_err(MeshulamError::from)?)
        };
        report.checks.push(YCheck { y, removed_edges: removed, window, increases });
        match increases {
            Decision::No => {
                all = Decision::No;
                break;
            }
            Decision::Inconclusive => all = Decision::Inconclusive,
            Decision::Yes => {}
        }
    }
    report.verdict = match all {
        Decision::Yes => Goodness::Good,
        Decision::No => Goodness::NotGood,
        Decision::Inconclusive => Goodness::Inconclusive,
    };
    if report.verdict == Goodness::Good {
        debug_assert!(report.checks.iter().all(|c| c.removed_edges > 0));
    }
    Ok(report)
}

/// What holds when no good set exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoGoodSetFacts {
    pub perfect_matching: bool,
    /// Every minimal equineighbored set on either side has two vertices,
    /// both adjacent to both of its two neighbours.
    pub minimal_sets_are_c4: bool,
    /// Minimal equineighbored sets that are not C4s.
    pub offenders: Vec<VertexSubset>,
}

pub fn no_good_set_facts(g: &BipartiteMultigraph, guard: usize) -> Result<NoGoodSetFacts, GoodSetError> {
    let perfect = 2 * max_matching_bipartite(g).len() == g.vertex_count();
    let mut offenders = Vec::new();
    for side in [Side::A, Side::B] {
        for x in equineighbored_sets(g, side, true, guard)? {
            let n = neighborhood(g, &x)?;
            let c4 = x.len() == 2
                && n.len() == 2
                && x.vertices.iter().all(|&i| g.neighbors(g.vertex(side, i)).len() == 2);
            if !c4 {
                offenders.push(x);
            }
        }
    }
    Ok(NoGoodSetFacts { perfect_matching: perfect, minimal_sets_are_c4: offenders.is_empty(), offenders })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoodSetSearch {
    Found(GoodReport),
    /// Every candidate was decided not good.
    None { tested: usize, facts: NoGoodSetFacts },
    /// No good set was certified but some candidates were undecided.
    Inconclusive { tested: usize, undecided: Vec<VertexSubset> },
}

/// Looks for a good set on either side. Requires `ν = 2k` and a certified
/// `conn(L(G)) = k - 2`. Candidates are tried as: alternating closures of
/// unsaturated vertices, minimal equineighbored sets, then every nonempty
/// subset by increasing size.
pub fn find_good_set(g: &BipartiteMultigraph, cert: &Certifier, guard: usize) -> Result<GoodSetSearch, GoodSetError> {
    let m = max_matching_bipartite(g);
    if m.len() % 2 == 1 {
        return Err(GoodSetError::Precondition("matching number is odd"));
    }
    let k = (m.len() / 2) as i32;
    let conn = line_conn(g, cert)?;
    if conn != Some(ConnValue::Finite(k - 2)) {
        return Err(GoodSetError::Precondition("conn(L(G)) is not certified to equal nu/2 - 2"));
    }
    for side in [Side::A, Side::B] {
        let n = g.class_size(side);
        if n > guard {
            return Err(GoodSetError::Guard { size: n, limit: guard });
        }
    }
    let mut tried: BTreeSet<VertexSubset> = BTreeSet::new();
    let mut undecided = Vec::new();
    let mut candidates: Vec<VertexSubset> = Vec::new();
    for side in [Side::B, Side::A] {
        candidates.push(decent_from_matching(g, &m, side)?.0);
    }
    for side in [Side::B, Side::A] {
        candidates.extend(equineighbored_sets(g, side, true, guard)?);
    }
    let mut by_size: Vec<VertexSubset> = Vec::new();
    for side in [Side::B, Side::A] {
        let n = g.class_size(side);
        by_size.extend((1u32..1 << n).map(|s| VertexSubset::from_mask(side, s)));
    }
    by_size.sort_by_key(|x| x.len());
    candidates.extend(by_size);
    for x in candidates {
        if x.is_empty() || !tried.insert(x.clone()) {
            continue;
        }
        let r = is_good_with(g, &x, cert, conn)?;
        match r.verdict {
            Goodness::Good => return Ok(GoodSetSearch::Found(r)),
            Goodness::Inconclusive => undecided.push(x),
            Goodness::NotGood => {}
        }
    }
    let tested = tried.len();
    if undecided.is_empty() {
        Ok(GoodSetSearch::None { tested, facts: no_good_set_facts(g, guard)? })
    } else {
        Ok(GoodSetSearch::Inconclusive { tested, undecided })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn bg(a: usize, b: usize, e: &[(usize, usize)]) -> BipartiteMultigraph {
        BipartiteMultigraph::from_indices(a, b, e).unwrap()
    }

    #[test]
    fn decency_basics() {
        let pm = bg(2, 2, &[(0, 0), (1, 1)]);
        assert!(is_decent(&pm, &VertexSubset::new(Side::B, vec![0, 1])).unwrap());
        assert!(is_decent(&pm, &VertexSubset::new(Side::B, vec![])).unwrap());
        let star = bg(1, 3, &[(0, 0), (0, 1), (0, 2)]);
        let m = max_matching_bipartite(&star);
        let (x, x0) = decent_from_matching(&star, &m, Side::B).unwrap();
        assert_eq!(x.vertices, vec![0, 1, 2]);
        assert_eq!(x0.len(), 2);
        assert_eq!(neighborhood(&star, &x).unwrap(), vec![0]);
        assert!(is_decent(&star, &x).unwrap());
        assert!(matches!(is_decent(&star, &VertexSubset::new(Side::A, vec![3])), Err(GoodSetError::BadSubset { .. })));
    }

    #[test]
    fn equineighbored_examples() {
        let c4 = bg(2, 2, &[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let min = equineighbored_sets(&c4, Side::B, true, 16).unwrap();
        assert_eq!(min, vec![VertexSubset::new(Side::B, vec![0, 1])]);
        let pm = bg(2, 2, &[(0, 0), (1, 1)]);
        assert_eq!(equineighbored_sets(&pm, Side::B, true, 16).unwrap().len(), 2);
        assert_eq!(equineighbored_sets(&pm, Side::B, false, 16).unwrap().len(), 3);
        let m = max_matching_bipartite(&pm);
        assert_eq!(perfect_closure(&pm, &m, &VertexSubset::new(Side::B, vec![])).unwrap(), Closure::Empty);
    }

    #[test]
    fn c4_has_no_good_set() {
        let c4 = bg(2, 2, &[(0, 0), (1, 0), (1, 1), (0, 1)]);
        match find_good_set(&c4, &Certifier::default(), 16).unwrap() {
            GoodSetSearch::None { facts, .. } => {
                assert!(facts.perfect_matching);
                assert!(facts.minimal_sets_are_c4);
            }
            other => panic!("{other:?}"),
        }
        let r = is_good(&c4, &VertexSubset::new(Side::B, vec![]), &Certifier::default()).unwrap();
        assert_eq!(r.verdict, Goodness::NotGood);
    }
}
