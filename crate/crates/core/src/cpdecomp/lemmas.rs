//! Checkers for the structural facts about M-reduced line-graph subgraphs.
//! Each returns the list of counterexamples found; an empty list means the
//! statement holds on the given input.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{alternating_c4s, c4_switch, find_cp, reach, CpError};
use crate::graphs::{BipartiteMultigraph, EdgeId, Matching, Side, SimpleGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lemma {
    Degree,
    Alternating,
    C4Adjacency,
    LongFact,
    SwitchReach,
    UndoSwitch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaViolation {
    pub lemma: Lemma,
    pub edges: Vec<EdgeId>,
    pub detail: String,
}

fn violation(lemma: Lemma, edges: Vec<EdgeId>, detail: String) -> LemmaViolation {
    LemmaViolation { lemma, edges, detail }
}

/// M-edges J-adjacent to `e`.
fn m_neighbors(j: &SimpleGraph, m: &Matching, e: EdgeId) -> Vec<EdgeId> {
    j.neighbors(e).into_iter().filter(|&x| m.contains(x)).collect()
}

/// Every non-matching vertex of J has zero or two J-adjacent matching edges,
/// and is never J-adjacent to a matching edge it is parallel to.
pub fn degree_violations(g: &BipartiteMultigraph, j: &SimpleGraph, m: &Matching) -> Vec<LemmaViolation> {
    let mut out = Vec::new();
    for &e in j.vertex_ids() {
        if m.contains(e) {
            continue;
        }
        let nb = m_neighbors(j, m, e);
        if nb.len() == 1 {
            out.push(violation(Lemma::Degree, alloc::vec![e, nb[0]], format!("edge {e} has a single J-adjacent matching edge {}", nb[0])));
        }
        for &x in &nb {
            if g.parallel(e, x) {
                out.push(violation(Lemma::Degree, alloc::vec![e, x], format!("edge {e} is J-adjacent to its parallel matching edge {x}")));
            }
        }
    }
    out
}

struct Walker<'a> {
    g: &'a BipartiteMultigraph,
    j: &'a SimpleGraph,
    m: &'a Matching,
    on_path: Vec<bool>,
    path: Vec<EdgeId>,
    steps: usize,
    limit: usize,
    bad_pairs: BTreeSet<(EdgeId, EdgeId)>,
    bad_cycles: Vec<Vec<EdgeId>>,
}

impl Walker<'_> {
    fn tick(&mut self) -> Result<(), CpError> {
        self.steps += 1;
        if self.steps > self.limit {
            Err(CpError::Budget(self.limit))
        } else {
            Ok(())
        }
    }

    fn next_edges(&self, v: usize, want_m: bool) -> Vec<EdgeId> {
        self.g
            .incident(v)
            .iter()
            .copied()
            .filter(|&h| self.m.contains(h) == want_m && self.j.contains(h))
            .collect()
    }

    /// Extends an alternating path ending at `v`.
    fn path(&mut self, v: usize, want_m: bool) -> Result<(), CpError> {
        self.tick()?;
        for h in self.next_edges(v, want_m) {
            let w = self.g.opposite(h, v);
            if self.on_path[w] {
                continue;
            }
            if let Some(&last) = self.path.last() {
                if self.j.adjacent(last, h) {
                    self.bad_pairs.insert((last, h));
                }
            }
            self.on_path[w] = true;
            self.path.push(h);
            self.path(w, !want_m)?;
            self.path.pop();
            self.on_path[w] = false;
        }
        Ok(())
    }

    /// Alternating cycles through `s` whose other vertices exceed `s` and
    /// whose first edge is a matching edge.
    fn cycle(&mut self, s: usize, v: usize, want_m: bool) -> Result<(), CpError> {
        self.tick()?;
        for h in self.next_edges(v, want_m) {
            let w = self.g.opposite(h, v);
            if w == s && !want_m && self.path.len() >= 3 {
                self.path.push(h);
                let q = self.path.len();
                let adj = (0..q).filter(|&i| self.j.adjacent(self.path[i], self.path[(i + 1) % q])).count();
                if adj != 0 && adj != q {
                    self.bad_cycles.push(self.path.clone());
                }
                self.path.pop();
                continue;
            }
            if w <= s || self.on_path[w] {
                continue;
            }
            self.on_path[w] = true;
            self.path.push(h);
            self.cycle(s, w, !want_m)?;
            self.path.pop();
            self.on_path[w] = false;
        }
        Ok(())
    }
}

/// Enumerates alternating paths from exposed vertices and alternating
/// cycles inside `V(J)`. On a path no two consecutive edges may be
/// J-adjacent; on a cycle either every cyclically consecutive pair is
/// J-adjacent or none is. `limit` bounds the number of search steps.
pub fn alternating_violations(g: &BipartiteMultigraph, j: &SimpleGraph, m: &Matching, limit: usize) -> Result<Vec<LemmaViolation>, CpError> {
    let partner = m.partner_edges(g);
    let mut w = Walker {
        g,
        j,
        m,
        on_path: alloc::vec![false; g.vertex_count()],
        path: Vec::new(),
        steps: 0,
        limit,
        bad_pairs: BTreeSet::new(),
        bad_cycles: Vec::new(),
    };
    for v in 0..g.vertex_count() {
        if partner[v].is_some() {
            continue;
        }
        w.on_path[v] = true;
        w.path(v, false)?;
        w.on_path[v] = false;
    }
    for s in 0..g.vertex_count() {
        w.on_path[s] = true;
        w.cycle(s, s, true)?;
        w.on_path[s] = false;
    }
    let mut out: Vec<LemmaViolation> = w
        .bad_pairs
        .into_iter()
        .map(|(a, b)| violation(Lemma::Alternating, alloc::vec![a, b], format!("consecutive edges {a} and {b} of an alternating path from an exposed vertex are J-adjacent")))
        .collect();
    for c in w.bad_cycles {
        let detail = format!("alternating cycle {c:?} mixes J-adjacent and non-adjacent consecutive pairs");
        out.push(violation(Lemma::Alternating, c, detail));
    }
    Ok(out)
}

/// For every alternating 4-cycle with both non-matching edges in `V(J)`:
/// at each cycle vertex `y`, an edge `zy` leaving the cycle is J-adjacent
/// to the matching edge at `y` iff it is J-adjacent to the cycle's other
/// edge at `y`.
pub fn c4_adjacency_violations(g: &BipartiteMultigraph, j: &SimpleGraph, m: &Matching) -> Vec<LemmaViolation> {
    let mut out = Vec::new();
    for [m1, e, m2, f] in alternating_c4s(g, j, m) {
        let cycle = [m1, e, m2, f];
        let on_cycle: Vec<usize> = cycle.iter().flat_map(|&x| g.endpoints(x)).collect();
        for (mm, other) in [(m1, e), (m1, f), (m2, e), (m2, f)] {
            let y = g.common_vertex(mm, other).expect("cycle edges meet");
            for &z in g.incident(y) {
                if !j.contains(z) || on_cycle.contains(&g.opposite(z, y)) {
                    continue;
                }
                if j.adjacent(z, mm) != j.adjacent(z, other) {
                    out.push(violation(
                        Lemma::C4Adjacency,
                        alloc::vec![mm, other, z],
                        format!("edge {z} distinguishes {mm} and {other} on the 4-cycle {cycle:?}"),
                    ));
                }
            }
        }
    }
    out
}

/// For every J-edge `me` with `m ∈ M` and each `m*` in the reach of `(m, e)`
/// other than `m` and the second matching neighbour `m'` of `e`, some `g`
/// J-adjacent to `m*` meets it on the side away from `m ∩ e` and has no
/// other J-adjacent matching edge inside the reach.
pub fn long_fact_violations(g: &BipartiteMultigraph, j: &SimpleGraph, m: &Matching) -> Result<Vec<LemmaViolation>, CpError> {
    let mut out = Vec::new();
    for &m0 in m.edges() {
        for e in j.neighbors(m0) {
            if m.contains(e) || g.parallel(m0, e) {
                continue;
            }
            let others: Vec<EdgeId> = m_neighbors(j, m, e).into_iter().filter(|&x| x != m0).collect();
            if others.len() != 1 {
                continue;
            }
            let m1 = others[0];
            let side: Side = g.locate(g.common_vertex(m0, e).expect("J-adjacent edges meet")).0;
            let far = side.other();
            let p = reach(g, j, m, m0, e)?.reached;
            for &star in &p {
                if star == m0 || star == m1 {
                    continue;
                }
                let ok = j.neighbors(star).into_iter().any(|h| {
                    let Some(v) = g.common_vertex(star, h) else { return false };
                    g.locate(v).0 == far && m_neighbors(j, m, h).into_iter().all(|hat| hat == star || !p.contains(&hat))
                });
                if !ok {
                    out.push(violation(
                        Lemma::LongFact,
                        alloc::vec![m0, e, star],
                        format!("no escape edge for reach member {star} of seed ({m0}, {e})"),
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Reach sets transform under a C4-switch by swapping the cycle edges,
/// checked for each of the four rotations of every alternating 4-cycle.
pub fn switch_reach_violations(g: &BipartiteMultigraph, j: &SimpleGraph, m: &Matching) -> Result<Vec<LemmaViolation>, CpError> {
    let mut out = Vec::new();
    for cycle in alternating_c4s(g, j, m) {
        let mx = c4_switch(g, m, cycle)?;
        let [m1, e, m2, f] = cycle;
        for (a, b) in [(m1, e), (m1, f), (m2, e), (m2, f)] {
            let before = reach(g, j, m, a, b)?.reached;
            let after = reach(g, j, &mx, b, a)?.reached;
            let mut want: Vec<EdgeId> = before.iter().copied().filter(|&x| x != m1 && x != m2).chain([e, f]).collect();
            want.sort_unstable();
            if after != want {
                out.push(violation(
                    Lemma::SwitchReach,
                    alloc::vec![m1, e, m2, f],
                    format!("reach of ({b}, {a}) after switching is {after:?}, expected {want:?}"),
                ));
            }
        }
    }
    Ok(out)
}

/// A CP-decomposition exists for `M` iff it exists after any C4-switch.
pub fn undo_switch_violations(g: &BipartiteMultigraph, j: &SimpleGraph, m: &Matching) -> Result<Vec<LemmaViolation>, CpError> {
    let mut out = Vec::new();
    let base = find_cp(g, j, m)?.is_some();
    for cycle in alternating_c4s(g, j, m) {
        let mx = c4_switch(g, m, cycle)?;
        let after = find_cp(g, j, &mx)?.is_some();
        if after != base {
            out.push(violation(
                Lemma::UndoSwitch,
                cycle.to_vec(),
                format!("CP-decomposition exists before switching: {base}, after: {after}"),
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::line_graph;
    use alloc::vec;

    #[test]
    fn c4_is_clean() {
        let g = BipartiteMultigraph::from_indices(2, 2, &[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        let j = line_graph(&g);
        let m = Matching::new(&g, vec![0, 2]).unwrap();
        assert!(degree_violations(&g, &j, &m).is_empty());
        assert!(alternating_violations(&g, &j, &m, 1000).unwrap().is_empty());
        assert!(c4_adjacency_violations(&g, &j, &m).is_empty());
        assert!(long_fact_violations(&g, &j, &m).unwrap().is_empty());
        assert!(switch_reach_violations(&g, &j, &m).unwrap().is_empty());
        assert!(undo_switch_violations(&g, &j, &m).unwrap().is_empty());
    }

    #[test]
    fn detects_single_neighbour_and_path_adjacency() {
        // path a0-b0-a1 with M = {a0b0}: the edge a1b0 sees only one M-edge
        let g = BipartiteMultigraph::from_indices(2, 1, &[(0, 0), (1, 0)]).unwrap();
        let j = line_graph(&g);
        let m = Matching::new(&g, vec![0]).unwrap();
        assert_eq!(degree_violations(&g, &j, &m).len(), 1);
        let alt = alternating_violations(&g, &j, &m, 1000).unwrap();
        assert_eq!(alt[0].edges, vec![1, 0]);
    }

    #[test]
    fn budget_is_reported() {
        let g = BipartiteMultigraph::from_indices(2, 2, &[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        let j = line_graph(&g);
        let m = Matching::new(&g, vec![0, 2]).unwrap();
        assert_eq!(alternating_violations(&g, &j, &m, 1), Err(CpError::Budget(1)));
    }
}
