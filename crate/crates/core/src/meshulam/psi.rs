//! ψ(∅) = -2; ψ = ∞ for a nonempty edgeless graph; otherwise
//! ψ(G) = max over edges e of min{ψ(G - e), ψ(G ⋇ e) + 1}.
//!
//! The search answers threshold questions "ψ(G) >= t" and memoizes bounds per
//! state. A state is a vertex set together with its current edge set (edge
//! deletions change the graph without changing the vertices). Shortcuts used,
//! each a consequence of the definition: any nonempty graph has ψ >= -1; an
//! isolated vertex forces ψ = ∞; a finite ψ is at most ⌊n/2⌋ - 2.

use alloc::vec::Vec;
use hashbrown::HashMap;

use super::MeshulamError;
use crate::bits::{bit, bits, low_mask};
use crate::graphs::SimpleGraph;
use crate::topology::{independence::conn_h_masks, ConnValue, IndependenceOptions};

const INF: i32 = i32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PsiConfig {
    /// Maximum number of search nodes before giving up.
    pub budget: u64,
    /// Refute thresholds above `conn_H(I(state))`. This uses `ψ <= conn_H`,
    /// so leave it off when ψ is being compared against homology.
    pub homology_prune: bool,
}

impl Default for PsiConfig {
    fn default() -> Self {
        Self { budget: 2_000_000, homology_prune: false }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PsiStats {
    pub nodes: u64,
    pub memo_hits: u64,
}

/// Exact ψ(G).
pub fn psi(g: &SimpleGraph, cfg: PsiConfig) -> Result<(ConnValue, PsiStats), MeshulamError> {
    let mut s = Solver::new(g, cfg)?;
    let alive = low_mask(g.vertex_count());
    let v = s.exact(&s.root.clone(), alive)?;
    Ok((to_value(v), s.stats))
}

/// Decides ψ(G) >= t.
pub fn psi_at_least(g: &SimpleGraph, t: ConnValue, cfg: PsiConfig) -> Result<(bool, PsiStats), MeshulamError> {
    let mut s = Solver::new(g, cfg)?;
    let alive = low_mask(g.vertex_count());
    let t = match t {
        ConnValue::Finite(v) => v,
        ConnValue::Infinite => INF,
    };
    let b = s.query(&s.root.clone(), alive, t)?;
    Ok((b, s.stats))
}

fn to_value(v: i32) -> ConnValue {
    if v == INF {
        ConnValue::Infinite
    } else {
        ConnValue::Finite(v)
    }
}

struct Solver {
    root: Vec<u128>,
    cfg: PsiConfig,
    stats: PsiStats,
    memo: HashMap<Vec<u128>, (i32, i32)>,
}

impl Solver {
    fn new(g: &SimpleGraph, cfg: PsiConfig) -> Result<Self, MeshulamError> {
        let root = g.masks().map_err(|_| MeshulamError::TooLarge(g.vertex_count()))?;
        Ok(Self { root, cfg, stats: PsiStats::default(), memo: HashMap::new() })
    }

    fn exact(&mut self, adj: &[u128], alive: u128) -> Result<i32, MeshulamError> {
        if alive == 0 {
            return Ok(-2);
        }
        let top = max_finite(alive);
        let mut t = -1;
        while t <= top {
            if !self.query(adj, alive, t)? {
                return Ok(t - 1);
            }
            t += 1;
        }
        Ok(if self.query(adj, alive, INF)? { INF } else { top })
    }

    fn query(&mut self, adj: &[u128], alive: u128, t: i32) -> Result<bool, MeshulamError> {
        if t <= -2 {
            return Ok(true);
        }
        self.stats.nodes += 1;
        if self.stats.nodes > self.cfg.budget {
            return Err(MeshulamError::Budget { nodes: self.stats.nodes });
        }
        if alive == 0 {
            return Ok(false);
        }
        if t == -1 || bits(alive).any(|v| adj[v] & alive == 0) {
            return Ok(true);
        }
        let top = max_finite(alive);
        let t = if t > top { INF } else { t };

        let mut key: Vec<u128> = bits(alive).map(|v| adj[v] & alive).collect();
        key.push(alive);
        if let Some(&(lo, hi)) = self.memo.get(&key) {
            if lo >= t {
                self.stats.memo_hits += 1;
                return Ok(true);
            }
            if hi < t {
                self.stats.memo_hits += 1;
                return Ok(false);
            }
        }
        if self.cfg.homology_prune && self.refuted_by_homology(adj, alive, t, top) {
            self.record(key, None, Some(if t == INF { top } else { t - 1 }));
            return Ok(false);
        }

        let mut edges: Vec<(u32, usize, usize)> = Vec::new();
        for u in bits(alive) {
            for v in bits(adj[u] & alive & !low_mask(u + 1)) {
                let d = (adj[u] & alive).count_ones() + (adj[v] & alive).count_ones();
                edges.push((u32::MAX - d, u, v));
            }
        }
        edges.sort_unstable();
        let t_star = if t == INF { INF } else { t - 1 };
        for &(_, u, v) in &edges {
            let closed = (adj[u] | adj[v] | bit(u) | bit(v)) & alive;
            if !self.query(adj, alive & !closed, t_star)? {
                continue;
            }
            let mut minus = adj.to_vec();
            minus[u] &= !bit(v);
            minus[v] &= !bit(u);
            if self.query(&minus, alive, t)? {
                self.record(key, Some(t), None);
                return Ok(true);
            }
        }
        self.record(key, None, Some(if t == INF { top } else { t - 1 }));
        Ok(false)
    }

    fn refuted_by_homology(&self, adj: &[u128], alive: u128, t: i32, top: i32) -> bool {
        let cap = if t == INF { top + 1 } else { t };
        match conn_h_masks(adj, alive, cap, IndependenceOptions::default()) {
            Ok(w) => match t {
                INF => w.exact().is_some_and(|v| !v.is_infinite()),
                _ => w.at_most(ConnValue::Finite(t - 1)) == Some(true),
            },
            Err(_) => false,
        }
    }

    fn record(&mut self, key: Vec<u128>, lo: Option<i32>, hi: Option<i32>) {
        let e = self.memo.entry(key).or_insert((-2, INF));
        if let Some(l) = lo {
            e.0 = e.0.max(l);
        }
        if let Some(h) = hi {
            e.1 = e.1.min(h);
        }
    }
}

fn max_finite(alive: u128) -> i32 {
    (alive.count_ones() / 2) as i32 - 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use ConnValue::*;

    fn cycle(n: usize) -> SimpleGraph {
        let e: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::from_local(n, &e).unwrap()
    }

    #[test]
    fn small_values() {
        let cfg = PsiConfig::default();
        assert_eq!(psi(&SimpleGraph::from_local(0, &[]).unwrap(), cfg).unwrap().0, Finite(-2));
        assert_eq!(psi(&SimpleGraph::from_local(1, &[]).unwrap(), cfg).unwrap().0, Infinite);
        assert_eq!(psi(&SimpleGraph::from_local(2, &[(0, 1)]).unwrap(), cfg).unwrap().0, Finite(-1));
        assert_eq!(psi(&cycle(4), cfg).unwrap().0, Finite(-1));
        assert_eq!(psi(&cycle(5), cfg).unwrap().0, Finite(0));
    }

    #[test]
    fn budget_is_reported() {
        let cfg = PsiConfig { budget: 3, homology_prune: false };
        assert!(matches!(psi(&cycle(9), cfg), Err(MeshulamError::Budget { .. })));
    }
}
