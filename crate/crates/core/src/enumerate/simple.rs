use alloc::vec::Vec;
use hashbrown::HashSet;

use super::EnumError;
use crate::graphs::SimpleGraph;

/// Largest vertex count for [`enumerate_graphs`].
pub const GRAPH_GUARD: usize = 10;

/// Bit of pair `(i, j)`, `i < j`, in a code for `n` vertices. The first
/// pair is the most significant bit.
fn pair_bit(n: usize, i: usize, j: usize) -> u64 {
    let idx = i * (2 * n - i - 1) / 2 + (j - i - 1);
    let total = n * (n - 1) / 2;
    1u64 << (total - 1 - idx)
}

struct Canon<'a> {
    n: usize,
    adj: &'a [u16],
    best: Option<u64>,
}

impl Canon<'_> {
    /// Splits cells by neighbour counts into every cell until stable.
    /// Cell order depends only on the previous order and the counts.
    fn refine(&self, mut cells: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
        loop {
            let masks: Vec<u16> = cells.iter().map(|c| c.iter().fold(0u16, |m, &v| m | 1 << v)).collect();
            let mut next: Vec<Vec<u8>> = Vec::with_capacity(self.n);
            for c in &cells {
                if c.len() == 1 {
                    next.push(c.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u8>, u8)> =
                    c.iter().map(|&v| (masks.iter().map(|&m| (self.adj[v as usize] & m).count_ones() as u8).collect(), v)).collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|k| k.1).collect());
                        start = i;
                    }
                }
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn search(&mut self, cells: Vec<Vec<u8>>) {
        let cells = self.refine(cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0] as usize).collect();
            let mut code = 0u64;
            for i in 0..self.n {
                for j in i + 1..self.n {
                    if self.adj[order[i]] >> order[j] & 1 == 1 {
                        code |= pair_bit(self.n, i, j);
                    }
                }
            }
            if self.best.is_none_or(|b| code > b) {
                self.best = Some(code);
            }
            return;
        };
        // swapping two twins is an automorphism fixing everything chosen so far
        let cell = &cells[target];
        let mut tried: Vec<u8> = Vec::new();
        for &v in cell {
            let twin = tried.iter().any(|&u| {
                let (nu, nv) = (self.adj[u as usize] & !(1 << v), self.adj[v as usize] & !(1 << u));
                nu == nv
            });
            if twin {
                continue;
            }
            tried.push(v);
            let mut next = cells.clone();
            let rest: Vec<u8> = cell.iter().copied().filter(|&x| x != v).collect();
            next.splice(target..=target, [alloc::vec![v], rest]);
            self.search(next);
        }
    }
}

/// Maximum adjacency code over all labelings of a graph on `n ≤ 11`
/// vertices given by adjacency masks. Isomorphic graphs get equal codes.
pub fn canonical_code(n: usize, adj: &[u16]) -> u64 {
    if n <= 1 {
        return 0;
    }
    let mut c = Canon { n, adj, best: None };
    c.search(alloc::vec![(0..n as u8).collect()]);
    c.best.expect("search reaches a leaf")
}

/// The graph on `0..n` whose code is `code`.
pub fn graph_from_code(n: usize, code: u64) -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if code & pair_bit(n, i, j) != 0 {
                edges.push((i, j));
            }
        }
    }
    SimpleGraph::from_local(n, &edges).expect("valid pairs")
}

/// Canonical codes of all graphs on exactly `n` vertices, sorted. Built by
/// adding a vertex with every possible neighbourhood to each graph on
/// `n - 1` vertices.
pub fn enumerate_graphs(n: usize) -> Result<Vec<u64>, EnumError> {
    if n > GRAPH_GUARD {
        return Err(EnumError::Guard { what: "vertex count", size: n, limit: GRAPH_GUARD });
    }
    let mut level: Vec<u64> = alloc::vec![0];
    for k in 2..=n {
        let mut seen: HashSet<u64> = HashSet::new();
        for &code in &level {
            let base = graph_from_code(k - 1, code);
            let mut adj: Vec<u16> = (0..k - 1).map(|v| base.local_neighbors(v).iter().fold(0u16, |m, &u| m | 1 << u)).collect();
            adj.push(0);
            for s in 0u16..1 << (k - 1) {
                adj[k - 1] = s;
                for v in 0..k - 1 {
                    adj[v] = (adj[v] & !(1 << (k - 1))) | (((s >> v) & 1) << (k - 1));
                }
                seen.insert(canonical_code(k, &adj));
            }
        }
        level = seen.into_iter().collect();
        level.sort_unstable();
    }
    if n == 0 {
        return Ok(alloc::vec![0]);
    }
    Ok(level)
}
