//! Branch and bound for matchings and covers of small hypergraphs whose edges
//! are vertex masks.

use alloc::vec::Vec;

use crate::bits::{bit, bits};

/// Maximum set of pairwise disjoint edges; returns indices into `edges`.
pub fn max_packing(edges: &[u128]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..edges.len()).filter(|&i| edges[i] != 0).collect();
    order.sort_by_key(|&i| edges[i]);
    order.dedup_by_key(|i| edges[*i]);
    let mut best = Vec::new();
    let mut cur = Vec::new();
    pack(edges, &order, 0, &mut cur, &mut best);
    best.sort_unstable();
    best
}

fn pack(edges: &[u128], live: &[usize], used: u128, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
    let live: Vec<usize> = live.iter().copied().filter(|&i| edges[i] & used == 0).collect();
    if live.is_empty() {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        return;
    }
    let union = live.iter().fold(0u128, |m, &i| m | edges[i]);
    let min_size = live.iter().map(|&i| edges[i].count_ones()).min().unwrap_or(1).max(1);
    let bound = (live.len()).min((union.count_ones() / min_size) as usize);
    if cur.len() + bound <= best.len() {
        return;
    }
    let v = union.trailing_zeros() as usize;
    for &i in &live {
        if edges[i] & bit(v) != 0 {
            cur.push(i);
            pack(edges, &live, used | edges[i], cur, best);
            cur.pop();
        }
    }
    // v left unmatched
    pack(edges, &live, used | bit(v), cur, best);
}

/// Minimum vertex set meeting every edge; returns the vertex mask.
pub fn min_transversal(edges: &[u128]) -> u128 {
    let mut uniq: Vec<u128> = edges.iter().copied().filter(|&e| e != 0).collect();
    uniq.sort_unstable();
    uniq.dedup();
    let mut best = uniq.iter().fold(0u128, |m, &e| m | bit(e.trailing_zeros() as usize));
    cover(&uniq, 0, &mut best);
    best
}

fn cover(edges: &[u128], chosen: u128, best: &mut u128) {
    let Some(&first) = edges.iter().find(|&&e| e & chosen == 0) else {
        if chosen.count_ones() < best.count_ones() {
            *best = chosen;
        }
        return;
    };
    // disjoint uncovered edges need distinct cover vertices
    let mut used = 0u128;
    let mut lower = 0;
    for &e in edges {
        if e & chosen == 0 && e & used == 0 {
            used |= e;
            lower += 1;
        }
    }
    if chosen.count_ones() + lower >= best.count_ones() {
        return;
    }
    for v in bits(first) {
        cover(edges, chosen | bit(v), best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_nu(edges: &[u128]) -> usize {
        let n = edges.len();
        (0u32..1 << n)
            .filter(|s| {
                let mut used = 0u128;
                (0..n).filter(|i| s >> i & 1 == 1).all(|i| {
                    let ok = edges[i] & used == 0;
                    used |= edges[i];
                    ok
                })
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn brute_tau(edges: &[u128], nv: usize) -> u32 {
        (0u128..1 << nv).filter(|&c| edges.iter().all(|&e| e & c != 0)).map(u128::count_ones).min().unwrap()
    }

    #[test]
    fn agrees_with_brute_force() {
        // deterministic pseudo-random triples over 9 vertices
        let mut x = 0x2545f491u64;
        for _ in 0..200 {
            let mut edges = Vec::new();
            let m = (x % 9) as usize;
            for _ in 0..m {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                let (a, b, c) = ((x % 3) as usize, (x / 3 % 3) as usize, (x / 9 % 3) as usize);
                edges.push(bit(a) | bit(3 + b) | bit(6 + c));
            }
            x = x.wrapping_add(0x9e37);
            assert_eq!(max_packing(&edges).len(), brute_nu(&edges));
            assert_eq!(min_transversal(&edges).count_ones(), brute_tau(&edges, 9));
        }
    }
}
