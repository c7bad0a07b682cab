use alloc::vec::Vec;
use itertools::Itertools;

use super::EnumError;
use crate::graphs::BipartiteMultigraph;

/// Upper limit on `|A| * |B| * max_mult`.
pub const BIPARTITE_GUARD: usize = 32;

/// Rows of a multiplicity matrix encoded base `mult + 1`, first column most
/// significant.
struct Codec {
    b: usize,
    base: u32,
    /// `table[p][r]`: row `r` with columns permuted by the `p`-th permutation.
    table: Vec<Vec<u32>>,
}

impl Codec {
    fn new(b: usize, mult: usize) -> Self {
        let base = mult as u32 + 1;
        let rows = base.pow(b as u32);
        let table = (0..b)
            .permutations(b)
            .map(|p| {
                (0..rows)
                    .map(|r| {
                        let d = Self::digits_of(r, b, base);
                        p.iter().fold(0, |acc, &j| acc * base + d[j])
                    })
                    .collect()
            })
            .collect();
        Self { b, base, table }
    }

    fn digits_of(mut r: u32, b: usize, base: u32) -> Vec<u32> {
        let mut d = alloc::vec![0; b];
        for j in (0..b).rev() {
            d[j] = r % base;
            r /= base;
        }
        d
    }

    fn digits(&self, r: u32) -> Vec<u32> {
        Self::digits_of(r, self.b, self.base)
    }

    fn encode(&self, row: &[u32]) -> u32 {
        row.iter().fold(0, |acc, &d| acc * self.base + d)
    }

    /// Some column permutation makes the sorted rows smaller than `rows`.
    fn beaten(&self, rows: &[u32], buf: &mut Vec<u32>) -> bool {
        self.table.iter().any(|t| {
            buf.clear();
            buf.extend(rows.iter().map(|&r| t[r as usize]));
            buf.sort_unstable();
            buf.as_slice() < rows
        })
    }

    fn minimum(&self, rows: &[u32]) -> Vec<u32> {
        self.table
            .iter()
            .map(|t| {
                let mut v: Vec<u32> = rows.iter().map(|&r| t[r as usize]).collect();
                v.sort_unstable();
                v
            })
            .min()
            .unwrap_or_default()
    }

    fn transpose(&self, rows: &[u32], a: usize) -> Vec<u32> {
        let m: Vec<Vec<u32>> = rows.iter().map(|&r| self.digits(r)).collect();
        (0..self.b).map(|j| self.encode(&(0..a).map(|i| m[i][j]).collect::<Vec<_>>())).collect()
    }
}

fn guard(a: usize, b: usize, mult: usize) -> Result<(), EnumError> {
    let size = a * b * mult;
    if size > BIPARTITE_GUARD {
        return Err(EnumError::Guard { what: "|A|*|B|*mult", size, limit: BIPARTITE_GUARD });
    }
    Ok(())
}

/// Canonical form: the lexicographically least sorted row list over
/// column permutations, also over the transpose when `|A| = |B|`. Entries
/// above `max_mult` are clamped.
pub fn bipartite_canonical_rows(g: &BipartiteMultigraph, max_mult: usize) -> Result<Vec<u32>, EnumError> {
    let (a, b) = (g.class_a().len(), g.class_b().len());
    guard(a, b, max_mult)?;
    let codec = Codec::new(b, max_mult);
    let m = g.multiplicity_matrix();
    let rows: Vec<u32> = m.iter().map(|r| codec.encode(&r.iter().map(|&x| (x as u32).min(max_mult as u32)).collect::<Vec<_>>())).collect();
    let mut best = codec.minimum(&rows);
    if a == b {
        best = best.min(codec.minimum(&codec.transpose(&rows, a)));
    }
    Ok(best)
}

/// One representative per isomorphism class of bipartite multigraphs with
/// exactly `a + b` vertices (isolated vertices allowed) and multiplicities
/// at most `max_mult`. Isomorphisms preserve the classes, and may swap them
/// when `a = b`.
pub fn enumerate_bipartite(a: usize, b: usize, max_mult: usize) -> Result<Vec<BipartiteMultigraph>, EnumError> {
    guard(a, b, max_mult)?;
    let codec = Codec::new(b, max_mult);
    let values = (max_mult as u32 + 1).pow(b as u32);
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(a);
    let mut buf = Vec::with_capacity(a);
    fn go(codec: &Codec, a: usize, values: u32, rows: &mut Vec<u32>, buf: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rows.len() == a {
            if codec.beaten(rows, buf) {
                return;
            }
            if codec.b == a && codec.minimum(&codec.transpose(rows, a)).as_slice() < rows.as_slice() {
                return;
            }
            out.push(rows.clone());
            return;
        }
        let start = rows.last().copied().unwrap_or(0);
        for r in start..values {
            rows.push(r);
            go(codec, a, values, rows, buf, out);
            rows.pop();
        }
    }
    let mut found = Vec::new();
    go(&codec, a, values, &mut rows, &mut buf, &mut found);
    for rows in found {
        let mut edges = Vec::new();
        for (i, &r) in rows.iter().enumerate() {
            for (j, &d) in codec.digits(r).iter().enumerate() {
                edges.extend(core::iter::repeat_n((i, j), d as usize));
            }
        }
        out.push(BipartiteMultigraph::from_indices(a, b, &edges).expect("indices in range"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_counts() {
        assert_eq!(enumerate_bipartite(1, 1, 1).unwrap().len(), 2);
        assert_eq!(enumerate_bipartite(1, 1, 2).unwrap().len(), 3);
        assert_eq!(enumerate_bipartite(0, 0, 2).unwrap().len(), 1);
        assert!(enumerate_bipartite(5, 5, 2).is_err());
    }
}
