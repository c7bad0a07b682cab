//! Smith normal form of integer matrices.
//!
//! Large sparse matrices are first reduced by eliminating unit pivots, which
//! is a unimodular change of basis; whatever is left (no unit entries) goes
//! through the dense algorithm.

use alloc::vec::Vec;
use hashbrown::{HashMap, HashSet};

use super::TopologyError;

/// Below this many entries the dense algorithm runs directly.
pub const DENSE_THRESHOLD: usize = 10_000;
/// Largest residual block the dense algorithm accepts after sparse reduction.
pub const DENSE_RESIDUAL_LIMIT: usize = 16_000_000;

/// Integer matrix stored by columns as `(row, value)` lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: alloc::vec![Vec::new(); cols] }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = alloc::vec![alloc::vec![0i64; self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                d[r][c] += v;
            }
        }
        d
    }

    /// `self * other`; used to check that consecutive boundaries compose to 0.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, TopologyError> {
        assert_eq!(self.cols, other.rows);
        let mut out = SparseMatrix::new(self.rows, other.cols);
        for (c, col) in other.columns.iter().enumerate() {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(k, v) in col {
                for &(r, w) in &self.columns[k] {
                    let e = acc.entry(r).or_insert(0);
                    *e = v.checked_mul(w).and_then(|p| e.checked_add(p)).ok_or(TopologyError::Overflow)?;
                }
            }
            let mut entries: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, v)| v != 0).collect();
            entries.sort_unstable();
            out.columns[c] = entries;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|&(_, v)| v == 0))
    }
}

/// Nonzero invariant factors (absolute values, each dividing the next).
pub fn invariant_factors(m: &SparseMatrix) -> Result<Vec<u64>, TopologyError> {
    if m.rows == 0 || m.cols == 0 {
        return Ok(Vec::new());
    }
    if m.rows.saturating_mul(m.cols) < DENSE_THRESHOLD {
        return dense_snf(widen(&m.to_dense()));
    }
    sparse_then_dense(m)
}

fn widen(d: &[Vec<i64>]) -> Vec<Vec<i128>> {
    d.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

fn sparse_then_dense(m: &SparseMatrix) -> Result<Vec<u64>, TopologyError> {
    let mut rows: Vec<HashMap<usize, i64>> = alloc::vec![HashMap::new(); m.rows];
    let mut cols: Vec<HashSet<usize>> = alloc::vec![HashSet::new(); m.cols];
    for (c, col) in m.columns.iter().enumerate() {
        for &(r, v) in col {
            if v != 0 {
                *rows[r].entry(c).or_insert(0) += v;
                cols[c].insert(r);
            }
        }
    }
    let mut units = 0usize;
    loop {
        let mut progress = false;
        for c in 0..m.cols {
            // pick the unit entry in column c whose row is shortest
            let pivot = cols[c]
                .iter()
                .filter(|&&r| rows[r][&c].abs() == 1)
                .min_by_key(|&&r| (rows[r].len(), r))
                .copied();
            let Some(r) = pivot else { continue };
            let u = rows[r][&c];
            let prow: Vec<(usize, i64)> = rows[r].iter().map(|(&j, &v)| (j, v)).collect();
            let others: Vec<usize> = cols[c].iter().copied().filter(|&i| i != r).collect();
            for i in others {
                let f = rows[i][&c].checked_mul(u).ok_or(TopologyError::Overflow)?;
                for &(j, a) in &prow {
                    let cur = rows[i].get(&j).copied().unwrap_or(0);
                    let next = f.checked_mul(a).and_then(|p| cur.checked_sub(p)).ok_or(TopologyError::Overflow)?;
                    if next == 0 {
                        rows[i].remove(&j);
                        cols[j].remove(&i);
                    } else {
                        rows[i].insert(j, next);
                        cols[j].insert(i);
                    }
                }
            }
            for &(j, _) in &prow {
                cols[j].remove(&r);
            }
            rows[r].clear();
            debug_assert!(cols[c].is_empty());
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..m.rows).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&c| !cols[c].is_empty()).collect();
    let mut out = alloc::vec![1u64; units];
    if !live_rows.is_empty() {
        let size = live_rows.len() * live_cols.len();
        if size > DENSE_RESIDUAL_LIMIT {
            return Err(TopologyError::MatrixTooLarge { entries: size });
        }
        let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut d = alloc::vec![alloc::vec![0i128; live_cols.len()]; live_rows.len()];
        for (ri, &r) in live_rows.iter().enumerate() {
            for (&c, &v) in &rows[r] {
                d[ri][col_pos[&c]] = v as i128;
            }
        }
        out.extend(dense_snf(d)?);
    }
    Ok(out)
}

/// Dense Smith normal form. Pivots are chosen by smallest absolute value,
/// ties broken by (row, column).
pub fn dense_snf(mut a: Vec<Vec<i128>>) -> Result<Vec<u64>, TopologyError> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest(&a, t, t..rows, t..cols) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t] / p;
                    for j in t..cols {
                        a[i][j] = sub_mul(a[i][j], q, a[t][j])?;
                    }
                    clean &= a[i][t] == 0;
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j] / p;
                    for i in t..rows {
                        a[i][j] = sub_mul(a[i][j], q, a[i][t])?;
                    }
                    clean &= a[t][j] == 0;
                }
            }
            if !clean {
                // a smaller remainder appeared in row t or column t
                let mut best = (a[t][t].abs(), t, t);
                for i in t + 1..rows {
                    if a[i][t] != 0 && a[i][t].abs() < best.0 {
                        best = (a[i][t].abs(), i, t);
                    }
                }
                for j in t + 1..cols {
                    if a[t][j] != 0 && a[t][j].abs() < best.0 {
                        best = (a[t][j].abs(), t, j);
                    }
                }
                a.swap(t, best.1);
                for row in a.iter_mut() {
                    row.swap(t, best.2);
                }
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let p = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] = a[t][j].checked_add(a[i][j]).ok_or(TopologyError::Overflow)?;
                    }
                }
                None => break,
            }
        }
        let v = a[t][t].unsigned_abs();
        out.push(u64::try_from(v).map_err(|_| TopologyError::Overflow)?);
        t += 1;
    }
    Ok(out)
}

fn sub_mul(x: i128, q: i128, y: i128) -> Result<i128, TopologyError> {
    q.checked_mul(y).and_then(|p| x.checked_sub(p)).ok_or(TopologyError::Overflow)
}

fn smallest(
    a: &[Vec<i128>],
    _t: usize,
    rs: core::ops::Range<usize>,
    cs: core::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(u128, usize, usize)> = None;
    for i in rs {
        for j in cs.clone() {
            let v = a[i][j].unsigned_abs();
            if v != 0 && best.is_none_or(|(b, _, _)| v < b) {
                best = Some((v, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sparse(d: &[&[i64]]) -> SparseMatrix {
        let rows = d.len();
        let cols = d[0].len();
        let mut m = SparseMatrix::new(rows, cols);
        for (r, row) in d.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.columns[c].push((r, v));
                }
            }
        }
        m
    }

    #[test]
    fn known_forms() {
        assert_eq!(invariant_factors(&sparse(&[&[2, 0], &[0, 3]])).unwrap(), vec![1, 6]);
        assert_eq!(invariant_factors(&sparse(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])).unwrap(), vec![2, 6, 12]);
        assert_eq!(invariant_factors(&sparse(&[&[0, 0], &[0, 0]])).unwrap(), Vec::<u64>::new());
        assert_eq!(invariant_factors(&sparse(&[&[1, 1], &[1, 1]])).unwrap(), vec![1]);
    }

    #[test]
    fn sparse_path_matches_dense() {
        // 120 x 100 banded matrix with a few non-unit entries
        let mut m = SparseMatrix::new(120, 100);
        for c in 0..100usize {
            m.columns[c].push((c, if c % 17 == 3 { 2 } else { 1 }));
            m.columns[c].push((c + 7, -1));
            if c % 5 == 0 {
                m.columns[c].push((c + 13, 3));
            }
        }
        let a = sparse_then_dense(&m).unwrap();
        let b = dense_snf(widen(&m.to_dense())).unwrap();
        assert_eq!(a, b);
    }
}
