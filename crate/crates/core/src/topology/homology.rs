use alloc::vec::Vec;

use super::snf::{invariant_factors, SparseMatrix};
use super::{ConnValue, ConnWindow, SimplicialComplex, TopologyError};
use crate::bits::{bit, bits};

/// Reduced homology group `H̃_dim = Z^rank ⊕ ⨁ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub dim: i32,
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Boundary map from faces with `size` vertices to faces with `size - 1`,
/// with the usual alternating signs in local vertex order.
pub fn boundary_matrix(c: &SimplicialComplex, size: usize) -> SparseMatrix {
    let src = c.faces_of_size(size);
    let dst = if size == 0 { &[][..] } else { c.faces_of_size(size - 1) };
    let mut m = SparseMatrix::new(dst.len(), src.len());
    if size == 0 {
        return m;
    }
    for (j, &f) in src.iter().enumerate() {
        let mut col = Vec::with_capacity(size);
        for (i, v) in bits(f).enumerate() {
            let g = f & !bit(v);
            let r = dst.binary_search(&g).expect("complex is closed");
            col.push((r, if i % 2 == 0 { 1 } else { -1 }));
        }
        col.sort_unstable();
        m.columns[j] = col;
    }
    m
}

/// Rank and invariant factors of the boundary map out of `size`-faces.
/// Vertex and edge levels are handled combinatorially (their maps are
/// totally unimodular); higher levels go through Smith normal form.
fn boundary_snf(c: &SimplicialComplex, size: usize) -> Result<Vec<u64>, TopologyError> {
    match size {
        0 => Ok(Vec::new()),
        1 => Ok(if c.vertex_count() > 0 { alloc::vec![1] } else { Vec::new() }),
        2 => {
            let n = c.vertex_count();
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            let mut rank = 0;
            for &e in c.faces_of_size(2) {
                let mut it = bits(e);
                let (u, v) = (it.next().unwrap(), it.next().unwrap());
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru] = rv;
                    rank += 1;
                }
            }
            Ok(alloc::vec![1; rank])
        }
        _ => invariant_factors(&boundary_matrix(c, size)),
    }
}

fn require(c: &SimplicialComplex, size: usize) -> Result<(), TopologyError> {
    if !c.is_complete() && c.materialized_size() < size {
        return Err(TopologyError::NotMaterialized { materialized: c.materialized_size(), needed: size });
    }
    Ok(())
}

/// Reduced homology in dimensions `-1..=max_dim`. Needs faces up to
/// dimension `max_dim + 1`.
pub fn reduced_homology(c: &SimplicialComplex, max_dim: i32) -> Result<Vec<HomologyGroup>, TopologyError> {
    if max_dim < -1 {
        return Err(TopologyError::BadCap(max_dim));
    }
    require(c, (max_dim + 2) as usize)?;
    let mut out = Vec::new();
    let mut below = boundary_snf(c, 0)?;
    for dim in -1..=max_dim {
        let size = (dim + 1) as usize;
        let above = boundary_snf(c, size + 1)?;
        let rank = c.faces_of_size(size).len() - below.len() - above.len();
        let torsion = above.iter().copied().filter(|&t| t > 1).collect();
        out.push(HomologyGroup { dim, rank, torsion });
        below = above;
    }
    Ok(out)
}

/// Homological connectedness scanned up to dimension `cap`: the first
/// nontrivial `H̃_i` gives `Exact(i - 1)`. If none appears the result is
/// `Exact(∞)` when the scan covered the whole (complete) complex, otherwise
/// `AtLeast(cap)`.
pub fn conn_h(c: &SimplicialComplex, cap: i32) -> Result<ConnWindow, TopologyError> {
    if cap < -1 {
        return Err(TopologyError::BadCap(cap));
    }
    let top = c.dimension();
    let scan = if c.is_complete() { cap.min(top.max(-1)) } else { cap };
    require(c, (scan + 2) as usize)?;
    let mut below = boundary_snf(c, 0)?;
    for dim in -1..=scan {
        let size = (dim + 1) as usize;
        let above = boundary_snf(c, size + 1)?;
        let rank = c.faces_of_size(size).len() - below.len() - above.len();
        if rank > 0 || above.iter().any(|&t| t > 1) {
            return Ok(ConnWindow::Exact(ConnValue::Finite(dim - 1)));
        }
        below = above;
    }
    if c.is_complete() && cap >= top {
        Ok(ConnWindow::Exact(ConnValue::Infinite))
    } else {
        Ok(ConnWindow::AtLeast(cap))
    }
}

/// Checks `∂_{k} ∘ ∂_{k+1} = 0` for every materialized pair.
pub fn boundary_composes_to_zero(c: &SimplicialComplex) -> Result<bool, TopologyError> {
    for size in 1..c.materialized_size() {
        let lower = boundary_matrix(c, size);
        let upper = boundary_matrix(c, size + 1);
        if !lower.mul(&upper)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ranks(c: &SimplicialComplex, d: i32) -> Vec<usize> {
        reduced_homology(c, d).unwrap().iter().map(|g| g.rank).collect()
    }

    #[test]
    fn spheres_and_points() {
        let pt = SimplicialComplex::simplex(&[0]).unwrap();
        assert_eq!(conn_h(&pt, 3).unwrap(), ConnWindow::Exact(ConnValue::Infinite));
        let void = SimplicialComplex::void();
        assert_eq!(ranks(&void, 0), vec![1, 0]);
        assert_eq!(conn_h(&void, 2).unwrap(), ConnWindow::Exact(ConnValue::Finite(-2)));
        let s0 = SimplicialComplex::from_facets(&[0, 1], &[]).unwrap();
        assert_eq!(ranks(&s0, 0), vec![0, 1]);
        let s1 = SimplicialComplex::from_facets(&[0, 1, 2], &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(ranks(&s1, 1), vec![0, 0, 1]);
        assert_eq!(conn_h(&s1, 0).unwrap(), ConnWindow::AtLeast(0));
        assert_eq!(conn_h(&s1, 1).unwrap(), ConnWindow::Exact(ConnValue::Finite(0)));
        let tet = SimplicialComplex::simplex(&[0, 1, 2, 3]).unwrap();
        let s2 = SimplicialComplex::from_facets(
            &[0, 1, 2, 3],
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap();
        assert_eq!(ranks(&tet, 3), vec![0; 5]);
        assert_eq!(ranks(&s2, 2), vec![0, 0, 0, 1]);
        assert!(boundary_composes_to_zero(&tet).unwrap());
    }

    #[test]
    fn projective_plane_torsion() {
        // 6-vertex triangulation of RP^2
        let f = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1], [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3]];
        let facets: Vec<Vec<usize>> = f.iter().map(|t| t.to_vec()).collect();
        let c = SimplicialComplex::from_facets(&[0, 1, 2, 3, 4, 5], &facets).unwrap();
        let h = reduced_homology(&c, 2).unwrap();
        assert!(h[0].is_trivial() && h[1].is_trivial());
        assert_eq!(h[2], HomologyGroup { dim: 1, rank: 0, torsion: vec![2] });
        assert!(h[3].is_trivial());
        assert_eq!(conn_h(&c, 2).unwrap(), ConnWindow::Exact(ConnValue::Finite(0)));
    }
}
