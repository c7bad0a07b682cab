use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::packing::{max_packing, min_transversal};
use super::GraphError;
use crate::bits::bit;

/// Default limit on vertices per class for the exact ν/τ searches.
pub const DEFAULT_CLASS_GUARD: usize = 24;

/// 3-partite 3-graph with classes `V1, V2, V3`; multiple edges allowed.
/// Each edge is `[i1, i2, i3]` with `ik` an index into class `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreePartiteHypergraph {
    classes: [Vec<String>; 3],
    edges: Vec<[usize; 3]>,
}

impl ThreePartiteHypergraph {
    pub fn new(classes: [Vec<String>; 3], edges: &[[String; 3]]) -> Result<Self, GraphError> {
        let mut all: Vec<&str> = classes.iter().flatten().map(String::as_str).collect();
        all.sort_unstable();
        if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0].into()));
        }
        let mut idx = Vec::with_capacity(edges.len());
        for e in edges {
            let mut t = [0; 3];
            for k in 0..3 {
                t[k] = match classes[k].iter().position(|v| *v == e[k]) {
                    Some(i) => i,
                    None if all.binary_search(&e[k].as_str()).is_ok() => {
                        return Err(GraphError::WrongClass(e[k].clone()))
                    }
                    None => return Err(GraphError::UnknownVertex(e[k].clone())),
                };
            }
            idx.push(t);
        }
        Ok(Self { classes, edges: idx })
    }

    /// Generated labels `x0.., y0.., z0..` for the three classes.
    pub fn from_indices(sizes: [usize; 3], edges: &[[usize; 3]]) -> Result<Self, GraphError> {
        for e in edges {
            for k in 0..3 {
                if e[k] >= sizes[k] {
                    return Err(GraphError::IndexOutOfRange { index: e[k], size: sizes[k] });
                }
            }
        }
        let names = ["x", "y", "z"];
        let classes = [0, 1, 2].map(|k| (0..sizes[k]).map(|i| format!("{}{i}", names[k])).collect());
        Ok(Self { classes, edges: edges.to_vec() })
    }

    pub fn classes(&self) -> &[Vec<String>; 3] {
        &self.classes
    }

    /// Class `k` in `0..3`.
    pub fn class(&self, k: usize) -> &[String] {
        &self.classes[k]
    }

    pub fn class_sizes(&self) -> [usize; 3] {
        [0, 1, 2].map(|k| self.classes[k].len())
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn check_guard(&self, limit: usize) -> Result<(), GraphError> {
        for k in 0..3 {
            let size = self.classes[k].len();
            if size > limit {
                return Err(GraphError::SizeGuard { what: "class size", size, limit });
            }
        }
        Ok(())
    }

    /// Edge as a mask over unified vertices (class offsets in order).
    pub fn edge_mask(&self, e: usize) -> u128 {
        let [s1, s2, _] = self.class_sizes();
        let t = self.edges[e];
        bit(t[0]) | bit(s1 + t[1]) | bit(s1 + s2 + t[2])
    }

    fn masks(&self, limit: usize) -> Result<Vec<u128>, GraphError> {
        self.check_guard(limit)?;
        Ok((0..self.edges.len()).map(|e| self.edge_mask(e)).collect())
    }

    /// ν(H) with its witnessing edge ids.
    pub fn max_matching(&self, limit: usize) -> Result<Vec<usize>, GraphError> {
        let masks = self.masks(limit)?;
        let chosen = max_packing(&masks);
        Ok(chosen)
    }

    pub fn matching_number(&self, limit: usize) -> Result<usize, GraphError> {
        Ok(self.max_matching(limit)?.len())
    }

    pub fn vertex_cover_number(&self, limit: usize) -> Result<usize, GraphError> {
        Ok(min_transversal(&self.masks(limit)?).count_ones() as usize)
    }

    /// Disjoint union; labels of `other` get `suffix` appended.
    pub fn disjoint_union(&self, other: &Self, suffix: &str) -> Self {
        let shift = self.class_sizes();
        let classes = [0, 1, 2].map(|k| {
            let mut c = self.classes[k].clone();
            c.extend(other.classes[k].iter().map(|s| format!("{s}{suffix}")));
            c
        });
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| [e[0] + shift[0], e[1] + shift[1], e[2] + shift[2]]));
        Self { classes, edges }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_and_small_values() {
        let h = ThreePartiteHypergraph::from_indices([2, 2, 2], &[[0, 0, 0], [1, 1, 1], [0, 1, 1]]).unwrap();
        assert_eq!(h.matching_number(24).unwrap(), 2);
        assert_eq!(h.vertex_cover_number(24).unwrap(), 2);
        assert!(matches!(h.matching_number(1), Err(GraphError::SizeGuard { .. })));
    }
}
