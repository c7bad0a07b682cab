use alloc::vec::Vec;
use itertools::Itertools;

use super::EnumError;
use crate::graphs::ThreePartiteHypergraph;

/// Largest number of possible triples `|V1| * |V2| * |V3|`.
pub const SUPPORT_GUARD: usize = 27;

/// Class-preserving permutations acting on triple positions through byte
/// lookup tables. Masks are reversed so that a larger integer is a larger
/// bitstring with position 0 most significant.
///
/// Building one is the expensive part of canonicalization; reuse it for many
/// 3-graphs with the same class sizes.
pub struct SupportGroup {
    sizes: [usize; 3],
    positions: usize,
    tables: Vec<[[u32; 256]; 4]>,
}

impl SupportGroup {
    pub fn new(sizes: [usize; 3]) -> Result<Self, EnumError> {
        guard(sizes)?;
        Ok(Self::build(sizes))
    }

    fn build(sizes: [usize; 3]) -> Self {
        let [s1, s2, s3] = sizes;
        let positions = s1 * s2 * s3;
        let mut tables = Vec::new();
        for p1 in (0..s1).permutations(s1) {
            for p2 in (0..s2).permutations(s2) {
                for p3 in (0..s3).permutations(s3) {
                    let image = |pos: usize| {
                        let (x, y, z) = (pos / (s2 * s3), pos / s3 % s2, pos % s3);
                        (p1[x] * s2 + p2[y]) * s3 + p3[z]
                    };
                    let mut t = [[0u32; 256]; 4];
                    for (chunk, row) in t.iter_mut().enumerate() {
                        for byte in 1..256usize {
                            let low = byte.trailing_zeros() as usize;
                            let pos = chunk * 8 + low;
                            let here = if pos < positions { 1 << (positions - 1 - image(pos)) } else { 0 };
                            row[byte] = row[byte & (byte - 1)] | here;
                        }
                    }
                    tables.push(t);
                }
            }
        }
        Self { sizes, positions, tables }
    }

    fn reversed(&self, mask: u32) -> u32 {
        (0..self.positions).filter(|&p| mask >> p & 1 == 1).fold(0, |acc, p| acc | 1 << (self.positions - 1 - p))
    }

    fn apply(t: &[[u32; 256]; 4], mask: u32) -> u32 {
        t[0][(mask & 0xff) as usize] | t[1][(mask >> 8 & 0xff) as usize] | t[2][(mask >> 16 & 0xff) as usize] | t[3][(mask >> 24) as usize]
    }

    fn canonical(&self, mask: u32) -> bool {
        let own = self.reversed(mask);
        self.tables.iter().all(|t| Self::apply(t, mask) <= own)
    }

    fn maximum(&self, mask: u32) -> u32 {
        self.tables.iter().map(|t| Self::apply(t, mask)).max().unwrap_or(0)
    }

    /// As [`three_graph_canonical_mask`]; `h` must have this group's class sizes.
    pub fn canonical_mask(&self, h: &ThreePartiteHypergraph) -> Result<u32, EnumError> {
        if h.class_sizes() != self.sizes {
            return Err(EnumError::SizeMismatch { expected: self.sizes, got: h.class_sizes() });
        }
        Ok(self.maximum(triple_mask(h)))
    }
}

fn guard(sizes: [usize; 3]) -> Result<(), EnumError> {
    let size = sizes.iter().product();
    if size > SUPPORT_GUARD {
        return Err(EnumError::Guard { what: "number of possible triples", size, limit: SUPPORT_GUARD });
    }
    Ok(())
}

fn triple_mask(h: &ThreePartiteHypergraph) -> u32 {
    let [_, s2, s3] = h.class_sizes();
    h.edges().iter().fold(0, |m, e| m | 1 << ((e[0] * s2 + e[1]) * s3 + e[2]))
}

/// Canonical form of the support (edges without multiplicity): the largest
/// reversed triple mask over class-preserving permutations.
pub fn three_graph_canonical_mask(h: &ThreePartiteHypergraph) -> Result<u32, EnumError> {
    SupportGroup::new(h.class_sizes())?.canonical_mask(h)
}

/// One representative per class of simple 3-partite 3-graphs with the given
/// class sizes, up to permutations inside each class. Orderly generation:
/// a set is kept iff it is canonical, and extended only past its last triple.
pub fn enumerate_three_graphs(sizes: [usize; 3]) -> Result<Vec<ThreePartiteHypergraph>, EnumError> {
    let group = SupportGroup::new(sizes)?;
    let mut masks = Vec::new();
    fn go(group: &SupportGroup, mask: u32, next: usize, out: &mut Vec<u32>) {
        out.push(mask);
        for p in next..group.positions {
            let m = mask | 1 << p;
            if group.canonical(m) {
                go(group, m, p + 1, out);
            }
        }
    }
    go(&group, 0, 0, &mut masks);
    let [_, s2, s3] = sizes;
    Ok(masks
        .into_iter()
        .map(|m| {
            let edges: Vec<[usize; 3]> =
                (0..group.positions).filter(|&p| m >> p & 1 == 1).map(|p| [p / (s2 * s3), p / s3 % s2, p % s3]).collect();
            ThreePartiteHypergraph::from_indices(sizes, &edges).expect("indices in range")
        })
        .collect())
}
