use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::TopologyError;
use crate::bits::{bit, bits, low_mask};

/// Default guard on the number of materialized faces.
pub const FACE_LIMIT: usize = 1 << 20;

/// Finite abstract simplicial complex on at most 128 vertices.
///
/// Faces are vertex masks over local indices (local order = sorted vertex
/// ids), grouped by cardinality. The empty face is always present, so the
/// complex with no vertices is `{∅}`: it has `H̃_{-1} = Z` and is the identity
/// for joins. A complex may be truncated, holding only faces up to some
/// cardinality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_ids: Vec<usize>,
    faces: Vec<Vec<u128>>,
    complete: bool,
}

impl SimplicialComplex {
    /// The complex with no vertices (only the empty face).
    pub fn void() -> Self {
        Self { vertex_ids: Vec::new(), faces: alloc::vec![alloc::vec![0]], complete: true }
    }

    /// Full simplex on the given ids.
    pub fn simplex(ids: &[usize]) -> Result<Self, TopologyError> {
        Self::from_facets(ids, &[ids.to_vec()])
    }

    /// Downward closure of `facets`. Every id in `vertex_ids` is a vertex,
    /// whether or not it lies in a listed facet.
    pub fn from_facets(vertex_ids: &[usize], facets: &[Vec<usize>]) -> Result<Self, TopologyError> {
        let mut ids = vertex_ids.to_vec();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() > 128 {
            return Err(TopologyError::TooManyVertices(ids.len()));
        }
        let mut masks: Vec<u128> = (0..ids.len()).map(bit).collect();
        for f in facets {
            let mut m = 0u128;
            for v in f {
                let i = ids.binary_search(v).map_err(|_| TopologyError::UnknownVertex(*v))?;
                m |= bit(i);
            }
            masks.push(m);
        }
        let mut all: hashbrown::HashSet<u128> = hashbrown::HashSet::new();
        all.insert(0);
        for m in masks {
            if all.contains(&m) {
                continue;
            }
            subsets_into(m, &mut all)?;
        }
        Ok(Self::from_face_set(ids, all.into_iter().collect(), None))
    }

    /// Builds from an explicit face list (masks over `0..ids.len()`), which
    /// must be closed under subsets. With `truncated_at = Some(k)` the list
    /// holds exactly the faces with at most `k` vertices of a larger complex.
    pub fn from_faces(ids: Vec<usize>, faces: Vec<u128>, truncated_at: Option<usize>) -> Result<Self, TopologyError> {
        if ids.len() > 128 {
            return Err(TopologyError::TooManyVertices(ids.len()));
        }
        if faces.len() > FACE_LIMIT {
            return Err(TopologyError::FaceGuard { count: faces.len(), limit: FACE_LIMIT });
        }
        let set: hashbrown::HashSet<u128> = faces.iter().copied().collect();
        let full = low_mask(ids.len());
        for &f in &faces {
            if f & !full != 0 {
                return Err(TopologyError::UnknownVertex((127 - f.leading_zeros()) as usize));
            }
            if bits(f).any(|v| !set.contains(&(f & !bit(v)))) {
                return Err(TopologyError::NotClosed);
            }
        }
        if (0..ids.len()).any(|v| !set.contains(&bit(v))) || !set.contains(&0) {
            return Err(TopologyError::NotClosed);
        }
        Ok(Self::from_face_set(ids, set.into_iter().collect(), truncated_at))
    }

    pub(crate) fn from_face_set(ids: Vec<usize>, faces: Vec<u128>, truncated_at: Option<usize>) -> Self {
        let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
        let levels = truncated_at.map_or(top, |k| k.max(top)) + 1;
        let mut by_size = alloc::vec![Vec::new(); levels];
        for f in faces {
            by_size[f.count_ones() as usize].push(f);
        }
        for level in &mut by_size {
            level.sort_unstable();
        }
        Self { vertex_ids: ids, faces: by_size, complete: truncated_at.is_none() }
    }

    pub fn vertex_ids(&self) -> &[usize] {
        &self.vertex_ids
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    /// False when faces above [`materialized_size`](Self::materialized_size)
    /// may exist but were not generated.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Largest face cardinality held.
    pub fn materialized_size(&self) -> usize {
        self.faces.len() - 1
    }

    /// Dimension (largest face size minus one); -1 for `{∅}`.
    pub fn dimension(&self) -> i32 {
        let top = self.faces.iter().rposition(|l| !l.is_empty()).unwrap_or(0);
        top as i32 - 1
    }

    /// Faces with `size` vertices, sorted; empty beyond the materialized range.
    pub fn faces_of_size(&self, size: usize) -> &[u128] {
        self.faces.get(size).map_or(&[], Vec::as_slice)
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    /// Vertex ids of a face mask.
    pub fn face_ids(&self, face: u128) -> Vec<usize> {
        bits(face).map(|i| self.vertex_ids[i]).collect()
    }

    pub fn contains_face(&self, ids: &[usize]) -> bool {
        let mut m = 0u128;
        for v in ids {
            match self.vertex_ids.binary_search(v) {
                Ok(i) => m |= bit(i),
                Err(_) => return false,
            }
        }
        self.faces_of_size(m.count_ones() as usize).binary_search(&m).is_ok()
    }

    /// Maximal faces among those materialized, in (size, mask) order.
    pub fn maximal_faces(&self) -> Vec<u128> {
        let mut out = Vec::new();
        for (s, level) in self.faces.iter().enumerate() {
            let next = self.faces.get(s + 1);
            for &f in level {
                let covered = match next {
                    Some(n) => (0..self.vertex_ids.len())
                        .any(|v| f & bit(v) == 0 && n.binary_search(&(f | bit(v))).is_ok()),
                    None => false,
                };
                if !covered && (f != 0 || self.vertex_ids.is_empty()) {
                    out.push(f);
                }
            }
        }
        out
    }

    /// Text dump: one maximal face per line, vertex ids separated by spaces.
    /// `{∅}` dumps as the empty string.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for f in self.maximal_faces() {
            if f == 0 {
                continue;
            }
            let ids = self.face_ids(f);
            for (i, v) in ids.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                let _ = write!(s, "{v}");
            }
            s.push('\n');
        }
        s
    }

    /// Parses the format written by [`dump`](Self::dump).
    pub fn parse_dump(text: &str) -> Result<Self, ParseDumpError> {
        let mut facets = Vec::new();
        let mut ids = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut f = Vec::new();
            for tok in line.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| ParseDumpError::BadToken { line: n + 1 })?;
                f.push(v);
                ids.push(v);
            }
            facets.push(f);
        }
        Self::from_facets(&ids, &facets).map_err(ParseDumpError::Topology)
    }

    /// Join with `other`; vertex ids must not overlap.
    pub fn join(&self, other: &Self) -> Result<Self, TopologyError> {
        if let Some(v) = self.vertex_ids.iter().find(|v| other.vertex_ids.binary_search(v).is_ok()) {
            return Err(TopologyError::VertexCollision(*v));
        }
        let mut ids: Vec<usize> = self.vertex_ids.iter().chain(other.vertex_ids.iter()).copied().collect();
        ids.sort_unstable();
        let remap = |c: &Self| -> Vec<usize> { c.vertex_ids.iter().map(|v| ids.binary_search(v).unwrap()).collect() };
        self.join_with(other, ids.clone(), &remap(self), &remap(other))
    }

    /// Join after tagging ids: vertices of `self` become `2v`, those of
    /// `other` become `2v + 1`.
    pub fn join_tagged(&self, other: &Self) -> Result<Self, TopologyError> {
        let a = self.retag(|v| 2 * v);
        let b = other.retag(|v| 2 * v + 1);
        a.join(&b)
    }

    fn retag(&self, f: impl Fn(usize) -> usize) -> Self {
        // the maps used are monotone, so local order is preserved
        let mut c = self.clone();
        c.vertex_ids.iter_mut().for_each(|v| *v = f(*v));
        c
    }

    fn join_with(&self, other: &Self, ids: Vec<usize>, ma: &[usize], mb: &[usize]) -> Result<Self, TopologyError> {
        if ids.len() > 128 {
            return Err(TopologyError::TooManyVertices(ids.len()));
        }
        if !self.complete || !other.complete {
            let m = self.materialized_size().min(other.materialized_size());
            return Err(TopologyError::NotMaterialized { materialized: m, needed: m + 1 });
        }
        let total = self.face_count().saturating_mul(other.face_count());
        if total > FACE_LIMIT {
            return Err(TopologyError::FaceGuard { count: total, limit: FACE_LIMIT });
        }
        let relabel = |f: u128, map: &[usize]| bits(f).fold(0u128, |m, i| m | bit(map[i]));
        let fa: Vec<u128> = self.faces.iter().flatten().map(|&f| relabel(f, ma)).collect();
        let fb: Vec<u128> = other.faces.iter().flatten().map(|&f| relabel(f, mb)).collect();
        let mut faces = Vec::with_capacity(total);
        for &x in &fa {
            for &y in &fb {
                faces.push(x | y);
            }
        }
        Ok(Self::from_face_set(ids, faces, None))
    }

    /// Cone with a new apex id.
    pub fn cone(&self, apex: usize) -> Result<Self, TopologyError> {
        self.join(&Self::simplex(&[apex])?)
    }
}

fn subsets_into(m: u128, set: &mut hashbrown::HashSet<u128>) -> Result<(), TopologyError> {
    // walk subsets of m, skipping any whose superset chain is known
    let n = m.count_ones();
    if n >= 21 {
        return Err(TopologyError::FaceGuard { count: 1 << n.min(60), limit: FACE_LIMIT });
    }
    let mut s = m;
    loop {
        set.insert(s);
        if set.len() > FACE_LIMIT {
            return Err(TopologyError::FaceGuard { count: set.len(), limit: FACE_LIMIT });
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & m;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseDumpError {
    #[error("line {line}: expected a vertex id")]
    BadToken { line: usize },
    #[error(transparent)]
    Topology(TopologyError),
}
