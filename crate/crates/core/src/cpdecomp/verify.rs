use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Block, BlockKind, CpDecomposition};
use crate::graphs::{BipartiteMultigraph, EdgeId, Matching, SimpleGraph};

/// A failed check. `property` is 1, 2 or 3 for the CP properties and 0 for
/// malformed blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub property: u8,
    pub block: Option<usize>,
    pub edge: Option<EdgeId>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CpVerdict {
    pub accepted: bool,
    pub violations: Vec<Violation>,
}

/// `h` meets an interior vertex of the P4 `t` and is J-adjacent to some
/// edge of `t`.
pub fn at_home(g: &BipartiteMultigraph, j: &SimpleGraph, t: &Block, h: EdgeId) -> bool {
    let ends = g.endpoints(h);
    t.interior().iter().any(|v| ends.contains(v)) && t.edges.iter().any(|&x| j.adjacent(h, x))
}

fn same_ends(g: &BipartiteMultigraph, e: EdgeId, f: EdgeId) -> bool {
    g.edge(e) == g.edge(f)
}

/// Property (3) for a single edge against a list of blocks.
pub(crate) fn covered(g: &BipartiteMultigraph, j: &SimpleGraph, blocks: &[Block], h: EdgeId) -> bool {
    blocks.iter().any(|b| match b.kind {
        BlockKind::C4 => b.edges.iter().any(|&x| same_ends(g, x, h)),
        BlockKind::P4 => at_home(g, j, b, h),
    })
}

/// Checks a decomposition against the three CP properties.
pub fn verify_cp(g: &BipartiteMultigraph, j: &SimpleGraph, m: &Matching, d: &CpDecomposition) -> CpVerdict {
    let mut v = Vec::new();
    let mut push = |property: u8, block: Option<usize>, edge: Option<EdgeId>, detail: String| {
        v.push(Violation { property, block, edge, detail });
    };
    for &e in m.edges() {
        if !j.contains(e) {
            push(0, None, Some(e), format!("matching edge {e} is not in V(J)"));
        }
    }
    if m.len() % 2 == 1 || d.blocks.len() * 2 != m.len() {
        push(2, None, None, format!("{} blocks for a matching of size {}", d.blocks.len(), m.len()));
    }
    let mut used_vertices: Vec<usize> = Vec::new();
    let mut used_m: Vec<EdgeId> = Vec::new();
    for (bi, b) in d.blocks.iter().enumerate() {
        let prop = if b.kind == BlockKind::C4 { 1 } else { 2 };
        let want_edges = if b.kind == BlockKind::C4 { 4 } else { 3 };
        let mut vs = b.vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        if b.vertices.len() != 4 || vs.len() != 4 || b.edges.len() != want_edges {
            push(0, Some(bi), None, format!("block {bi} has the wrong shape"));
            continue;
        }
        if b.vertices.iter().any(|&x| x >= g.vertex_count()) || b.edges.iter().any(|&e| e >= g.edge_count()) {
            push(0, Some(bi), None, format!("block {bi} refers to unknown vertices or edges"));
            continue;
        }
        let mut shape_ok = true;
        for (i, &e) in b.edges.iter().enumerate() {
            let (x, y) = (b.vertices[i], b.vertices[(i + 1) % 4]);
            let mut ends = g.endpoints(e);
            ends.sort_unstable();
            let mut want = [x, y];
            want.sort_unstable();
            if ends != want {
                push(prop, Some(bi), Some(e), format!("edge {e} does not join block vertices {x} and {y}"));
                shape_ok = false;
            }
            if !j.contains(e) {
                push(prop, Some(bi), Some(e), format!("edge {e} of block {bi} is not in V(J)"));
            }
        }
        let mut me = b.m_edges.clone();
        me.sort_unstable();
        let mut expect = match b.kind {
            BlockKind::P4 => alloc::vec![b.edges[0], b.edges[2]],
            BlockKind::C4 => {
                let a = [b.edges[0], b.edges[2]];
                if m.contains(a[0]) && m.contains(a[1]) {
                    a.to_vec()
                } else {
                    alloc::vec![b.edges[1], b.edges[3]]
                }
            }
        };
        expect.sort_unstable();
        if me != expect || me.iter().any(|&e| !m.contains(e)) {
            push(prop, Some(bi), None, format!("block {bi} does not contain two opposite/end matching edges"));
        }
        if b.edges.iter().filter(|&&e| m.contains(e)).count() != 2 {
            push(prop, Some(bi), None, format!("block {bi} contains the wrong number of matching edges"));
        }
        if shape_ok {
            let n = b.edges.len();
            let pairs = if b.kind == BlockKind::C4 { n } else { n - 1 };
            for i in 0..pairs {
                let (e, f) = (b.edges[i], b.edges[(i + 1) % n]);
                if !j.adjacent(e, f) {
                    push(prop, Some(bi), Some(e), format!("intersecting edges {e} and {f} are not J-adjacent"));
                }
            }
        }
        for &x in &b.vertices {
            if used_vertices.contains(&x) {
                push(0, Some(bi), None, format!("vertex {x} lies in two blocks"));
            }
        }
        used_vertices.extend_from_slice(&b.vertices);
        used_m.extend_from_slice(&b.m_edges);
    }
    used_m.sort_unstable();
    if used_m != m.edges() {
        push(2, None, None, String::from("matching edges are not partitioned by the blocks"));
    }
    for &h in j.vertex_ids() {
        if !covered(g, j, &d.blocks, h) {
            push(3, None, Some(h), format!("edge {h} is neither parallel to a C4 edge nor at home in a P4"));
        }
    }
    CpVerdict { accepted: v.is_empty(), violations: v }
}
