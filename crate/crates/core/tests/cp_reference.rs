use proptest::prelude::*;
use ryser_core::cpdecomp::lemmas::{
    alternating_violations, c4_adjacency_violations, degree_violations, long_fact_violations, switch_reach_violations,
    undo_switch_violations,
};
use ryser_core::cpdecomp::{
    alternating_c4s, c4_switch, check_characterization, find_cp, reach, verify_cp, Block, BlockKind, CharacterizationStatus,
    CpDecomposition,
};
use ryser_core::graphs::{line_graph, max_matching_bipartite};
use ryser_core::meshulam::{m_reduce, HomologyOracle};
use ryser_core::topology::{independence_conn_h, IndependenceOptions};
use ryser_core::{BipartiteMultigraph, ConnValue, EdgeId, Matching, SimpleGraph};

fn bipartite() -> impl Strategy<Value = BipartiteMultigraph> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(a, b)| (Just(a), Just(b), prop::collection::vec((0..a, 0..b), 0..=7)))
        .prop_map(|(a, b, e)| BipartiteMultigraph::from_indices(a, b, &e).unwrap())
}

/// Every M-edge on some alternating path m, e, ... inside V(J), by listing
/// the simple paths themselves.
fn reach_by_paths(g: &BipartiteMultigraph, j: &SimpleGraph, m: &Matching, m0: EdgeId, e: EdgeId) -> Vec<EdgeId> {
    fn go(g: &BipartiteMultigraph, j: &SimpleGraph, m: &Matching, v: usize, want_m: bool, used: &mut Vec<usize>, out: &mut Vec<EdgeId>) {
        for &h in g.incident(v) {
            if m.contains(h) != want_m || !j.contains(h) {
                continue;
            }
            let w = g.opposite(h, v);
            if used.contains(&w) {
                continue;
            }
            if want_m && !out.contains(&h) {
                out.push(h);
            }
            used.push(w);
            go(g, j, m, w, !want_m, used, out);
            used.pop();
        }
    }
    let y = g.common_vertex(m0, e).unwrap();
    let x = g.opposite(m0, y);
    let z = g.opposite(e, y);
    let mut out = vec![m0];
    go(g, j, m, z, true, &mut vec![x, y, z], &mut out);
    out.sort_unstable();
    out
}

/// Every C4 or P4 block whose matching edges are two given M-edges, from
/// the raw edge list only.
fn all_blocks(g: &BipartiteMultigraph, j: &SimpleGraph, m: &Matching) -> Vec<Block> {
    let mut out = Vec::new();
    let edges: Vec<EdgeId> = j.vertex_ids().to_vec();
    let ms = m.edges();
    for (i, &p) in ms.iter().enumerate() {
        for &q in &ms[i + 1..] {
            // orientations of p and q as (first, second) vertex pairs
            for [p0, p1] in [g.endpoints(p), { let [u, v] = g.endpoints(p); [v, u] }] {
                for [q0, q1] in [g.endpoints(q), { let [u, v] = g.endpoints(q); [v, u] }] {
                    for &mid in &edges {
                        let mut ends = g.endpoints(mid);
                        ends.sort_unstable();
                        let mut want = [p1, q0];
                        want.sort_unstable();
                        if ends == want && !m.contains(mid) {
                            out.push(Block { kind: BlockKind::P4, vertices: vec![p0, p1, q0, q1], edges: vec![p, mid, q], m_edges: vec![p, q] });
                            for &back in &edges {
                                let mut e2 = g.endpoints(back);
                                e2.sort_unstable();
                                let mut w2 = [q1, p0];
                                w2.sort_unstable();
                                if e2 == w2 && !m.contains(back) {
                                    out.push(Block {
                                        kind: BlockKind::C4,
                                        vertices: vec![p0, p1, q0, q1],
                                        edges: vec![p, mid, q, back],
                                        m_edges: vec![p, q],
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Brute force: some set of |M|/2 blocks is accepted by the verifier.
fn cp_exists(g: &BipartiteMultigraph, j: &SimpleGraph, m: &Matching) -> bool {
    let blocks = all_blocks(g, j, m);
    let k = m.len() / 2;
    fn pick(blocks: &[Block], start: usize, k: usize, cur: &mut Vec<Block>, test: &dyn Fn(&[Block]) -> bool) -> bool {
        if cur.len() == k {
            return test(cur);
        }
        for i in start..blocks.len() {
            cur.push(blocks[i].clone());
            if pick(blocks, i + 1, k, cur, test) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let test = |bs: &[Block]| verify_cp(g, j, m, &CpDecomposition { blocks: bs.to_vec() }).accepted;
    pick(&blocks, 0, k, &mut Vec::new(), &test)
}

fn random_j(g: &BipartiteMultigraph, m: &Matching, drop_v: u64, drop_e: u64) -> SimpleGraph {
    let l = line_graph(g);
    let keep = l.induced(|id| m.contains(id) || drop_v >> (id % 64) & 1 == 0);
    let mut j = keep.clone();
    for (i, (u, v)) in keep.edges().into_iter().enumerate() {
        if drop_e >> (i % 64) & 1 == 1 {
            j = j.without_edge(u, v);
        }
    }
    j
}

/// Disjoint C4s and P4s with random extra edges, so that extremal
/// instances are common.
fn blockish() -> impl Strategy<Value = BipartiteMultigraph> {
    (prop::collection::vec((any::<bool>(), 0usize..3), 1..=2), prop::collection::vec((0usize..5, 0usize..5), 0..=3)).prop_map(
        |(blocks, extra)| {
            let n = blocks.len() * 2 + 1;
            let mut edges = Vec::new();
            for (i, &(cycle, dup)) in blocks.iter().enumerate() {
                let (a, b) = (2 * i, 2 * i);
                edges.extend([(a, b), (a + 1, b), (a + 1, b + 1)]);
                if cycle {
                    edges.push((a, b + 1));
                }
                for _ in 0..dup {
                    edges.push((a + 1, b));
                }
            }
            edges.extend(extra.into_iter().map(|(x, y)| (x % n, y % n)));
            BipartiteMultigraph::from_indices(n, n, &edges).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reach_matches_path_listing(g in bipartite(), dv in any::<u64>(), de in any::<u64>()) {
        let m = max_matching_bipartite(&g);
        let j = random_j(&g, &m, dv, de);
        for &m0 in m.edges() {
            for &e in j.vertex_ids() {
                if m.contains(e) || g.parallel(m0, e) || g.common_vertex(m0, e).is_none() {
                    continue;
                }
                prop_assert_eq!(reach(&g, &j, &m, m0, e).unwrap().reached, reach_by_paths(&g, &j, &m, m0, e));
            }
        }
    }

    #[test]
    fn search_matches_brute_force(g in bipartite(), dv in any::<u64>(), de in any::<u64>()) {
        let full = max_matching_bipartite(&g);
        let m = Matching::new(&g, full.edges()[..full.len() / 2 * 2].to_vec()).unwrap();
        let j = random_j(&g, &m, dv, de);
        let found = find_cp(&g, &j, &m).unwrap();
        if let Some(d) = &found {
            let v = verify_cp(&g, &j, &m, d);
            prop_assert!(v.accepted, "{:?}", v.violations);
        }
        prop_assert_eq!(found.is_some(), cp_exists(&g, &j, &m));
    }

    #[test]
    fn switching_preserves_reach_and_is_involutive(g in bipartite(), dv in any::<u64>(), de in any::<u64>()) {
        let m = max_matching_bipartite(&g);
        let j = random_j(&g, &m, dv, de);
        prop_assert!(switch_reach_violations(&g, &j, &m).unwrap().is_empty());
        for c in alternating_c4s(&g, &j, &m) {
            let mx = c4_switch(&g, &m, c).unwrap();
            prop_assert_eq!(mx.len(), m.len());
            let [m1, e, m2, f] = c;
            prop_assert_eq!(c4_switch(&g, &mx, [e, m2, f, m1]).unwrap(), m.clone());
        }
    }

    #[test]
    fn characterization_holds(g in prop_oneof![bipartite(), blockish()]) {
        let r = check_characterization(&g).unwrap();
        prop_assert_ne!(r.status, CharacterizationStatus::Violation);
    }

    #[test]
    fn reduced_structures_satisfy_lemmas(g in prop_oneof![bipartite(), blockish()]) {
        let full = max_matching_bipartite(&g);
        let m = Matching::new(&g, full.edges()[..full.len() / 2 * 2].to_vec()).unwrap();
        let l = line_graph(&g);
        let k = (m.len() / 2) as i32;
        let w = independence_conn_h(&l, k, IndependenceOptions::default()).unwrap();
        if m.len() < 2 || w.at_most(ConnValue::Finite(k - 2)) != Some(true) {
            return Ok(());
        }
        let j = m_reduce(&l, m.edges(), &mut HomologyOracle::for_matching(m.len())).unwrap().graph;
        prop_assert!(degree_violations(&g, &j, &m).is_empty());
        prop_assert!(alternating_violations(&g, &j, &m, 1_000_000).unwrap().is_empty());
        prop_assert!(c4_adjacency_violations(&g, &j, &m).is_empty());
        prop_assert!(long_fact_violations(&g, &j, &m).unwrap().is_empty());
        prop_assert!(undo_switch_violations(&g, &j, &m).unwrap().is_empty());
        prop_assert!(find_cp(&g, &j, &m).unwrap().is_some());
    }
}

#[test]
fn reach_on_alternating_six_path() {
    // a0-b0-a1-b1-a2-b2 with M = {a0b0, a1b1, a2b2}
    let g = BipartiteMultigraph::from_indices(3, 3, &[(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)]).unwrap();
    let j = line_graph(&g);
    let m = Matching::new(&g, vec![0, 2, 4]).unwrap();
    assert_eq!(reach(&g, &j, &m, 0, 1).unwrap().reached, vec![0, 2, 4]);
}
