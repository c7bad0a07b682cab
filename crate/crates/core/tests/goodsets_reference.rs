use proptest::prelude::*;
use ryser_core::goodsets::{
    decent_from_matching, equineighbored_sets, find_good_set, is_decent, is_equineighbored, neighborhood, perfect_closure,
    Closure, GoodSetSearch, Goodness, VertexSubset,
};
use ryser_core::graphs::max_matching_bipartite;
use ryser_core::meshulam::Certifier;
use ryser_core::{BipartiteMultigraph, Matching, Side};

fn bipartite() -> impl Strategy<Value = BipartiteMultigraph> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(a, b)| (Just(a), Just(b), prop::collection::vec((0..a, 0..b), 0..=8)))
        .prop_map(|(a, b, e)| BipartiteMultigraph::from_indices(a, b, &e).unwrap())
}

/// All matchings, by brute force over edge subsets.
fn all_matchings(g: &BipartiteMultigraph) -> Vec<Vec<usize>> {
    let n = g.edge_count();
    (0u32..1 << n)
        .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|es| es.iter().enumerate().all(|(i, &e)| es[i + 1..].iter().all(|&f| !g.share_vertex(e, f))))
        .collect()
}

fn maximum_matchings(g: &BipartiteMultigraph) -> Vec<Vec<usize>> {
    let all = all_matchings(g);
    let nu = all.iter().map(Vec::len).max().unwrap_or(0);
    all.into_iter().filter(|m| m.len() == nu).collect()
}

/// Decency straight from the definition, with condition (3) checked by
/// listing maximum matchings.
fn decent_naive(g: &BipartiteMultigraph, x: &VertexSubset) -> bool {
    let maxes = maximum_matchings(g);
    let nu = maxes[0].len();
    let n = neighborhood(g, x).unwrap();
    let c3 = x.vertices.iter().all(|&i| {
        let u = g.vertex(x.side, i);
        g.incident(u).iter().all(|&e| {
            maxes.iter().any(|m| m.iter().any(|&f| g.edge(f) == g.edge(e)))
        })
    });
    n.len() <= x.len() && nu == n.len() + g.class_size(x.side) - x.len() && c3
}

fn subsets(g: &BipartiteMultigraph, side: Side) -> Vec<VertexSubset> {
    let n = g.class_size(side);
    (0u32..1 << n).map(|s| VertexSubset::new(side, (0..n).filter(|&i| s >> i & 1 == 1).collect())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn decency_matches_definition(g in bipartite()) {
        for side in [Side::A, Side::B] {
            for x in subsets(&g, side) {
                prop_assert_eq!(is_decent(&g, &x).unwrap(), decent_naive(&g, &x), "{:?}", x);
            }
        }
    }

    #[test]
    fn closure_of_unsaturated_is_decent(g in bipartite()) {
        for m in maximum_matchings(&g) {
            let m = Matching::new(&g, m).unwrap();
            for side in [Side::A, Side::B] {
                let (x, x0) = decent_from_matching(&g, &m, side).unwrap();
                prop_assert!(is_decent(&g, &x).unwrap());
                prop_assert_eq!(neighborhood(&g, &x).unwrap().len(), x.len() - x0.len());
            }
        }
    }

    #[test]
    fn perfect_matching_facts(g in bipartite()) {
        let m = max_matching_bipartite(&g);
        if 2 * m.len() != g.vertex_count() {
            return Ok(());
        }
        for side in [Side::A, Side::B] {
            prop_assert!(is_equineighbored(&g, &VertexSubset::new(side, (0..g.class_size(side)).collect())).unwrap());
            for x0 in subsets(&g, side) {
                match perfect_closure(&g, &m, &x0).unwrap() {
                    Closure::Empty => prop_assert!(x0.is_empty()),
                    Closure::Set(x) => prop_assert!(is_equineighbored(&g, &x).unwrap()),
                }
            }
            for x in equineighbored_sets(&g, side, true, 16).unwrap() {
                prop_assert!(is_decent(&g, &x).unwrap());
            }
        }
    }

    #[test]
    fn equineighbored_enumeration_matches_subsets(g in bipartite()) {
        for side in [Side::A, Side::B] {
            let all: Vec<VertexSubset> = subsets(&g, side).into_iter().filter(|x| is_equineighbored(&g, x).unwrap()).collect();
            let mut listed = equineighbored_sets(&g, side, false, 16).unwrap();
            listed.sort();
            let mut want = all.clone();
            want.sort();
            prop_assert_eq!(listed, want);
            let minimal: Vec<&VertexSubset> = all
                .iter()
                .filter(|x| !all.iter().any(|y| y != *x && y.vertices.iter().all(|v| x.vertices.contains(v))))
                .collect();
            let mut got = equineighbored_sets(&g, side, true, 16).unwrap();
            got.sort();
            let mut want: Vec<VertexSubset> = minimal.into_iter().cloned().collect();
            want.sort();
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn no_good_set_forces_structure(g in bipartite()) {
        match find_good_set(&g, &Certifier::default(), 16) {
            Err(_) => {}
            Ok(GoodSetSearch::Found(r)) => {
                prop_assert_eq!(r.verdict, Goodness::Good);
                prop_assert!(r.decent.iter().all(|&c| c));
                prop_assert!(r.checks.iter().all(|c| c.removed_edges > 0));
            }
            Ok(GoodSetSearch::None { facts, .. }) => {
                prop_assert!(facts.perfect_matching);
                prop_assert!(facts.minimal_sets_are_c4, "{:?}", facts.offenders);
            }
            Ok(GoodSetSearch::Inconclusive { .. }) => {}
        }
    }
}

#[test]
fn two_disjoint_four_cycles() {
    let g = BipartiteMultigraph::from_indices(
        4,
        4,
        &[(0, 0), (1, 0), (1, 1), (0, 1), (2, 2), (3, 2), (3, 3), (2, 3)],
    )
    .unwrap();
    match find_good_set(&g, &Certifier::default(), 16).unwrap() {
        GoodSetSearch::None { facts, .. } => assert!(facts.perfect_matching && facts.minimal_sets_are_c4),
        GoodSetSearch::Found(r) => panic!("unexpected good set {r:?}"),
        GoodSetSearch::Inconclusive { undecided, .. } => panic!("undecided {undecided:?}"),
    }
}

#[test]
fn four_path_is_handled() {
    let g = BipartiteMultigraph::from_indices(2, 2, &[(0, 0), (1, 0), (1, 1)]).unwrap();
    let r = find_good_set(&g, &Certifier::default(), 16).unwrap();
    if let GoodSetSearch::None { facts, .. } = r {
        assert!(facts.perfect_matching && facts.minimal_sets_are_c4);
    }
}
