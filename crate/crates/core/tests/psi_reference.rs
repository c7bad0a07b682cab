use std::collections::HashMap;

use proptest::prelude::*;
use ryser_core::meshulam::{delete_edge, explode_edge, psi, psi_at_least, PsiConfig};
use ryser_core::topology::{independence_conn_h, IndependenceOptions};
use ryser_core::{ConnValue, SimpleGraph};

/// ψ straight from its definition, memoized on (vertices, edges).
fn naive(g: &SimpleGraph) -> ConnValue {
    naive_memo(g, &mut HashMap::new())
}

type Key = (Vec<usize>, Vec<(usize, usize)>);

fn naive_memo(g: &SimpleGraph, memo: &mut HashMap<Key, ConnValue>) -> ConnValue {
    if g.is_empty() {
        return ConnValue::Finite(-2);
    }
    let edges = g.edges();
    if edges.is_empty() {
        return ConnValue::Infinite;
    }
    let key = (g.vertex_ids().to_vec(), edges.clone());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let v = edges
        .iter()
        .map(|&e| {
            let a = naive_memo(&delete_edge(g, e).unwrap(), memo);
            let b = naive_memo(&explode_edge(g, e).unwrap(), memo).plus(1);
            a.min(b)
        })
        .max()
        .unwrap();
    memo.insert(key, v);
    v
}

fn graph(n: usize, mask: u64) -> SimpleGraph {
    let mut e = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> k & 1 == 1 {
                e.push((i, j));
            }
            k += 1;
        }
    }
    SimpleGraph::from_local(n, &e).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (0..=max_n, any::<u64>()).prop_map(|(n, m)| graph(n, m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn search_matches_definition(g in arb_graph(6)) {
        let cfg = PsiConfig::default();
        prop_assert_eq!(psi(&g, cfg).unwrap().0, naive(&g));
    }

    #[test]
    fn bounded_by_homology(g in arb_graph(7)) {
        let (p, _) = psi(&g, PsiConfig::default()).unwrap();
        let w = independence_conn_h(&g, 8, IndependenceOptions { fold: false }).unwrap();
        prop_assert_eq!(w.at_least(p), Some(true));
        let pruned = psi(&g, PsiConfig { homology_prune: true, ..PsiConfig::default() }).unwrap().0;
        prop_assert_eq!(pruned, p);
    }

    #[test]
    fn structural_rules(a in arb_graph(5), b in arb_graph(5)) {
        let cfg = PsiConfig::default();
        let pa = naive(&a);
        let pb = naive(&b);
        let sum = match (pa, pb) {
            (ConnValue::Finite(x), ConnValue::Finite(y)) => ConnValue::Finite(x + y + 2),
            _ => ConnValue::Infinite,
        };
        prop_assert_eq!(psi(&a.disjoint_union(&b), cfg).unwrap().0, sum);
        if let ConnValue::Finite(v) = pa {
            prop_assert!(v <= (a.vertex_count() / 2) as i32 - 2);
        }
        if a.has_isolated_vertex() {
            prop_assert_eq!(pa, ConnValue::Infinite);
        }
        for t in -3..4 {
            let (q, _) = psi_at_least(&a, ConnValue::Finite(t), cfg).unwrap();
            prop_assert_eq!(q, pa >= ConnValue::Finite(t));
        }
    }
}

