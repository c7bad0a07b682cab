//! Instance universes: exhaustive enumerations and seeded samples.

use std::collections::HashSet;

use anyhow::Result;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ryser_core::enumerate::{enumerate_bipartite, enumerate_three_graphs};
use ryser_core::graphs::max_matching_bipartite;
use ryser_core::{BipartiteMultigraph, ThreePartiteHypergraph};
use serde::{Deserialize, Serialize};

use crate::checks::bipartite_key;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Universe {
    /// Every bipartite multigraph up to isomorphism on at most
    /// `maxA + maxB` vertices, optionally with a fixed matching number.
    #[serde(rename_all = "camelCase")]
    Bipartite { max_a: usize, max_b: usize, max_mult: usize, nu: Option<usize> },
    /// Seeded random bipartite multigraphs with a fixed matching number.
    BipartiteSample(SampleSpec),
    /// Every simple 3-partite 3-graph with the given class sizes.
    #[serde(rename_all = "camelCase")]
    Hypergraph { sizes: [usize; 3] },
    /// Named fixtures.
    Fixtures { names: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SampleSpec {
    pub max_a: usize,
    pub max_b: usize,
    pub max_mult: usize,
    pub nu: usize,
    pub count: usize,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub enum Item {
    Bipartite(BipartiteMultigraph),
    Hypergraph(ThreePartiteHypergraph),
}

impl Universe {
    pub fn items(&self) -> Result<Vec<Item>> {
        Ok(match self {
            Universe::Bipartite { max_a, max_b, max_mult, nu } => {
                bipartite_universe(*max_a, *max_b, *max_mult, *nu)?.into_iter().map(Item::Bipartite).collect()
            }
            Universe::BipartiteSample(spec) => sample_bipartite(spec).into_iter().map(Item::Bipartite).collect(),
            Universe::Hypergraph { sizes } => enumerate_three_graphs(*sizes)?.into_iter().map(Item::Hypergraph).collect(),
            Universe::Fixtures { names } => {
                let mut out = Vec::new();
                for n in names {
                    match ryser_core::ryser::fixture(n) {
                        Some(ryser_core::ryser::Fixture::Bipartite(g)) => out.push(Item::Bipartite(g)),
                        Some(ryser_core::ryser::Fixture::Hypergraph(h)) => out.push(Item::Hypergraph(h)),
                        None => anyhow::bail!("unknown fixture `{n}`"),
                    }
                }
                out
            }
        })
    }
}

pub fn bipartite_universe(max_a: usize, max_b: usize, max_mult: usize, nu: Option<usize>) -> Result<Vec<BipartiteMultigraph>> {
    let all = enumerate_bipartite(max_a, max_b, max_mult)?;
    Ok(match nu {
        Some(k) => all.into_iter().filter(|g| max_matching_bipartite(g).len() == k).collect(),
        None => all,
    })
}

/// Half the draws are uniform edge sets; the other half plant `ν/2`
/// disjoint C4s and P4s (some with doubled edges) and add a few random
/// edges, so that extremal instances are well represented. Draws with the
/// wrong matching number and repeated canonical keys are rejected.
pub fn sample_bipartite(spec: &SampleSpec) -> Vec<BipartiteMultigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let attempts = spec.count.saturating_mul(200).max(1000);
    for _ in 0..attempts {
        if out.len() >= spec.count {
            break;
        }
        let g = if rng.random_bool(0.5) { planted(spec, &mut rng) } else { uniform(spec, &mut rng) };
        let Some(g) = g else { continue };
        if max_matching_bipartite(&g).len() != spec.nu {
            continue;
        }
        if seen.insert(bipartite_key(&g)) {
            out.push(g);
        }
    }
    out
}

fn add_edge(mult: &mut [Vec<usize>], a: usize, b: usize, cap: usize) {
    if mult[a][b] < cap {
        mult[a][b] += 1;
    }
}

fn build(mult: &[Vec<usize>], b: usize) -> BipartiteMultigraph {
    let mut edges = Vec::new();
    for (i, row) in mult.iter().enumerate() {
        for j in 0..b {
            edges.extend(std::iter::repeat_n((i, j), row[j]));
        }
    }
    BipartiteMultigraph::from_indices(mult.len(), b, &edges).expect("indices in range")
}

fn uniform(spec: &SampleSpec, rng: &mut ChaCha8Rng) -> Option<BipartiteMultigraph> {
    let a = rng.random_range(spec.nu.max(1)..=spec.max_a);
    let b = rng.random_range(spec.nu.max(1)..=spec.max_b);
    let mut mult = vec![vec![0; b]; a];
    let m = rng.random_range(spec.nu..=(3 * spec.nu).min(a * b * spec.max_mult));
    for _ in 0..m {
        add_edge(&mut mult, rng.random_range(0..a), rng.random_range(0..b), spec.max_mult);
    }
    Some(build(&mult, b))
}

fn planted(spec: &SampleSpec, rng: &mut ChaCha8Rng) -> Option<BipartiteMultigraph> {
    let blocks = spec.nu / 2;
    if 2 * blocks > spec.max_a.min(spec.max_b) {
        return None;
    }
    let a = rng.random_range(2 * blocks..=spec.max_a);
    let b = rng.random_range(2 * blocks..=spec.max_b);
    let mut mult = vec![vec![0; b]; a];
    let mut pa: Vec<usize> = (0..a).collect();
    let mut pb: Vec<usize> = (0..b).collect();
    pa.shuffle(rng);
    pb.shuffle(rng);
    for k in 0..blocks {
        let (a0, a1, b0, b1) = (pa[2 * k], pa[2 * k + 1], pb[2 * k], pb[2 * k + 1]);
        let mut cycle = vec![(a0, b0), (a1, b0), (a1, b1)];
        if rng.random_bool(0.5) {
            cycle.push((a0, b1));
        }
        for (x, y) in cycle {
            let copies = if rng.random_bool(0.25) { 2 } else { 1 };
            for _ in 0..copies {
                add_edge(&mut mult, x, y, spec.max_mult);
            }
        }
    }
    for _ in 0..rng.random_range(0..=3) {
        add_edge(&mut mult, rng.random_range(0..a), rng.random_range(0..b), spec.max_mult);
    }
    Some(build(&mult, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_deterministic_and_distinct() {
        let spec = SampleSpec { max_a: 5, max_b: 5, max_mult: 2, nu: 4, count: 40, seed: 7 };
        let x = sample_bipartite(&spec);
        let y = sample_bipartite(&spec);
        assert_eq!(x.len(), 40);
        let kx: Vec<String> = x.iter().map(bipartite_key).collect();
        let ky: Vec<String> = y.iter().map(bipartite_key).collect();
        assert_eq!(kx, ky);
        assert_eq!(kx.iter().collect::<HashSet<_>>().len(), 40);
        assert!(x.iter().all(|g| max_matching_bipartite(g).len() == 4));
    }

    #[test]
    fn universe_round_trips_through_json() {
        let u = Universe::Bipartite { max_a: 2, max_b: 2, max_mult: 1, nu: Some(2) };
        let text = serde_json::to_string(&u).unwrap();
        assert_eq!(text, r#"{"kind":"bipartite","maxA":2,"maxB":2,"maxMult":1,"nu":2}"#);
        assert_eq!(serde_json::from_str::<Universe>(&text).unwrap(), u);
    }
}
