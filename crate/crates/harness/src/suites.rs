//! The acceptance criteria as runnable suites. Each returns an [`Outcome`]
//! with the number of checked cases, the violations found and a short note.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use anyhow::Result;
use rayon::prelude::*;
use ryser_core::enumerate::{canonical_code, enumerate_graphs, enumerate_three_graphs, graph_from_code};
use ryser_core::meshulam::{Certifier, PsiConfig};
use ryser_core::ryser::{is_ryser_extremal, ryser_numbers, truncated_fano, verify_connoflink};
use ryser_core::topology::{
    boundary_composes_to_zero, conn_h, independence_complex, independence_conn_h, reduced_homology, ConnValue,
    ConnWindow, IndependenceOptions, SimplicialComplex,
};
use ryser_core::{BipartiteMultigraph, SimpleGraph};

use crate::checks::{check_bipartite, check_hypergraph, Check, CheckConfig, Record};
use crate::universe::{bipartite_universe, sample_bipartite, SampleSpec};

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub checked: usize,
    pub violations: Vec<String>,
    pub note: String,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{status} [{:>2}] {}: {} checked, {} violations, {:.1}s",
            self.id,
            self.title,
            self.checked,
            self.violations.len(),
            self.elapsed.as_secs_f64()
        );
        if !self.note.is_empty() {
            s.push_str(" | ");
            s.push_str(&self.note);
        }
        s
    }
}

/// Sizes of the universes used by the acceptance run.
#[derive(Clone, Debug)]
pub struct Scale {
    pub sweep: (usize, usize, usize),
    pub nu2: (usize, usize, usize),
    pub nu4: SampleSpec,
    pub meshulam_max_n: usize,
    pub join_max_n: usize,
    pub ryser_sizes: [usize; 3],
}

impl Default for Scale {
    fn default() -> Self {
        Self {
            sweep: (3, 3, 2),
            nu2: (4, 4, 2),
            nu4: SampleSpec { max_a: 6, max_b: 6, max_mult: 2, nu: 4, count: 400, seed: 20_24 },
            meshulam_max_n: 9,
            join_max_n: 5,
            ryser_sizes: [3, 3, 3],
        }
    }
}

impl Scale {
    /// Small universes for quick runs.
    pub fn smoke() -> Self {
        Self {
            sweep: (2, 3, 2),
            nu2: (3, 3, 2),
            nu4: SampleSpec { max_a: 5, max_b: 5, max_mult: 2, nu: 4, count: 30, seed: 1 },
            meshulam_max_n: 6,
            join_max_n: 4,
            ryser_sizes: [2, 2, 3],
        }
    }
}

/// Shared instance lists, generated once.
pub struct Universes {
    pub sweep: Vec<BipartiteMultigraph>,
    pub nu2: Vec<BipartiteMultigraph>,
    pub nu4: Vec<BipartiteMultigraph>,
}

impl Universes {
    pub fn build(scale: &Scale) -> Result<Self> {
        let (a, b, m) = scale.sweep;
        let sweep = bipartite_universe(a, b, m, None)?;
        let (a, b, m) = scale.nu2;
        let nu2 = bipartite_universe(a, b, m, Some(2))?;
        let nu4 = sample_bipartite(&scale.nu4);
        Ok(Self { sweep, nu2, nu4 })
    }
}

fn run_checks(gs: &[BipartiteMultigraph], checks: &[Check]) -> Vec<Record> {
    let cfg = CheckConfig::default();
    gs.par_iter().map(|g| check_bipartite(g, checks, &cfg)).collect()
}

/// Violations and guard hits of a record list, with the instance attached.
fn failures(records: &[Record]) -> Vec<String> {
    let mut out = Vec::new();
    for r in records {
        for v in r.violations.iter().chain(&r.guards) {
            out.push(format!("{} {}: {v}", r.canonical, r.instance));
        }
    }
    out
}

fn timed(id: usize, title: &'static str, f: impl FnOnce() -> Result<(usize, Vec<String>, String)>) -> Outcome {
    let start = Instant::now();
    let (checked, violations, note) = match f() {
        Ok(x) => x,
        Err(e) => (0, vec![format!("suite error: {e:#}")], String::new()),
    };
    Outcome { id, title, checked, violations, note, elapsed: start.elapsed() }
}

fn count(records: &[Record], flag: &str) -> usize {
    records.iter().filter(|r| r.has_flag(flag)).count()
}

pub fn line_bound_sweep(u: &Universes) -> Outcome {
    timed(1, "line-graph bound on the full small sweep", || {
        let recs = run_checks(&u.sweep, &[Check::LineBound]);
        let note = format!("psi fell back to the threshold query on {} instances", count(&recs, "psi-exact-budget"));
        Ok((recs.len(), failures(&recs), note))
    })
}

pub fn characterization_nu2(u: &Universes) -> Outcome {
    timed(2, "extremality iff CP-decomposition at nu = 2", || {
        let recs = run_checks(&u.nu2, &[Check::Characterization]);
        let note = format!("{} extremal, {} with CP-decomposition", count(&recs, "extremal"), count(&recs, "cp"));
        Ok((recs.len(), failures(&recs), note))
    })
}

pub fn characterization_nu4(u: &Universes) -> Outcome {
    timed(3, "extremal implies CP-decomposition at nu = 4 (sampled)", || {
        let recs = run_checks(&u.nu4, &[Check::Characterization]);
        let cp = count(&recs, "cp");
        let pi1 = count(&recs, "pi1-inconclusive");
        let rate = if cp == 0 { 0.0 } else { pi1 as f64 / cp as f64 };
        let note = format!(
            "{} extremal, {cp} with CP-decomposition, {pi1} pi1-inconclusive (rate {:.3} of CP-found)",
            count(&recs, "extremal"),
            rate
        );
        Ok((recs.len(), failures(&recs), note))
    })
}

/// `conn_H(I(G))` of every graph on `n` vertices, indexed like
/// `enumerate_graphs(n)`.
fn conn_table(n: usize) -> Result<(Vec<u64>, Vec<ConnValue>)> {
    let codes = enumerate_graphs(n)?;
    let values = codes
        .par_iter()
        .map(|&c| {
            let g = graph_from_code(n, c);
            match independence_conn_h(&g, n as i32, IndependenceOptions::default())? {
                ConnWindow::Exact(v) => Ok(v),
                // dimension is below n, so the full scan cannot stop early
                ConnWindow::AtLeast(_) => Ok(ConnValue::Infinite),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((codes, values))
}

fn masks_of(g: &SimpleGraph) -> Vec<u16> {
    (0..g.vertex_count()).map(|v| g.local_neighbors(v).iter().fold(0u16, |m, &u| m | 1 << u)).collect()
}

fn compact(adj: &[u16], keep: u16) -> Vec<u16> {
    let idx: Vec<usize> = (0..adj.len()).filter(|&v| keep >> v & 1 == 1).collect();
    idx.iter()
        .map(|&v| idx.iter().enumerate().filter(|&(_, &w)| adj[v] >> w & 1 == 1).fold(0u16, |m, (j, _)| m | 1 << j))
        .collect()
}

pub fn meshulam_inequality(max_n: usize) -> Outcome {
    timed(4, "deletion/explosion inequality for conn_H on all small graphs", || {
        let mut tables: Vec<(Vec<u64>, Vec<ConnValue>)> = Vec::new();
        for n in 0..=max_n {
            tables.push(conn_table(n)?);
        }
        let look = |n: usize, adj: &[u16]| -> ConnValue {
            let (codes, vals) = &tables[n];
            let i = codes.binary_search(&canonical_code(n, adj)).expect("every graph is enumerated");
            vals[i]
        };
        let mut checked = 0;
        let mut violations = Vec::new();
        for n in 2..=max_n {
            let (codes, vals) = &tables[n];
            let found: Vec<(usize, Vec<String>)> = codes
                .par_iter()
                .zip(vals.par_iter())
                .map(|(&c, &here)| {
                    let g = graph_from_code(n, c);
                    let adj = masks_of(&g);
                    let mut bad = Vec::new();
                    let edges = g.local_edges();
                    for &(u, v) in &edges {
                        let mut minus = adj.clone();
                        minus[u] &= !(1 << v);
                        minus[v] &= !(1 << u);
                        let del = look(n, &minus);
                        let keep = !(adj[u] | adj[v] | 1 << u | 1 << v) & ((1u32 << n) - 1) as u16;
                        let exp = compact(&adj, keep);
                        let exploded = look(exp.len(), &exp);
                        if here < del.min(exploded.plus(1)) {
                            bad.push(format!(
                                "n={n} code={c} edge ({u},{v}): conn {here}, deletion {del}, explosion {exploded}"
                            ));
                        }
                    }
                    (edges.len(), bad)
                })
                .collect();
            for (e, bad) in found {
                checked += e;
                violations.extend(bad);
            }
        }
        let graphs: usize = tables.iter().map(|t| t.0.len()).sum();
        Ok((checked, violations, format!("{graphs} graphs on at most {max_n} vertices, counted per edge")))
    })
}

fn window_value(w: ConnWindow) -> ConnValue {
    match w {
        ConnWindow::Exact(v) => v,
        ConnWindow::AtLeast(_) => ConnValue::Infinite,
    }
}

pub fn join_inequality(max_n: usize) -> Outcome {
    timed(5, "join inequality on independence complexes", || {
        let mut complexes: Vec<(SimplicialComplex, ConnValue)> = Vec::new();
        for n in 1..=max_n {
            for c in enumerate_graphs(n)? {
                let k = independence_complex(&graph_from_code(n, c), None)?;
                let v = window_value(conn_h(&k, n as i32)?);
                complexes.push((k, v));
            }
        }
        let pairs: Vec<(usize, usize)> =
            (0..complexes.len()).flat_map(|i| (i..complexes.len()).map(move |j| (i, j))).collect();
        let bad: Vec<String> = pairs
            .par_iter()
            .map(|&(i, j)| -> Result<Option<String>> {
                let (c, vc) = &complexes[i];
                let (d, vd) = &complexes[j];
                let cd = c.join_tagged(d)?;
                let cap = (c.vertex_count() + d.vertex_count()) as i32;
                let v = window_value(conn_h(&cd, cap)?);
                let bound = match (vc, vd) {
                    (ConnValue::Finite(x), ConnValue::Finite(y)) => ConnValue::Finite(x + y + 2),
                    _ => ConnValue::Infinite,
                };
                Ok((v < bound).then(|| format!("pair ({i}, {j}): conn {v} below {bound}")))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        Ok((pairs.len(), bad, format!("{} complexes", complexes.len())))
    })
}

pub fn reduced_lemmas(u: &Universes) -> Outcome {
    timed(6, "degree and alternating lemmas on M-reduced extremal structures", || {
        let recs = run_checks(&u.nu2, &[Check::Characterization, Check::Lemmas]);
        let reduced: Vec<&Record> = recs.iter().filter(|r| r.lemmas.contains_key("degree")).collect();
        let sum = |k: &str| reduced.iter().map(|r| r.lemmas.get(k).copied().unwrap_or(0)).sum::<usize>();
        let note = format!(
            "degree {} / alternating {} / c4-adjacency {} / long-path {} violations",
            sum("degree"),
            sum("alternating"),
            sum("c4-adjacency"),
            sum("long-path")
        );
        let recs: Vec<Record> = recs.iter().filter(|r| r.has_flag("extremal")).cloned().collect();
        Ok((reduced.len(), failures(&recs), note))
    })
}

pub fn switching(u: &Universes) -> Outcome {
    timed(7, "reach and CP existence under C4-switches", || {
        let mut gs = u.nu2.clone();
        gs.extend(u.nu4.iter().cloned());
        let recs = run_checks(&gs, &[Check::Characterization, Check::Switch]);
        let recs: Vec<Record> = recs.into_iter().filter(|r| r.has_flag("extremal")).collect();
        let switchable = count(&recs, "switchable");
        Ok((recs.len(), failures(&recs), format!("{switchable} extremal instances have an alternating 4-cycle")))
    })
}

pub fn good_sets(u: &Universes) -> Outcome {
    timed(8, "decent, equineighbored and good-set lemmas", || {
        let mut gs = u.nu2.clone();
        gs.extend(u.nu4.iter().cloned());
        let recs = run_checks(&gs, &[Check::GoodSets]);
        let searched = recs.iter().filter(|r| r.good_set.is_some()).count();
        let none = recs.iter().filter(|r| r.good_set.as_deref() == Some("none")).count();
        let note = format!(
            "good-set search on {searched} extremal instances: {none} without a good set, {} inconclusive",
            count(&recs, "good-set-inconclusive")
        );
        Ok((recs.len(), failures(&recs), note))
    })
}

pub fn ryser_suite(sizes: [usize; 3]) -> Outcome {
    timed(9, "Ryser fixture, its links, and tau <= 2 nu", || {
        let mut violations = Vec::new();
        let fano = truncated_fano();
        let r = ryser_numbers(&fano)?;
        if (r.tau, r.nu) != (2, 1) || !is_ryser_extremal(&fano)? {
            violations.push(format!("truncated Fano: tau = {}, nu = {}", r.tau, r.nu));
        }
        let ext = verify_connoflink(&fano, &Certifier::default())?;
        for c in &ext.per_class {
            if c.window != ConnWindow::Exact(ConnValue::Finite(-1)) || c.link_nu != 2 {
                violations.push(format!("truncated Fano class {}: conn_H {}, link nu {}", c.class, c.window, c.link_nu));
            }
        }
        let cfg = CheckConfig { psi: PsiConfig::default() };
        let all = enumerate_three_graphs(sizes)?;
        let recs: Vec<Record> = all.par_iter().map(|h| check_hypergraph(h, &[Check::Ryser], &cfg)).collect();
        violations.extend(failures(&recs));
        let mut by_nu: HashMap<usize, (usize, usize)> = HashMap::new();
        for r in &recs {
            let e = by_nu.entry(r.nu).or_default();
            e.0 += 1;
            if r.has_flag("extremal") {
                e.1 += 1;
            }
        }
        let mut keys: Vec<_> = by_nu.into_iter().collect();
        keys.sort();
        let hist: Vec<String> = keys.iter().map(|(nu, (n, x))| format!("nu={nu}: {n} ({x} extremal)")).collect();
        let note = format!("{} uncertified link conn; {}", count(&recs, "link-conn-uncertified"), hist.join(", "));
        Ok((recs.len() + 1, violations, note))
    })
}

fn cycle(n: usize) -> SimpleGraph {
    let e: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    SimpleGraph::from_local(n, &e).expect("valid cycle")
}

fn ranks(c: &SimplicialComplex, max_dim: i32) -> Result<Vec<(usize, usize)>> {
    Ok(reduced_homology(c, max_dim)?.iter().map(|h| (h.rank, h.torsion.len())).collect())
}

pub fn homology_sanity() -> Outcome {
    timed(10, "boundary maps, spheres and cones", || {
        let mut violations = Vec::new();
        let mut checked = 0;
        let c5 = independence_complex(&cycle(5), None)?;
        checked += 1;
        if ranks(&c5, 2)? != [(0, 0), (0, 0), (1, 0), (0, 0)] {
            violations.push(format!("I(C5) homology {:?}", ranks(&c5, 2)?));
        }
        let k22 = independence_complex(&cycle(4), None)?;
        checked += 1;
        if ranks(&k22, 1)? != [(0, 0), (1, 0), (0, 0)] {
            violations.push(format!("I(K22) homology {:?}", ranks(&k22, 1)?));
        }
        for n in 1..=6 {
            for code in enumerate_graphs(n)? {
                let k = independence_complex(&graph_from_code(n, code), None)?;
                checked += 1;
                if !boundary_composes_to_zero(&k)? {
                    violations.push(format!("boundary of boundary nonzero for n={n} code={code}"));
                }
                if n <= 5 {
                    let cone = k.cone(n)?;
                    checked += 1;
                    if !boundary_composes_to_zero(&cone)? || reduced_homology(&cone, n as i32)?.iter().any(|h| !h.is_trivial())
                    {
                        violations.push(format!("cone over I(G) not acyclic for n={n} code={code}"));
                    }
                }
            }
        }
        Ok((checked, violations, String::new()))
    })
}

/// Runs all ten criteria in order.
/// Runs every criterion in order, handing each outcome to `report` as soon
/// as it is known.
pub fn run_each(scale: &Scale, mut report: impl FnMut(&Outcome)) -> Result<Vec<Outcome>> {
    let u = Universes::build(scale)?;
    let steps: Vec<Box<dyn Fn() -> Outcome + '_>> = vec![
        Box::new(|| line_bound_sweep(&u)),
        Box::new(|| characterization_nu2(&u)),
        Box::new(|| characterization_nu4(&u)),
        Box::new(|| meshulam_inequality(scale.meshulam_max_n)),
        Box::new(|| join_inequality(scale.join_max_n)),
        Box::new(|| reduced_lemmas(&u)),
        Box::new(|| switching(&u)),
        Box::new(|| good_sets(&u)),
        Box::new(|| ryser_suite(scale.ryser_sizes)),
        Box::new(homology_sanity),
    ];
    let mut out = Vec::with_capacity(steps.len());
    for step in steps {
        let o = step();
        report(&o);
        out.push(o);
    }
    Ok(out)
}

pub fn run_all(scale: &Scale) -> Result<Vec<Outcome>> {
    run_each(scale, |_| {})
}
