//! Per-instance checks. Each check fills in part of a [`Record`] and appends
//! violations, inconclusive flags and guard hits to it.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use anyhow::Result;
use ryser_core::cpdecomp::{
    check_characterization, lemmas, verify_cp, CharacterizationReport, CharacterizationStatus, CpError,
};
use ryser_core::enumerate::{bipartite_canonical_rows, EnumError, SupportGroup};
use ryser_core::goodsets::{
    decent_from_matching, equineighbored_sets, find_good_set, is_decent, neighborhood, perfect_closure,
    GoodSetError, GoodSetSearch, VertexSubset, SUBSET_GUARD,
};
use ryser_core::graphs::{line_graph, max_matching_bipartite};
use ryser_core::meshulam::{m_reduce, psi, psi_at_least, Certifier, HomologyOracle, MeshulamError, PsiConfig};
use ryser_core::ryser::{ryser_numbers, verify_connoflink, verify_linkconn_bounds};
use ryser_core::topology::{ceil_half_minus_two, independence_conn_h, IndependenceOptions};
use ryser_core::{BipartiteMultigraph, ConnValue, Matching, Side, SimpleGraph, ThreePartiteHypergraph};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::io::{conn_json, window_json, BipartiteJson, HypergraphJson};

/// Step limit for the alternating-path enumeration.
pub const ALTERNATING_LIMIT: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// `conn_H` and ψ of the line graph against `ν/2 - 2`.
    LineBound,
    /// Extremality of the line graph against the CP search.
    Characterization,
    /// Degree, alternating, C4-adjacency and long-path facts on the
    /// M-reduced line graph of extremal instances.
    Lemmas,
    /// Reach sets and CP existence under C4-switches.
    Switch,
    /// Decent, equineighbored and good sets.
    GoodSets,
    /// `ν`, `τ` and, for extremal 3-graphs, their links.
    Ryser,
}

impl Check {
    pub const ALL: [Check; 6] =
        [Check::LineBound, Check::Characterization, Check::Lemmas, Check::Switch, Check::GoodSets, Check::Ryser];

    pub fn name(self) -> &'static str {
        match self {
            Check::LineBound => "line-bound",
            Check::Characterization => "characterization",
            Check::Lemmas => "lemmas",
            Check::Switch => "switch",
            Check::GoodSets => "good-sets",
            Check::Ryser => "ryser",
        }
    }

    pub fn parse(s: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == s)
    }

    pub fn for_hypergraphs(self) -> bool {
        self == Check::Ryser
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct Record {
    pub kind: String,
    pub canonical: String,
    pub instance: Value,
    pub nu: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conn: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cp: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub good_set: Option<String>,
    /// Violation count per lemma checked.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub lemmas: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub guards: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

impl Record {
    fn violation(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }

    fn flag(&mut self, msg: impl Into<String>) {
        let msg = msg.into();
        if !self.flags.contains(&msg) {
            self.flags.push(msg);
        }
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }
}

fn max_mult(g: &BipartiteMultigraph) -> usize {
    g.multiplicity_matrix().iter().flatten().copied().max().unwrap_or(0).max(1) as usize
}

/// Canonical key of a bipartite multigraph up to isomorphism when the
/// canonicalizer's guard allows it, otherwise its sorted edge list.
pub fn bipartite_key(g: &BipartiteMultigraph) -> String {
    let (a, b) = (g.class_a().len(), g.class_b().len());
    let mult = max_mult(g);
    match bipartite_canonical_rows(g, mult) {
        Ok(rows) => {
            let rows: Vec<String> = rows.iter().map(u32::to_string).collect();
            format!("b:{a}x{b}:m{mult}:{}", rows.join("."))
        }
        Err(_) => {
            let mut e = g.edges().to_vec();
            e.sort_unstable();
            let e: Vec<String> = e.iter().map(|(x, y)| format!("{x}-{y}")).collect();
            format!("b-raw:{a}x{b}:{}", e.join("."))
        }
    }
}

/// Canonical key of a 3-graph: the canonical support mask for simple
/// 3-graphs within the guard, otherwise the sorted triple list.
pub fn hypergraph_key(h: &ThreePartiteHypergraph) -> String {
    let [x, y, z] = h.class_sizes();
    let mut e = h.edges().to_vec();
    e.sort_unstable();
    let simple = e.windows(2).all(|w| w[0] != w[1]);
    match support_mask(h) {
        Ok(mask) if simple => format!("h:{x}x{y}x{z}:{mask}"),
        _ => {
            let e: Vec<String> = e.iter().map(|t| format!("{}-{}-{}", t[0], t[1], t[2])).collect();
            format!("h-raw:{x}x{y}x{z}:{}", e.join("."))
        }
    }
}

thread_local! {
    static GROUPS: RefCell<HashMap<[usize; 3], Rc<SupportGroup>>> = RefCell::new(HashMap::new());
}

fn support_mask(h: &ThreePartiteHypergraph) -> Result<u32, EnumError> {
    let sizes = h.class_sizes();
    let group = GROUPS.with(|g| -> Result<Rc<SupportGroup>, EnumError> {
        if let Some(x) = g.borrow().get(&sizes) {
            return Ok(x.clone());
        }
        let x = Rc::new(SupportGroup::new(sizes)?);
        g.borrow_mut().insert(sizes, x.clone());
        Ok(x)
    })?;
    group.canonical_mask(h)
}

/// Drops isolated vertices, keeping labels and edge order.
pub fn strip_isolated(g: &BipartiteMultigraph) -> BipartiteMultigraph {
    let keep = |side: Side| -> Vec<String> {
        (0..g.class_size(side)).filter(|&i| g.degree(g.vertex(side, i)) > 0).map(|i| g.class(side)[i].clone()).collect()
    };
    let edges: Vec<(String, String)> =
        g.edges().iter().map(|&(a, b)| (g.class_a()[a].clone(), g.class_b()[b].clone())).collect();
    BipartiteMultigraph::new(keep(Side::A), keep(Side::B), &edges).expect("subgraph of a valid graph")
}

#[derive(Clone, Copy, Debug)]
pub struct CheckConfig {
    pub psi: PsiConfig,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self { psi: PsiConfig::default() }
    }
}

struct Extremal {
    j: SimpleGraph,
    m: Matching,
}

pub fn check_bipartite(g: &BipartiteMultigraph, checks: &[Check], cfg: &CheckConfig) -> Record {
    let m = max_matching_bipartite(g);
    let mut rec = Record {
        kind: "bipartite".into(),
        canonical: bipartite_key(g),
        instance: serde_json::to_value(BipartiteJson::from_graph(g)).expect("serializable"),
        nu: m.len(),
        ..Record::default()
    };
    let mut report = None;
    let mut reduced = None;
    for &c in checks {
        let res = match c {
            Check::LineBound => line_bound(g, cfg, &mut rec),
            Check::Characterization => characterization(g, &mut rec, &mut report).map(|_| ()),
            Check::Lemmas => with_reduced(g, &mut rec, &mut report, &mut reduced).map(|r| {
                if let Some(x) = r {
                    lemma_checks(g, x, &mut rec);
                }
            }),
            Check::Switch => with_reduced(g, &mut rec, &mut report, &mut reduced).map(|r| {
                if let Some(x) = r {
                    switch_checks(g, x, &mut rec);
                }
            }),
            Check::GoodSets => good_sets(g, cfg, &mut rec),
            Check::Ryser => Ok(()),
        };
        if let Err(e) = res {
            record_error(&mut rec, c, &e);
        }
    }
    rec
}

pub fn check_hypergraph(h: &ThreePartiteHypergraph, checks: &[Check], cfg: &CheckConfig) -> Record {
    let mut rec = Record {
        kind: "hypergraph".into(),
        canonical: hypergraph_key(h),
        instance: serde_json::to_value(HypergraphJson::from_hypergraph(h)).expect("serializable"),
        ..Record::default()
    };
    if checks.contains(&Check::Ryser) {
        if let Err(e) = ryser_check(h, cfg, &mut rec) {
            record_error(&mut rec, Check::Ryser, &e);
        }
    }
    rec
}

/// Whether an error is a size guard or search budget rather than a bug.
pub fn is_guard(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        if let Some(e) = c.downcast_ref::<MeshulamError>() {
            return matches!(e, MeshulamError::Budget { .. } | MeshulamError::TooLarge(_));
        }
        if let Some(e) = c.downcast_ref::<CpError>() {
            return matches!(e, CpError::Budget(_));
        }
        if let Some(e) = c.downcast_ref::<GoodSetError>() {
            return matches!(e, GoodSetError::Guard { .. } | GoodSetError::Meshulam(MeshulamError::Budget { .. }));
        }
        if let Some(e) = c.downcast_ref::<ryser_core::ryser::RyserError>() {
            return matches!(e, ryser_core::ryser::RyserError::Guard { .. });
        }
        if let Some(e) = c.downcast_ref::<ryser_core::topology::TopologyError>() {
            use ryser_core::topology::TopologyError as T;
            return matches!(e, T::FaceGuard { .. } | T::MatrixTooLarge { .. } | T::TooManyVertices(_));
        }
        if let Some(e) = c.downcast_ref::<ryser_core::GraphError>() {
            return matches!(e, ryser_core::GraphError::SizeGuard { .. });
        }
        matches!(c.downcast_ref::<EnumError>(), Some(EnumError::Guard { .. }))
    })
}

fn record_error(rec: &mut Record, c: Check, e: &anyhow::Error) {
    let msg = format!("{}: {e:#}", c.name());
    if is_guard(e) {
        rec.guards.push(msg);
    } else {
        rec.violation(format!("error in {msg}"));
    }
}

fn line_bound(g: &BipartiteMultigraph, cfg: &CheckConfig, rec: &mut Record) -> Result<()> {
    let j = line_graph(g);
    let t = ceil_half_minus_two(rec.nu);
    // independent sets of L(G) are matchings, so scanning to ν is exhaustive
    let window = independence_conn_h(&j, rec.nu as i32, IndependenceOptions::default())?;
    rec.conn = Some(window_json(window));
    if window.at_least(ConnValue::Finite(t)) != Some(true) {
        rec.violation(format!("conn_H {window} is below nu/2 - 2 = {t}"));
    }
    let plain = PsiConfig { homology_prune: false, ..cfg.psi };
    match psi(&j, plain) {
        Ok((v, stats)) => {
            rec.psi = Some(serde_json::json!({ "value": conn_json(v), "nodes": stats.nodes, "memoHits": stats.memo_hits }));
            if v < ConnValue::Finite(t) {
                rec.violation(format!("psi {v} is below nu/2 - 2 = {t}"));
            }
            if window.at_least(v) == Some(false) {
                rec.violation(format!("psi {v} exceeds conn_H {window}"));
            }
        }
        Err(MeshulamError::Budget { .. }) => {
            rec.flag("psi-exact-budget");
            let (ok, _) = psi_at_least(&j, ConnValue::Finite(t), plain)?;
            rec.psi = Some(serde_json::json!({ "atLeast": t, "holds": ok }));
            if !ok {
                rec.violation(format!("psi is below nu/2 - 2 = {t}"));
            }
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn characterization<'a>(
    g: &BipartiteMultigraph,
    rec: &mut Record,
    report: &'a mut Option<CharacterizationReport>,
) -> Result<&'a CharacterizationReport> {
    if report.is_none() {
        let r = check_characterization(g)?;
        if let Some(w) = r.window {
            rec.conn.get_or_insert_with(|| window_json(w));
        }
        rec.cp = Some(
            match r.status {
                CharacterizationStatus::Consistent => {
                    if r.cp.is_some() {
                        "consistent-cp"
                    } else {
                        "consistent-no-cp"
                    }
                }
                CharacterizationStatus::Violation => "violation",
                CharacterizationStatus::Pi1Inconclusive => "pi1-inconclusive",
                CharacterizationStatus::NotApplicable => "not-applicable",
            }
            .into(),
        );
        match r.status {
            CharacterizationStatus::Violation => rec.violation(format!(
                "homology extremal: {:?}, CP-decomposition found: {}",
                r.homology_extremal,
                r.cp.is_some()
            )),
            CharacterizationStatus::Pi1Inconclusive => rec.flag("pi1-inconclusive"),
            _ => {}
        }
        if r.homology_extremal == Some(true) {
            rec.flag("extremal");
        }
        if let Some(d) = &r.cp {
            rec.flag("cp");
            let v = verify_cp(g, &line_graph(g), &r.matching, d);
            if !v.accepted {
                rec.violation(format!("returned decomposition fails verification: {:?}", v.violations));
            }
        }
        *report = Some(r);
    }
    Ok(report.as_ref().expect("filled above"))
}

fn with_reduced<'a>(
    g: &BipartiteMultigraph,
    rec: &mut Record,
    report: &mut Option<CharacterizationReport>,
    reduced: &'a mut Option<Option<Extremal>>,
) -> Result<Option<&'a Extremal>> {
    if reduced.is_none() {
        let r = characterization(g, rec, report)?;
        let value = if r.homology_extremal == Some(true) && r.nu >= 2 {
            let j = line_graph(g);
            let m = r.matching.clone();
            let red = m_reduce(&j, m.edges(), &mut HomologyOracle::for_matching(m.len()))?;
            Some(Extremal { j: red.graph, m })
        } else {
            None
        };
        *reduced = Some(value);
    }
    Ok(reduced.as_ref().expect("filled above").as_ref())
}

fn tally(rec: &mut Record, name: &str, found: Result<Vec<lemmas::LemmaViolation>, CpError>) {
    match found {
        Ok(v) => {
            for x in &v {
                rec.violation(format!("{name}: {} (edges {:?})", x.detail, x.edges));
            }
            *rec.lemmas.entry(name.into()).or_default() += v.len();
        }
        Err(CpError::Budget(n)) => rec.guards.push(format!("{name}: step limit {n}")),
        Err(e) => rec.violation(format!("{name}: {e}")),
    }
}

fn lemma_checks(g: &BipartiteMultigraph, x: &Extremal, rec: &mut Record) {
    tally(rec, "degree", Ok(lemmas::degree_violations(g, &x.j, &x.m)));
    tally(rec, "alternating", lemmas::alternating_violations(g, &x.j, &x.m, ALTERNATING_LIMIT));
    tally(rec, "c4-adjacency", Ok(lemmas::c4_adjacency_violations(g, &x.j, &x.m)));
    tally(rec, "long-path", lemmas::long_fact_violations(g, &x.j, &x.m));
}

fn switch_checks(g: &BipartiteMultigraph, x: &Extremal, rec: &mut Record) {
    let cycles = ryser_core::cpdecomp::alternating_c4s(g, &x.j, &x.m).len();
    if cycles > 0 {
        rec.flag("switchable");
    }
    tally(rec, "switch-reach", lemmas::switch_reach_violations(g, &x.j, &x.m));
    tally(rec, "switch-cp", lemmas::undo_switch_violations(g, &x.j, &x.m));
}

fn good_sets(g: &BipartiteMultigraph, cfg: &CheckConfig, rec: &mut Record) -> Result<()> {
    let g = strip_isolated(g);
    let m = max_matching_bipartite(&g);
    for side in [Side::A, Side::B] {
        let (x, x0) = decent_from_matching(&g, &m, side)?;
        let n = neighborhood(&g, &x)?.len();
        if !is_decent(&g, &x)? {
            rec.violation(format!("closure of unsaturated vertices on side {side:?} is not decent"));
        }
        if n + x0.len() != x.len() {
            rec.violation(format!("closure on side {side:?}: |N(X)| = {n}, |X| = {}, |X0| = {}", x.len(), x0.len()));
        }
    }
    let perfect = 2 * m.len() == g.vertex_count();
    if perfect && g.vertex_count() > 0 {
        for side in [Side::A, Side::B] {
            let size = g.class_size(side);
            if size > SUBSET_GUARD {
                rec.guards.push(format!("good-sets: class of size {size}"));
                continue;
            }
            for mask in 1u32..1 << size {
                let x0 = VertexSubset::from_mask(side, mask);
                if let ryser_core::goodsets::Closure::Set(x) = perfect_closure(&g, &m, &x0)? {
                    if neighborhood(&g, &x)?.len() != x.len() {
                        rec.violation(format!("closure of {:?} is not equineighbored", x0.vertices));
                    }
                }
            }
            for x in equineighbored_sets(&g, side, true, SUBSET_GUARD)? {
                if !is_decent(&g, &x)? {
                    rec.violation(format!("minimal equineighbored {:?} on side {side:?} is not decent", x.vertices));
                }
            }
        }
    }
    let nu = m.len();
    if nu >= 2 && nu % 2 == 0 {
        let cert = Certifier::new(PsiConfig { homology_prune: true, ..cfg.psi });
        let k = (nu / 2) as i32;
        if ryser_core::goodsets::line_conn(&g, &cert)? == Some(ConnValue::Finite(k - 2)) {
            let verdict = match find_good_set(&g, &cert, SUBSET_GUARD)? {
                GoodSetSearch::Found(r) => format!("found {:?} {:?}", r.subset.side, r.subset.vertices),
                GoodSetSearch::None { facts, .. } => {
                    if !facts.perfect_matching {
                        rec.violation("no good set but no perfect matching");
                    }
                    if !facts.minimal_sets_are_c4 {
                        rec.violation(format!("no good set but minimal equineighbored sets {:?}", facts.offenders));
                    }
                    "none".into()
                }
                GoodSetSearch::Inconclusive { undecided, .. } => {
                    rec.flag("good-set-inconclusive");
                    format!("inconclusive ({} undecided)", undecided.len())
                }
            };
            rec.good_set = Some(verdict);
        }
    }
    Ok(())
}

fn ryser_check(h: &ThreePartiteHypergraph, cfg: &CheckConfig, rec: &mut Record) -> Result<()> {
    let r = ryser_numbers(h)?;
    rec.nu = r.nu;
    rec.tau = Some(r.tau);
    if !r.tau_at_most_two_nu() {
        rec.violation(format!("tau = {} exceeds 2 nu = {}", r.tau, 2 * r.nu));
    }
    if r.is_extremal() && r.nu > 0 {
        rec.flag("extremal");
        let cert = Certifier::new(PsiConfig { homology_prune: true, ..cfg.psi });
        let ext = verify_connoflink(h, &cert)?;
        if !ext.consistent() {
            rec.violation(format!("link quantities disagree: {:?}", ext.per_class));
        }
        if !ext.fully_certified() {
            rec.flag("link-conn-uncertified");
        }
        for class in 1..=3 {
            let b = verify_linkconn_bounds(h, class)?;
            if b.violations() > 0 {
                rec.violation(format!("class {class}: {} link bound violations", b.violations()));
            }
        }
    }
    Ok(())
}
