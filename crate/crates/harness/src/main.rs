use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use ryser_core::cpdecomp::{check_characterization, verify_cp, CharacterizationStatus};
use ryser_core::goodsets::{find_good_set, is_good, GoodReport, GoodSetSearch, Goodness, VertexSubset, SUBSET_GUARD};
use ryser_core::graphs::{line_graph, line_graph_3, link_graph_by_labels, max_matching_bipartite};
use ryser_core::meshulam::{psi, Certifier, PsiConfig};
use ryser_core::ryser::{ryser_numbers, verify_connoflink, verify_deficiency_bound, verify_linkconn_bounds, DeficiencyHypothesis};
use ryser_core::topology::{ceil_half_minus_two, independence_conn_h, IndependenceOptions};
use ryser_core::{ConnValue, Matching, Side, SimpleGraph};
use ryser_harness::batch::{batch_verify, read_records, BatchConfig, Cache};
use ryser_harness::checks::{is_guard, Check};
use ryser_harness::io::{
    conn_json, decomposition_from_json, decomposition_to_json, read_bipartite, read_hypergraph, read_instance,
    window_json, BipartiteJson, DecompositionJson, HypergraphJson, Instance,
};
use ryser_harness::report::render_svg;
use ryser_harness::universe::{bipartite_universe, Universe};
use serde_json::{json, Value};

const OK: u8 = 0;
const VIOLATION: u8 = 1;
const USAGE: u8 = 2;
const GUARD: u8 = 3;

/// Matching, cover, connectedness and CP-decomposition tools for bipartite
/// multigraphs and 3-partite 3-graphs.
#[derive(Parser)]
#[command(name = "ryser", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// conn_H of the independence complex of the line graph.
    Conn {
        instance: PathBuf,
        /// Highest homology dimension scanned (default: the matching number).
        #[arg(long)]
        cap: Option<i32>,
    },
    /// The ψ lower bound of the line graph.
    Psi {
        instance: PathBuf,
        #[arg(long, default_value_t = PsiConfig::default().budget)]
        budget: u64,
    },
    /// Search for a CP-decomposition with respect to a maximum matching.
    CpFind { graph: PathBuf },
    /// Check a CP-decomposition; the matching is the union of the blocks'
    /// matching edges.
    CpVerify { graph: PathBuf, decomposition: PathBuf },
    /// Decent and good sets.
    GoodSets {
        graph: PathBuf,
        /// Report every nonempty subset of both classes.
        #[arg(long, conflicts_with = "first")]
        all: bool,
        /// Stop at the first good set (default).
        #[arg(long)]
        first: bool,
    },
    /// ν, τ, extremality and link checks of a 3-graph.
    RyserCheck { hypergraph: PathBuf },
    /// The link graph of a vertex subset of one class.
    Link {
        hypergraph: PathBuf,
        #[arg(long)]
        class: usize,
        /// Comma-separated vertex labels; empty for S = ∅.
        #[arg(long, default_value = "")]
        subset: String,
    },
    /// The deficiency bound for one class.
    Deficiency {
        hypergraph: PathBuf,
        #[arg(long)]
        class: usize,
        #[arg(long)]
        d: usize,
    },
    /// Print every instance of a universe, one JSON object per line.
    Enumerate(EnumerateArgs),
    /// Run checks over a universe and write records and a summary.
    Batch(BatchArgs),
    /// Plot conn_H against ν for a batch output as SVG.
    Report {
        /// Batch output directory or a records file.
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct EnumerateArgs {
    /// bipartite or hypergraph
    kind: String,
    #[arg(long, default_value_t = 2)]
    max_a: usize,
    #[arg(long, default_value_t = 2)]
    max_b: usize,
    #[arg(long, default_value_t = 1)]
    max_mult: usize,
    /// Keep only bipartite graphs with this matching number.
    #[arg(long)]
    nu: Option<usize>,
    /// Class sizes of 3-graphs, e.g. 2,2,3.
    #[arg(long, default_value = "2,2,2")]
    sizes: String,
}

#[derive(Args)]
struct BatchArgs {
    config: PathBuf,
    /// Output directory (default: batch-out).
    #[arg(long, default_value = "batch-out")]
    out: PathBuf,
    /// Override the configured checks, comma-separated.
    #[arg(long)]
    checks: Option<String>,
    /// Override the seed of a sampled universe.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the size of a sampled universe.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    psi_budget: Option<u64>,
    /// Ignore the cache directory even if it is set.
    #[arg(long)]
    no_cache: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_guard(&e) { GUARD } else { USAGE })
        }
    }
}

/// Writes one line to stdout; a closed pipe ends the process quietly.
fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{line}").is_err() {
        std::process::exit(OK.into());
    }
}

fn print(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("serializable"));
}

fn line_of(inst: &Instance) -> (SimpleGraph, usize) {
    match inst {
        Instance::Bipartite(g) => (line_graph(g), max_matching_bipartite(g).len()),
        Instance::Hypergraph(h) => {
            let nu = h.matching_number(ryser_core::graphs::DEFAULT_CLASS_GUARD).unwrap_or(0);
            (line_graph_3(h), nu)
        }
    }
}

fn run(cmd: Cmd) -> Result<u8> {
    match cmd {
        Cmd::Conn { instance, cap } => {
            let inst = read_instance(&instance)?;
            if let Instance::Hypergraph(h) = &inst {
                h.check_guard(ryser_core::graphs::DEFAULT_CLASS_GUARD)?;
            }
            let (l, nu) = line_of(&inst);
            // independent sets of a line graph are matchings, so cap ν is exhaustive
            let cap = cap.unwrap_or(nu as i32);
            let window = independence_conn_h(&l, cap, IndependenceOptions::default())?;
            let floor = match inst {
                Instance::Bipartite(_) => ConnValue::Finite(ceil_half_minus_two(nu)),
                Instance::Hypergraph(_) => ConnValue::Finite(if l.is_empty() { -2 } else { -1 }),
            };
            let (certified, _) = Certifier::default().exact(&l, floor, cap)?;
            print(&json!({
                "nu": nu,
                "lineGraphVertices": l.vertex_count(),
                "cap": cap,
                "connH": window_json(window),
                "conn": certified.map(conn_json),
            }));
            Ok(OK)
        }
        Cmd::Psi { instance, budget } => {
            let (l, nu) = line_of(&read_instance(&instance)?);
            let (v, stats) = psi(&l, PsiConfig { budget, homology_prune: false })?;
            print(&json!({ "nu": nu, "psi": conn_json(v), "nodes": stats.nodes, "memoHits": stats.memo_hits }));
            Ok(OK)
        }
        Cmd::CpFind { graph } => {
            let g = read_bipartite(&graph)?;
            let r = check_characterization(&g)?;
            let mut out = json!({
                "nu": r.nu,
                "matching": r.matching.edges(),
                "connH": r.window.map(window_json),
                "homologyExtremal": r.homology_extremal,
                "status": format!("{:?}", r.status),
                "found": r.cp.is_some(),
            });
            if let Some(d) = &r.cp {
                out["blocks"] = serde_json::to_value(decomposition_to_json(&g, d).blocks)?;
            }
            print(&out);
            Ok(if r.status == CharacterizationStatus::Violation { VIOLATION } else { OK })
        }
        Cmd::CpVerify { graph, decomposition } => {
            let g = read_bipartite(&graph)?;
            let text = std::fs::read_to_string(&decomposition).with_context(|| format!("reading {}", decomposition.display()))?;
            let dj: DecompositionJson = serde_json::from_str(&text).context("malformed decomposition")?;
            let d = decomposition_from_json(&g, &dj)?;
            let mut m: Vec<usize> = d.blocks.iter().flat_map(|b| b.m_edges.iter().copied()).collect();
            m.sort_unstable();
            let m = Matching::new(&g, m)?;
            let v = verify_cp(&g, &line_graph(&g), &m, &d);
            let violations: Vec<Value> = v
                .violations
                .iter()
                .map(|x| json!({ "property": x.property, "block": x.block, "edge": x.edge, "detail": x.detail }))
                .collect();
            print(&json!({ "accepted": v.accepted, "matching": m.edges(), "violations": violations }));
            Ok(if v.accepted { OK } else { VIOLATION })
        }
        Cmd::GoodSets { graph, all, first: _ } => good_sets(&read_bipartite(&graph)?, all),
        Cmd::RyserCheck { hypergraph } => ryser_check(&read_hypergraph(&hypergraph)?),
        Cmd::Link { hypergraph, class, subset } => {
            let h = read_hypergraph(&hypergraph)?;
            let labels: Vec<&str> = subset.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let link = link_graph_by_labels(&h, class, &labels)?;
            let nu = max_matching_bipartite(&link.graph).len();
            let window = independence_conn_h(&line_graph(&link.graph), nu as i32, IndependenceOptions::default())?;
            let colors: Vec<&str> = link.color.iter().map(|&c| h.class(class - 1)[c].as_str()).collect();
            print(&json!({
                "link": BipartiteJson::from_graph(&link.graph),
                "colors": colors,
                "origin": link.origin,
                "nu": nu,
                "connH": window_json(window),
            }));
            Ok(OK)
        }
        Cmd::Deficiency { hypergraph, class, d } => {
            let h = read_hypergraph(&hypergraph)?;
            let r = verify_deficiency_bound(&h, class, d, &Certifier::default())?;
            let labels = h.class(class - 1);
            let per: Vec<Value> = r
                .per_subset
                .iter()
                .map(|(s, dec)| json!({ "subset": s.iter().map(|&i| &labels[i]).collect::<Vec<_>>(), "holds": dec.known() }))
                .collect();
            print(&json!({
                "class": r.class,
                "d": r.d,
                "hypothesis": format!("{:?}", r.hypothesis),
                "nu": r.nu,
                "conclusion": r.conclusion,
                "subsets": per,
            }));
            let code = match (r.hypothesis, r.conclusion) {
                (_, Some(false)) => VIOLATION,
                (DeficiencyHypothesis::Inconclusive, _) => GUARD,
                _ => OK,
            };
            Ok(code)
        }
        Cmd::Enumerate(a) => enumerate(&a),
        Cmd::Batch(a) => batch(a),
        Cmd::Report { input, out } => {
            let (records_path, default_out) = if input.is_dir() {
                (input.join("records.jsonl"), input.join("conn_vs_nu.svg"))
            } else {
                (input.clone(), input.with_extension("svg"))
            };
            let records = read_records(&records_path)?;
            let out = out.unwrap_or(default_out);
            let title = format!("conn_H against matching number ({} records)", records.len());
            std::fs::write(&out, render_svg(&records, &title)).with_context(|| format!("writing {}", out.display()))?;
            emit(&out.display().to_string());
            Ok(OK)
        }
    }
}

fn good_report_json(g: &ryser_core::BipartiteMultigraph, r: &GoodReport) -> Value {
    let side = r.subset.side;
    let labels = g.class(side);
    let others = g.class(side.other());
    json!({
        "side": if side == Side::A { "A" } else { "B" },
        "subset": r.subset.vertices.iter().map(|&i| &labels[i]).collect::<Vec<_>>(),
        "decent": r.decent.iter().all(|&c| c),
        "decentConditions": r.decent,
        "good": format!("{:?}", r.verdict),
        "conn": r.conn.map(conn_json),
        "checks": r.checks.iter().map(|c| json!({
            "y": &others[c.y],
            "removedEdges": c.removed_edges,
            "connH": window_json(c.window),
            "increases": c.increases.known(),
        })).collect::<Vec<_>>(),
    })
}

fn good_sets(g: &ryser_core::BipartiteMultigraph, all: bool) -> Result<u8> {
    let cert = Certifier::default();
    if all {
        let mut out = Vec::new();
        for side in [Side::A, Side::B] {
            let n = g.class_size(side);
            if n > SUBSET_GUARD {
                bail!(ryser_core::goodsets::GoodSetError::Guard { size: n, limit: SUBSET_GUARD });
            }
            for mask in 1u32..1 << n {
                let r = is_good(g, &VertexSubset::from_mask(side, mask), &cert)?;
                out.push(good_report_json(g, &r));
            }
        }
        print(&json!({ "candidates": out }));
        return Ok(OK);
    }
    let res = find_good_set(g, &cert, SUBSET_GUARD)?;
    let (v, code) = match res {
        GoodSetSearch::Found(r) => {
            debug_assert_eq!(r.verdict, Goodness::Good);
            (json!({ "result": "found", "goodSet": good_report_json(g, &r) }), OK)
        }
        GoodSetSearch::None { tested, facts } => {
            let ok = facts.perfect_matching && facts.minimal_sets_are_c4;
            let offenders: Vec<Value> = facts
                .offenders
                .iter()
                .map(|x| json!({ "side": format!("{:?}", x.side), "subset": x.vertices.iter().map(|&i| &g.class(x.side)[i]).collect::<Vec<_>>() }))
                .collect();
            (
                json!({
                    "result": "none",
                    "tested": tested,
                    "perfectMatching": facts.perfect_matching,
                    "minimalSetsAreC4": facts.minimal_sets_are_c4,
                    "offenders": offenders,
                }),
                if ok { OK } else { VIOLATION },
            )
        }
        GoodSetSearch::Inconclusive { tested, undecided } => (
            json!({ "result": "inconclusive", "tested": tested, "undecided": undecided.len() }),
            GUARD,
        ),
    };
    print(&v);
    Ok(code)
}

fn ryser_check(h: &ryser_core::ThreePartiteHypergraph) -> Result<u8> {
    let r = ryser_numbers(h)?;
    let mut out = json!({
        "nu": r.nu,
        "tau": r.tau,
        "tauAtMostTwoNu": r.tau_at_most_two_nu(),
        "extremal": r.is_extremal(),
    });
    let mut code = if r.tau_at_most_two_nu() { OK } else { VIOLATION };
    if r.is_extremal() && r.nu > 0 {
        let ext = verify_connoflink(h, &Certifier::default())?;
        out["links"] = ext
            .per_class
            .iter()
            .map(|c| {
                json!({
                    "class": c.class,
                    "linkNu": c.link_nu,
                    "connH": window_json(c.window),
                    "conn": c.conn.map(conn_json),
                    "connMatches": c.conn_matches,
                    "nuMatches": c.nu_matches,
                    "linkExtremal": c.link_extremal,
                })
            })
            .collect();
        out["consistent"] = json!(ext.consistent());
        out["fullyCertified"] = json!(ext.fully_certified());
        if !ext.consistent() {
            code = VIOLATION;
        }
    }
    let mut bounds = Vec::new();
    for class in 1..=3 {
        let b = verify_linkconn_bounds(h, class)?;
        if b.violations() > 0 {
            code = VIOLATION;
        }
        bounds.push(json!({
            "class": class,
            "subsets": b.subsets.len(),
            "violations": b.violations(),
            "upperWitnesses": b.upper_witnesses.len(),
            "sizeBoundHolds": b.size_bound_holds,
        }));
    }
    out["linkBounds"] = json!(bounds);
    print(&out);
    Ok(code)
}

fn parse_sizes(s: &str) -> Result<[usize; 3]> {
    let v: Vec<usize> = s.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>().context("sizes must be three integers")?;
    match v.as_slice() {
        &[a, b, c] => Ok([a, b, c]),
        _ => bail!("sizes must be three comma-separated integers"),
    }
}

fn enumerate(a: &EnumerateArgs) -> Result<u8> {
    let mut n = 0;
    match a.kind.as_str() {
        "bipartite" => {
            for g in bipartite_universe(a.max_a, a.max_b, a.max_mult, a.nu)? {
                emit(&serde_json::to_string(&BipartiteJson::from_graph(&g))?);
                n += 1;
            }
        }
        "hypergraph" => {
            for h in ryser_core::enumerate::enumerate_three_graphs(parse_sizes(&a.sizes)?)? {
                emit(&serde_json::to_string(&HypergraphJson::from_hypergraph(&h))?);
                n += 1;
            }
        }
        other => bail!("unknown kind `{other}`; expected bipartite or hypergraph"),
    }
    eprintln!("{n} instances");
    Ok(OK)
}

fn batch(a: BatchArgs) -> Result<u8> {
    let text = std::fs::read_to_string(&a.config).with_context(|| format!("reading {}", a.config.display()))?;
    let mut cfg: BatchConfig = serde_json::from_str(&text).context("malformed batch config")?;
    if let Some(list) = &a.checks {
        cfg.checks = list
            .split(',')
            .map(|s| Check::parse(s.trim()).with_context(|| format!("unknown check `{s}`")))
            .collect::<Result<_>>()?;
    }
    if let Some(b) = a.psi_budget {
        cfg.psi_budget = b;
    }
    if a.seed.is_some() || a.count.is_some() {
        let Universe::BipartiteSample(spec) = &mut cfg.universe else {
            bail!("--seed and --count apply only to sampled universes");
        };
        if let Some(s) = a.seed {
            spec.seed = s;
        }
        if let Some(c) = a.count {
            spec.count = c;
        }
    }
    let mut cache = if a.no_cache { None } else { Cache::from_env()? };
    let report = batch_verify(&cfg, cache.as_mut())?;
    report.write(&a.out)?;
    eprintln!(
        "{} instances ({} from cache), {} with violations, {} with guard hits; written to {}",
        report.summary.instances,
        report.cache_hits,
        report.summary.with_violations,
        report.summary.with_guards,
        a.out.display()
    );
    print(&serde_json::to_value(&report.summary)?);
    Ok(report.exit_code())
}
