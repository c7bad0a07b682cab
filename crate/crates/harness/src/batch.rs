//! Batch verification over a universe, with line-delimited JSON output and
//! a result cache keyed by canonical instance hashes.

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rayon::prelude::*;
use ryser_core::meshulam::PsiConfig;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::checks::{check_bipartite, check_hypergraph, Check, CheckConfig, Record};
use crate::universe::{Item, Universe};

/// Environment variable naming the cache directory. Caching is off when it
/// is unset.
pub const CACHE_ENV: &str = "RYSER_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BatchConfig {
    pub universe: Universe,
    pub checks: Vec<Check>,
    #[serde(default = "default_budget")]
    pub psi_budget: u64,
}

fn default_budget() -> u64 {
    PsiConfig::default().budget
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Summary {
    pub config: BatchConfig,
    pub instances: usize,
    pub with_violations: usize,
    pub violations: usize,
    pub with_guards: usize,
    pub flags: BTreeMap<String, usize>,
    pub by_nu: BTreeMap<usize, usize>,
    /// Canonical keys of instances with violations, in record order.
    pub failures: Vec<String>,
    /// Seconds since the epoch; the only field that differs between runs.
    pub timestamp: u64,
}

#[derive(Clone, Debug)]
pub struct BatchReport {
    pub records: Vec<Record>,
    pub summary: Summary,
    pub cache_hits: usize,
}

impl BatchReport {
    pub fn exit_code(&self) -> u8 {
        if self.summary.with_violations > 0 {
            1
        } else if self.summary.with_guards > 0 {
            3
        } else {
            0
        }
    }

    /// Writes `records.jsonl` and `summary.json` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let mut w = BufWriter::new(File::create(dir.join("records.jsonl"))?);
        for r in &self.records {
            serde_json::to_writer(&mut w, r)?;
            w.write_all(b"\n")?;
        }
        w.flush()?;
        let mut s = serde_json::to_string_pretty(&self.summary)?;
        s.push('\n');
        fs::write(dir.join("summary.json"), s)?;
        Ok(())
    }
}

/// Stored records of earlier runs, one JSON object per line.
pub struct Cache {
    path: PathBuf,
    entries: HashMap<String, Record>,
    pending: Vec<(String, Record)>,
}

#[derive(Serialize, Deserialize)]
struct CacheLine {
    key: String,
    record: Record,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        let path = dir.join("records.jsonl");
        let mut entries = HashMap::new();
        if path.exists() {
            for line in BufReader::new(File::open(&path)?).lines() {
                let line = line?;
                // a truncated last line from an interrupted run is skipped
                if let Ok(c) = serde_json::from_str::<CacheLine>(&line) {
                    entries.insert(c.key, c.record);
                }
            }
        }
        Ok(Self { path, entries, pending: Vec::new() })
    }

    pub fn from_env() -> Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Ok(Some(Self::open(Path::new(&d))?)),
            _ => Ok(None),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&Record> {
        self.entries.get(key)
    }

    pub fn insert(&mut self, key: String, record: Record) {
        self.pending.push((key.clone(), record.clone()));
        self.entries.insert(key, record);
    }

    pub fn flush(&mut self) -> Result<()> {
        if self.pending.is_empty() {
            return Ok(());
        }
        let f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut w = BufWriter::new(f);
        for (key, record) in self.pending.drain(..) {
            serde_json::to_writer(&mut w, &CacheLine { key, record })?;
            w.write_all(b"\n")?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Hash of the canonical form together with everything that affects the
/// record: crate version, check list and ψ budget.
pub fn cache_key(canonical: &str, cfg: &BatchConfig) -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION"));
    for c in &cfg.checks {
        h.update(c.name());
        h.update(b",");
    }
    h.update(cfg.psi_budget.to_le_bytes());
    h.update(canonical);
    hex::encode(h.finalize())
}

fn item_key(item: &Item) -> String {
    match item {
        Item::Bipartite(g) => crate::checks::bipartite_key(g),
        Item::Hypergraph(h) => crate::checks::hypergraph_key(h),
    }
}

pub fn batch_verify(cfg: &BatchConfig, mut cache: Option<&mut Cache>) -> Result<BatchReport> {
    let items = cfg.universe.items()?;
    let keys: Vec<String> = items.iter().map(|i| cache_key(&item_key(i), cfg)).collect();
    let check_cfg = CheckConfig { psi: PsiConfig { budget: cfg.psi_budget, ..PsiConfig::default() } };
    let bip: Vec<Check> = cfg.checks.iter().copied().filter(|c| !c.for_hypergraphs()).collect();
    let hyp: Vec<Check> = cfg.checks.iter().copied().filter(|c| c.for_hypergraphs()).collect();
    let cached: Vec<Option<Record>> = keys.iter().map(|k| cache.as_ref().and_then(|c| c.get(k).cloned())).collect();
    let cache_hits = cached.iter().filter(|c| c.is_some()).count();
    let records: Vec<Record> = items
        .par_iter()
        .zip(cached.into_par_iter())
        .map(|(item, hit)| {
            hit.unwrap_or_else(|| match item {
                Item::Bipartite(g) => check_bipartite(g, &bip, &check_cfg),
                Item::Hypergraph(h) => check_hypergraph(h, &hyp, &check_cfg),
            })
        })
        .collect();
    if let Some(c) = cache.as_deref_mut() {
        for (k, r) in keys.iter().zip(&records) {
            if c.get(k).is_none() {
                c.insert(k.clone(), r.clone());
            }
        }
        c.flush()?;
    }
    let summary = summarize(cfg, &records);
    Ok(BatchReport { records, summary, cache_hits })
}

pub fn summarize(cfg: &BatchConfig, records: &[Record]) -> Summary {
    let mut flags: BTreeMap<String, usize> = BTreeMap::new();
    let mut by_nu: BTreeMap<usize, usize> = BTreeMap::new();
    for r in records {
        for f in &r.flags {
            *flags.entry(f.clone()).or_default() += 1;
        }
        *by_nu.entry(r.nu).or_default() += 1;
    }
    let timestamp = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    Summary {
        config: cfg.clone(),
        instances: records.len(),
        with_violations: records.iter().filter(|r| !r.violations.is_empty()).count(),
        violations: records.iter().map(|r| r.violations.len()).sum(),
        with_guards: records.iter().filter(|r| !r.guards.is_empty()).count(),
        flags,
        by_nu,
        failures: records.iter().filter(|r| !r.violations.is_empty()).map(|r| r.canonical.clone()).collect(),
        timestamp,
    }
}

pub fn read_records(path: &Path) -> Result<Vec<Record>> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).with_context(|| format!("{} line {}", path.display(), i + 1))?);
    }
    Ok(out)
}
