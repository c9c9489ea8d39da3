//! Exhaustive scans over all pairs `v ≤ w` in `S_n`.
//!
//! Pairs are taken in lexicographic order on `(v, w)` and processed in
//! chunks. Each chunk is mapped in parallel and collected in order, so the
//! output does not depend on the worker count. With a checkpoint path the
//! state after every chunk is written to disk and a later run with the same
//! configuration resumes from it.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{classify, classify_combinatorial, coatoms_closed_form, CaseSelector};
use crate::error::{Error, Result};
use crate::graphs::is_forest_at;
use crate::interval::BruhatInterval;
use crate::perm::{symmetric_group, Permutation, MAX_ENUMERATED_DEGREE};
use crate::polytope::{hull, incidence_isomorphism, interval_points, Incidence};

pub const CHUNK_SIZE: usize = 10_000;
pub const DEFAULT_MAX_N: usize = 6;
/// Degree from which the conjecture and inverse scans need `force`.
pub const LONG_SCAN_N: usize = 6;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    Conjecture,
    Inverse,
    Classify,
    Coatoms,
}

impl ScanMode {
    pub fn name(&self) -> &'static str {
        match self {
            ScanMode::Conjecture => "conjecture",
            ScanMode::Inverse => "inverse",
            ScanMode::Classify => "classify",
            ScanMode::Coatoms => "coatoms",
        }
    }

    pub fn columns(&self) -> &'static [&'static str] {
        match self {
            ScanMode::Conjecture => &["v", "w", "u"],
            ScanMode::Inverse => &["v", "w", "v_inv", "w_inv"],
            ScanMode::Classify => &[
                "v", "w", "dim", "toric", "boolean", "cube", "complexity", "d_v", "d_w", "atoms", "coatoms",
            ],
            ScanMode::Coatoms => &["v", "w", "case", "closed_form", "brute_force", "agree"],
        }
    }

    /// What the hit count of the summary counts.
    pub fn hit_label(&self) -> &'static str {
        match self {
            ScanMode::Conjecture => "counterexamples",
            ScanMode::Inverse => "inequivalent",
            ScanMode::Classify => "cubes",
            ScanMode::Coatoms => "mismatches",
        }
    }
}

impl FromStr for ScanMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conjecture" => Ok(ScanMode::Conjecture),
            "inverse" | "inverse_equivalence" => Ok(ScanMode::Inverse),
            "classify" | "classify_all" => Ok(ScanMode::Classify),
            "coatoms" | "coatom_audit" => Ok(ScanMode::Coatoms),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected conjecture, inverse, classify or coatoms".into(),
            }),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Jsonl,
    Csv,
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub mode: ScanMode,
    pub n: usize,
    pub jobs: usize,
    pub force: bool,
    /// Cross-check every classification against the hull.
    pub verify: bool,
    pub checkpoint: Option<PathBuf>,
    /// Overrides `BIP_MAX_N`.
    pub max_n: Option<usize>,
}

impl ScanConfig {
    pub fn new(mode: ScanMode, n: usize) -> Self {
        ScanConfig {
            mode,
            n,
            jobs: 1,
            force: false,
            verify: false,
            checkpoint: None,
            max_n: None,
        }
    }

    fn limit(&self) -> usize {
        self.max_n.unwrap_or_else(|| {
            std::env::var("BIP_MAX_N")
                .ok()
                .and_then(|s| s.parse().ok())
                .unwrap_or(DEFAULT_MAX_N)
        })
    }

    pub fn check(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::ScanGuard(format!("n = {} is below 2", self.n)));
        }
        let limit = self.limit().min(MAX_ENUMERATED_DEGREE);
        if self.n > limit {
            return Err(Error::ScanGuard(format!(
                "n = {} exceeds the scan limit {limit}; raise BIP_MAX_N to go further",
                self.n
            )));
        }
        let long = matches!(self.mode, ScanMode::Conjecture | ScanMode::Inverse) && self.n >= LONG_SCAN_N;
        if long && !self.force {
            return Err(Error::ScanGuard(format!(
                "the {} scan at n = {} runs for a long time; pass --force",
                self.mode.name(),
                self.n
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub mode: ScanMode,
    pub n: usize,
    pub pairs: usize,
    pub hits: usize,
    /// Counterexamples, inequivalent pairs, classifications or audits, in
    /// pair order.
    pub records: Vec<Value>,
}

impl ScanReport {
    /// The inverse count at `n = 5` is a published figure; others are not.
    pub fn provenance_note(&self) -> Option<&'static str> {
        (self.mode == ScanMode::Inverse && self.n >= 6).then_some("computed here, no published figure to compare")
    }

    pub fn summary(&self) -> Value {
        let mut s = json!({
            "mode": self.mode.name(),
            "n": self.n,
            "pairs": self.pairs,
            self.mode.hit_label(): self.hits,
        });
        if let Some(note) = self.provenance_note() {
            s["note"] = Value::from(note);
        }
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let cols = self.mode.columns();
        let cell = |r: &Value, c: &str| match &r[c] {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        };
        let mut out = String::new();
        match format {
            OutputFormat::Jsonl => {
                for r in &self.records {
                    writeln!(out, "{r}").unwrap();
                }
                writeln!(out, "{}", json!({ "summary": self.summary() })).unwrap();
            }
            OutputFormat::Csv => {
                writeln!(out, "{}", cols.join(",")).unwrap();
                for r in &self.records {
                    let row: Vec<String> = cols.iter().map(|c| cell(r, c)).collect();
                    writeln!(out, "{}", row.join(",")).unwrap();
                }
            }
            OutputFormat::Table => {
                let rows: Vec<Vec<String>> = self
                    .records
                    .iter()
                    .map(|r| cols.iter().map(|c| cell(r, c)).collect())
                    .collect();
                let widths: Vec<usize> = cols
                    .iter()
                    .enumerate()
                    .map(|(k, c)| rows.iter().map(|r| r[k].len()).chain([c.len()]).max().unwrap())
                    .collect();
                let line = |cells: Vec<String>| -> String {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(s, w)| format!("{s:<w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_string()
                };
                writeln!(
                    out,
                    "mode {}  n {}  pairs {}  {} {}",
                    self.mode.name(),
                    self.n,
                    self.pairs,
                    self.mode.hit_label(),
                    self.hits
                )
                .unwrap();
                if let Some(note) = self.provenance_note() {
                    writeln!(out, "note: {note}").unwrap();
                }
                if !rows.is_empty() {
                    writeln!(out, "{}", line(cols.iter().map(|c| c.to_string()).collect())).unwrap();
                    for r in rows {
                        writeln!(out, "{}", line(r)).unwrap();
                    }
                }
            }
        }
        out
    }
}

/// All pairs `v ≤ w` in `S_n`, lexicographic on `(v, w)`.
pub fn bruhat_pairs(n: usize) -> Vec<(Permutation, Permutation)> {
    let group = symmetric_group(n);
    let mut pairs = Vec::new();
    for v in group {
        for w in group {
            if v.bruhat_le(w) {
                pairs.push((*v, *w));
            }
        }
    }
    pairs
}

/// Vertex–facet data kept per polytope by the inverse scan.
#[derive(Debug)]
struct Signature {
    dim: usize,
    f_vector: Vec<usize>,
    incidence: Incidence,
}

type Memo = DashMap<(Permutation, Permutation), Arc<Signature>>;

fn signature(memo: &Memo, v: Permutation, w: Permutation) -> Result<Arc<Signature>> {
    if let Some(s) = memo.get(&(v, w)) {
        return Ok(Arc::clone(&s));
    }
    let interval = BruhatInterval::new(v, w)?;
    let (_, lattice) = hull(&interval_points(&interval));
    let sig = Arc::new(Signature {
        dim: lattice.dim(),
        f_vector: lattice.f_vector(),
        incidence: Incidence::of(&lattice),
    });
    memo.insert((v, w), Arc::clone(&sig));
    Ok(sig)
}

fn equivalent(a: &Signature, b: &Signature) -> bool {
    a.dim == b.dim && a.f_vector == b.f_vector && incidence_isomorphism(&a.incidence, &b.incidence).is_some()
}

/// Outcome for one pair: an optional record and whether it counts as a hit.
type PairResult = (Option<Value>, bool);

fn scan_pair(cfg: &ScanConfig, memo: &Memo, v: Permutation, w: Permutation) -> Result<PairResult> {
    match cfg.mode {
        ScanMode::Conjecture => {
            if !(is_forest_at(&v, &w, &v)? && is_forest_at(&v, &w, &w)?) {
                return Ok((None, false));
            }
            let interval = BruhatInterval::new(v, w)?;
            for u in interval.elements() {
                if !is_forest_at(&v, &w, u)? {
                    return Ok((Some(json!({ "v": v, "w": w, "u": u })), true));
                }
            }
            Ok((None, false))
        }
        ScanMode::Inverse => {
            let (vi, wi) = (v.inverse(), w.inverse());
            if (vi, wi) == (v, w) {
                return Ok((None, false));
            }
            let a = signature(memo, v, w)?;
            let b = signature(memo, vi, wi)?;
            if equivalent(&a, &b) {
                Ok((None, false))
            } else {
                Ok((Some(json!({ "v": v, "w": w, "v_inv": vi, "w_inv": wi })), true))
            }
        }
        ScanMode::Classify => {
            let report = if cfg.verify {
                classify(v, w)?
            } else {
                classify_combinatorial(&BruhatInterval::new(v, w)?)?
            };
            Ok((Some(serde_json::to_value(&report).expect("report serializes")), report.cube))
        }
        ScanMode::Coatoms => {
            if w.length() - v.length() != v.degree() - 1 {
                return Ok((None, false));
            }
            let Ok(closed) = coatoms_closed_form(&v, &w, CaseSelector::Auto) else {
                return Ok((None, false));
            };
            let brute = BruhatInterval::new(v, w)?.coatoms();
            let agree = closed.coatoms == brute;
            let record = json!({
                "v": v,
                "w": w,
                "case": closed.case.to_string(),
                "closed_form": closed.coatoms.len(),
                "brute_force": brute.len(),
                "agree": agree,
            });
            Ok((Some(record), !agree))
        }
    }
}

#[derive(Serialize, serde::Deserialize)]
struct Checkpoint {
    mode: String,
    n: usize,
    chunk_size: usize,
    chunks_done: usize,
    hits: usize,
    records: Vec<Value>,
}

fn load_checkpoint(path: &Path, cfg: &ScanConfig) -> Result<Option<Checkpoint>> {
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(path)?;
    let ck: Checkpoint = serde_json::from_str(&text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    if ck.mode != cfg.mode.name() || ck.n != cfg.n || ck.chunk_size != CHUNK_SIZE {
        return Err(Error::ScanGuard(format!(
            "{} belongs to a different scan ({} at n = {})",
            path.display(),
            ck.mode,
            ck.n
        )));
    }
    Ok(Some(ck))
}

fn save_checkpoint(path: &Path, ck: &Checkpoint) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_string(ck).expect("checkpoint serializes"))?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn run_scan(cfg: &ScanConfig) -> Result<ScanReport> {
    cfg.check()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    let pairs = bruhat_pairs(cfg.n);
    let memo: Memo = DashMap::new();
    let mut state = match &cfg.checkpoint {
        Some(path) => load_checkpoint(path, cfg)?,
        None => None,
    }
    .unwrap_or(Checkpoint {
        mode: cfg.mode.name().to_string(),
        n: cfg.n,
        chunk_size: CHUNK_SIZE,
        chunks_done: 0,
        hits: 0,
        records: Vec::new(),
    });
    let chunks: Vec<&[(Permutation, Permutation)]> = pairs.chunks(CHUNK_SIZE).collect();
    for chunk in chunks.iter().skip(state.chunks_done) {
        let results: Vec<Result<PairResult>> =
            pool.install(|| chunk.par_iter().map(|&(v, w)| scan_pair(cfg, &memo, v, w)).collect());
        for r in results {
            let (record, hit) = r?;
            state.hits += usize::from(hit);
            state.records.extend(record);
        }
        state.chunks_done += 1;
        if let Some(path) = &cfg.checkpoint {
            save_checkpoint(path, &state)?;
        }
    }
    if let Some(path) = &cfg.checkpoint {
        fs::remove_file(path)?;
    }
    Ok(ScanReport {
        mode: cfg.mode,
        n: cfg.n,
        pairs: pairs.len(),
        hits: state.hits,
        records: state.records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_counts() {
        assert_eq!(bruhat_pairs(2).len(), 3);
        assert_eq!(bruhat_pairs(3).len(), 19);
    }

    #[test]
    fn small_scans() {
        let r = run_scan(&ScanConfig::new(ScanMode::Conjecture, 2)).unwrap();
        assert_eq!((r.pairs, r.hits), (3, 0));
        let r = run_scan(&ScanConfig::new(ScanMode::Conjecture, 4)).unwrap();
        assert_eq!(r.hits, 0);
        let r = run_scan(&ScanConfig::new(ScanMode::Inverse, 4)).unwrap();
        assert_eq!(r.hits, 0);
        let r = run_scan(&ScanConfig::new(ScanMode::Coatoms, 4)).unwrap();
        assert_eq!(r.hits, 0);
        assert!(!r.records.is_empty());
    }

    #[test]
    fn guards() {
        assert!(matches!(ScanConfig::new(ScanMode::Inverse, 6).check(), Err(Error::ScanGuard(_))));
        let mut cfg = ScanConfig::new(ScanMode::Inverse, 6);
        cfg.force = true;
        assert!(cfg.check().is_ok());
        cfg.n = 7;
        assert!(matches!(cfg.check(), Err(Error::ScanGuard(_))));
        cfg.max_n = Some(7);
        assert!(cfg.check().is_ok());
        assert!(ScanConfig::new(ScanMode::Classify, 1).check().is_err());
        assert!(ScanConfig::new(ScanMode::Classify, 6).check().is_ok());
    }

    #[test]
    fn renders() {
        let r = run_scan(&ScanConfig::new(ScanMode::Classify, 2)).unwrap();
        let csv = r.render(OutputFormat::Csv);
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.starts_with("v,w,dim,"));
        let jsonl = r.render(OutputFormat::Jsonl);
        let last: Value = serde_json::from_str(jsonl.lines().last().unwrap()).unwrap();
        assert_eq!(last["summary"]["pairs"], 3);
        assert!(r.render(OutputFormat::Table).starts_with("mode classify  n 2  pairs 3"));
    }

    #[test]
    fn resumes_from_checkpoint() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        let mut cfg = ScanConfig::new(ScanMode::Classify, 3);
        cfg.checkpoint = Some(path.clone());
        let fresh = run_scan(&cfg).unwrap();
        assert!(!path.exists());
        let half = Checkpoint {
            mode: "classify".into(),
            n: 3,
            chunk_size: CHUNK_SIZE,
            chunks_done: 1,
            hits: fresh.hits,
            records: fresh.records.clone(),
        };
        save_checkpoint(&path, &half).unwrap();
        assert_eq!(run_scan(&cfg).unwrap(), fresh);
        let wrong = Checkpoint { n: 4, ..half };
        save_checkpoint(&path, &wrong).unwrap();
        assert!(matches!(run_scan(&cfg), Err(Error::ScanGuard(_))));
    }
}
