//! Edge-bound verdicts and verification campaigns.
//!
//! For a graph with parameter interval [lo, hi], the conjectured bound
//! |E| <= t n - C(t+1, 2) is monotone in t for t <= n, so holding at lo
//! certifies a Holds outcome and failing at hi certifies Violates; anything
//! else is Inconclusive. A Violates inside the proven classes can only mean
//! an implementation bug, so campaigns abort loudly on one.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{canonical_form, GraphStream, StreamError, MAX_CANON_VERTICES};
use crate::engine::{mu_bounds, EngineConfig, EngineError, MuBounds, Rule};
use crate::graph::{Graph, GraphError};
use crate::graph6;
use crate::recognizers::chordal_analyze;

/// C(k, 2) in wide arithmetic.
pub fn choose2(k: usize) -> u64 {
    (k as u64) * (k as u64).saturating_sub(1) / 2
}

/// The bound's right-hand side t n - C(t+1, 2); nonnegative for t <= n.
pub fn edge_bound(t: usize, n: usize) -> u64 {
    debug_assert!(t <= n);
    (t as u64) * (n as u64) - choose2(t + 1)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Outcome {
    Holds,
    Violates,
    Inconclusive,
}

/// Class memberships recorded with each verdict.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassTags {
    pub chordal: bool,
    pub co_chordal: bool,
    pub mu_at_most_7: bool,
    pub mu_at_least_n_minus_6: bool,
}

impl ClassTags {
    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.chordal {
            out.push("chordal");
        }
        if self.co_chordal {
            out.push("coChordal");
        }
        if self.mu_at_most_7 {
            out.push("muAtMost7");
        }
        if self.mu_at_least_n_minus_6 {
            out.push("muAtLeastNminus6");
        }
        out
    }
}

/// Per-graph outcome of the edge-bound check.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub canon: String,
    pub n: usize,
    pub m: usize,
    pub bounds: MuBounds,
    pub outcome: Outcome,
    pub tags: ClassTags,
    /// Witness numbers: thresholds at lo and hi.
    pub lo_threshold: u64,
    pub hi_threshold: u64,
    pub elapsed_micros: u64,
}

/// Stable key for a graph: canonical form when it fits, graph6 otherwise.
pub fn graph_key(g: &Graph) -> String {
    if g.n() <= MAX_CANON_VERTICES {
        canonical_form(g).expect("within capacity").hex()
    } else {
        graph6::encode(g)
    }
}

/// Classifies one graph against the edge bound given its engine interval.
pub fn check_conjecture(g: &Graph, bounds: &MuBounds) -> Verdict {
    let n = g.n();
    let m = g.edge_count() as u64;
    let lo_threshold = edge_bound(bounds.lo, n);
    let hi_threshold = edge_bound(bounds.hi, n);
    let outcome = if m <= lo_threshold {
        Outcome::Holds
    } else if m > hi_threshold {
        Outcome::Violates
    } else {
        Outcome::Inconclusive
    };
    let co = g.complement();
    let tags = ClassTags {
        chordal: chordal_analyze(g).is_chordal,
        co_chordal: chordal_analyze(&co).is_chordal,
        mu_at_most_7: bounds.hi <= 7,
        mu_at_least_n_minus_6: bounds.lo + 6 >= n,
    };
    Verdict {
        canon: graph_key(g),
        n,
        m: m as usize,
        bounds: bounds.clone(),
        outcome,
        tags,
        lo_threshold,
        hi_threshold,
        elapsed_micros: 0,
    }
}

/// True when, assuming every smaller order already passed, `g` could still
/// be a vertex-minimal counterexample: minimum degree above the certified
/// lower bound and no universal vertex. With the precondition unasserted
/// the filter is disabled and everything passes through.
pub fn minimal_counterexample_filter(
    g: &Graph,
    bounds: &MuBounds,
    all_smaller_verified: bool,
) -> bool {
    if !all_smaller_verified || g.n() == 0 {
        return true;
    }
    let delta = g.min_degree().unwrap_or(0);
    let big_delta = g.max_degree().unwrap_or(0);
    delta > bounds.lo && big_delta < g.n() - 1
}

// ---------------------------------------------------------------------------
// Campaigns
// ---------------------------------------------------------------------------

/// One JSONL line per graph.
#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(rename_all = "camelCase")]
pub struct JsonlRecord {
    pub canon: String,
    pub n: usize,
    pub m: usize,
    pub lo: usize,
    pub hi: usize,
    pub outcome: Outcome,
    pub tags: Vec<String>,
    pub rules_fired: Vec<String>,
    pub elapsed_micros: u64,
}

impl JsonlRecord {
    fn from_verdict(v: &Verdict) -> JsonlRecord {
        JsonlRecord {
            canon: v.canon.clone(),
            n: v.n,
            m: v.m,
            lo: v.bounds.lo,
            hi: v.bounds.hi,
            outcome: v.outcome,
            tags: v.tags.names().iter().map(|s| s.to_string()).collect(),
            rules_fired: v
                .bounds
                .rules_fired()
                .iter()
                .map(|s| s.to_string())
                .collect(),
            elapsed_micros: v.elapsed_micros,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct CampaignConfig {
    pub engine: EngineConfig,
    pub jsonl_path: Option<PathBuf>,
    /// Accelerator; sound only when every smaller order already passed.
    pub use_lemma6_filter: bool,
}

#[derive(Debug, Default, Clone)]
pub struct CampaignReport {
    pub total: usize,
    pub holds: usize,
    pub violates: usize,
    pub inconclusive: usize,
    pub tag_counts: BTreeMap<String, usize>,
    pub elapsed_ms: u128,
}

impl CampaignReport {
    pub fn summary(&self) -> String {
        format!(
            "{} graphs, {} Holds, {} Violates, {} Inconclusive ({} ms)",
            self.total, self.holds, self.violates, self.inconclusive, self.elapsed_ms
        )
    }
}

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("stream error: {0}")]
    Stream(#[from] StreamError),
    #[error("engine error: {0}")]
    Engine(#[from] EngineError),
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(
        "EDGE BOUND VIOLATED by {canon} (n={n}, m={m}, interval [{lo}, {hi}]): \
         {m} > {threshold} — inside the proven classes this means an \
         implementation bug; run aborted"
    )]
    Violation {
        canon: String,
        n: usize,
        m: usize,
        lo: usize,
        hi: usize,
        threshold: u64,
    },
}

/// Runs the edge-bound check over a stream. Every graph gets a verdict;
/// records stream to JSONL as they are produced; a Violates aborts.
pub fn run_campaign(
    stream: GraphStream,
    cfg: &CampaignConfig,
) -> Result<CampaignReport, CampaignError> {
    let started = Instant::now();
    let mut writer = match &cfg.jsonl_path {
        Some(path) => Some(BufWriter::new(File::create(path).map_err(|e| {
            CampaignError::Io {
                path: path.clone(),
                source: e,
            }
        })?)),
        None => None,
    };
    let mut report = CampaignReport::default();
    // Cheap pass for the accelerator: exact rules only.
    let cheap = EngineConfig {
        enabled: [Rule::R1, Rule::R2, Rule::R4, Rule::R6, Rule::R7]
            .into_iter()
            .collect(),
        ..cfg.engine.clone()
    };
    for item in stream {
        let g = item?;
        let t0 = Instant::now();
        let mut verdict = if cfg.use_lemma6_filter {
            let quick = mu_bounds(&g, &cheap)?;
            if !minimal_counterexample_filter(&g, &quick, true) {
                // Cannot be a vertex-minimal counterexample: Holds given the
                // precondition that all smaller orders passed.
                let mut v = check_conjecture(&g, &quick);
                v.outcome = Outcome::Holds;
                v
            } else {
                let bounds = mu_bounds(&g, &cfg.engine)?;
                check_conjecture(&g, &bounds)
            }
        } else {
            let bounds = mu_bounds(&g, &cfg.engine)?;
            check_conjecture(&g, &bounds)
        };
        verdict.elapsed_micros = t0.elapsed().as_micros() as u64;

        report.total += 1;
        match verdict.outcome {
            Outcome::Holds => report.holds += 1,
            Outcome::Violates => report.violates += 1,
            Outcome::Inconclusive => report.inconclusive += 1,
        }
        for tag in verdict.tags.names() {
            *report.tag_counts.entry(tag.to_string()).or_insert(0) += 1;
        }
        if let Some(w) = writer.as_mut() {
            let line = serde_json::to_string(&JsonlRecord::from_verdict(&verdict))
                .expect("record serializes");
            let path = cfg.jsonl_path.clone().unwrap_or_default();
            writeln!(w, "{line}")
                .and_then(|_| w.flush())
                .map_err(|e| CampaignError::Io { path, source: e })?;
        }
        if verdict.outcome == Outcome::Violates {
            return Err(CampaignError::Violation {
                canon: verdict.canon,
                n: verdict.n,
                m: verdict.m,
                lo: verdict.bounds.lo,
                hi: verdict.bounds.hi,
                threshold: verdict.hi_threshold,
            });
        }
    }
    report.elapsed_ms = started.elapsed().as_millis();
    Ok(report)
}

/// Reads a JSONL report back and recomputes its summary counts.
pub fn read_report(path: &Path) -> io::Result<(Vec<JsonlRecord>, CampaignReport)> {
    let mut records = Vec::new();
    let mut report = CampaignReport::default();
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: JsonlRecord = serde_json::from_str(&line)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
        report.total += 1;
        match record.outcome {
            Outcome::Holds => report.holds += 1,
            Outcome::Violates => report.violates += 1,
            Outcome::Inconclusive => report.inconclusive += 1,
        }
        for tag in &record.tags {
            *report.tag_counts.entry(tag.clone()).or_insert(0) += 1;
        }
        records.push(record);
    }
    Ok((records, report))
}

// ---------------------------------------------------------------------------
// Tight families and identities
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct TightFamilyEntry {
    pub t: usize,
    pub base_size: usize,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
}

#[derive(Debug, Error)]
pub enum TightFamilyError {
    #[error("construction failed for t={t}, base={base_size}, seed={seed}: {message}")]
    Construction {
        t: usize,
        base_size: usize,
        seed: u64,
        message: String,
    },
    #[error(
        "tightness failed for t={t}, base={base_size}, seed={seed}: \
         n={n}, m={m}, expected m={expected}, interval [{lo}, {hi}]"
    )]
    Check {
        t: usize,
        base_size: usize,
        seed: u64,
        n: usize,
        m: usize,
        expected: u64,
        lo: usize,
        hi: usize,
    },
}

/// Builds join(edge-maximal planar base, K_{t-3}) for every combination and
/// checks |E| = t n - C(t+1, 2) exactly with the engine resolving to [t, t].
pub fn verify_tight_family(
    t_values: impl IntoIterator<Item = usize>,
    base_sizes: &[usize],
    seeds: &[u64],
    engine: &EngineConfig,
) -> Result<Vec<TightFamilyEntry>, TightFamilyError> {
    let mut entries = Vec::new();
    for t in t_values {
        for &base_size in base_sizes {
            for &seed in seeds {
                let fail = |message: String| TightFamilyError::Construction {
                    t,
                    base_size,
                    seed,
                    message,
                };
                let base = Graph::stacked_triangulation(base_size, seed)
                    .map_err(|e| fail(e.to_string()))?;
                let apex = Graph::complete(
                    t.checked_sub(3)
                        .ok_or_else(|| fail("t must be at least 3".into()))?,
                )
                .map_err(|e| fail(e.to_string()))?;
                let g = base.join(&apex).map_err(|e| fail(e.to_string()))?;
                let bounds = mu_bounds(&g, engine).map_err(|e| fail(e.to_string()))?;
                let expected = edge_bound(t, g.n());
                if g.edge_count() as u64 != expected || bounds.value() != Some(t) {
                    return Err(TightFamilyError::Check {
                        t,
                        base_size,
                        seed,
                        n: g.n(),
                        m: g.edge_count(),
                        expected,
                        lo: bounds.lo,
                        hi: bounds.hi,
                    });
                }
                entries.push(TightFamilyEntry {
                    t,
                    base_size,
                    seed,
                    n: g.n(),
                    m: g.edge_count(),
                });
            }
        }
    }
    Ok(entries)
}

/// Exact complement identity: C(n-t, 2) + t n - C(t+1, 2) = C(n, 2) for all
/// 0 <= t <= n <= n_max.
pub fn verify_complement_identity(n_max: usize) -> bool {
    for n in 0..=n_max {
        for t in 0..=n {
            if choose2(n - t) + edge_bound(t, n) != choose2(n) {
                return false;
            }
        }
    }
    true
}

/// Chains `copies` copies of the complete multipartite graph with the given
/// part sizes by pure clique sums, gluing along one vertex per part. Each
/// new copy glues its "first" vertex per part onto the previous copy's
/// still-free one-per-part clique.
pub fn build_clique_sum_chain(parts: &[usize], copies: usize) -> Result<Graph, String> {
    if copies == 0 {
        return Err("need at least one copy".into());
    }
    if parts.contains(&0) {
        return Err("part sizes must be positive".into());
    }
    let base = Graph::complete_multipartite(parts).map_err(|e| e.to_string())?;
    // Offsets of each part's first and second vertex inside the base graph.
    let mut first_per_part = Vec::with_capacity(parts.len());
    let mut other_per_part = Vec::new();
    let mut offset = 0;
    for &p in parts {
        first_per_part.push(offset);
        if p >= 2 {
            other_per_part.push(offset + 1);
        }
        offset += p;
    }
    let glued: crate::graph::VertexSet = first_per_part.iter().copied().collect();
    let mut acc = base.clone();
    let mut acc_clique = first_per_part.clone();
    for i in 1..copies {
        let spec = crate::graph::CliqueSumSpec {
            left: acc.clone(),
            right: base.clone(),
            left_clique: acc_clique.clone(),
            right_clique: first_per_part.clone(),
        };
        let nl = acc.n();
        acc = crate::graph::pure_clique_sum(&spec).map_err(|e| e.to_string())?;
        if i + 1 == copies {
            break;
        }
        // The appended vertices are the base's non-glued ones in increasing
        // order; pick the fresh one-per-part clique among them for the next
        // glue. Parts of size one have no fresh vertex to offer.
        if other_per_part.len() != first_per_part.len() {
            return Err("parts of size one support at most two chained copies".into());
        }
        let appended: Vec<usize> = (0..base.n()).filter(|v| !glued.contains(*v)).collect();
        acc_clique = other_per_part
            .iter()
            .map(|&v| nl + appended.iter().position(|&w| w == v).unwrap())
            .collect();
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Named graphs (CLI and demo surface)
// ---------------------------------------------------------------------------

/// Builds a graph from a compact name. Accepted forms:
/// `petersen`, `p32`, `k<t>` (complete), `c<n>` (cycle), `p<n>` (path),
/// `e<n>` (edgeless), `k<a>,<b>,...` (complete multipartite),
/// `kmd<t>` (complete minus a triangle), `stacked<n>x<seed>`.
pub fn graph_by_name(name: &str) -> Result<Graph, String> {
    let s = name.trim().to_ascii_lowercase();
    let graph_err = |e: GraphError| e.to_string();
    match s.as_str() {
        "petersen" => return Ok(Graph::petersen()),
        "p32" => return Ok(Graph::p32()),
        _ => {}
    }
    if let Some(rest) = s.strip_prefix("kmd") {
        let t: usize = rest.parse().map_err(|_| format!("bad order in {name:?}"))?;
        return Graph::k_minus_triangle(t).map_err(graph_err);
    }
    if let Some(rest) = s.strip_prefix("stacked") {
        let (n, seed) = rest
            .split_once('x')
            .ok_or_else(|| format!("expected stacked<n>x<seed>, got {name:?}"))?;
        let n: usize = n.parse().map_err(|_| format!("bad size in {name:?}"))?;
        let seed: u64 = seed.parse().map_err(|_| format!("bad seed in {name:?}"))?;
        return Graph::stacked_triangulation(n, seed).map_err(graph_err);
    }
    if let Some(rest) = s.strip_prefix('k') {
        if rest.contains(',') {
            let parts: Result<Vec<usize>, _> = rest.split(',').map(str::parse).collect();
            let parts = parts.map_err(|_| format!("bad part sizes in {name:?}"))?;
            return Graph::complete_multipartite(&parts).map_err(graph_err);
        }
        let t: usize = rest.parse().map_err(|_| format!("bad order in {name:?}"))?;
        return Graph::complete(t).map_err(graph_err);
    }
    if let Some(rest) = s.strip_prefix('c') {
        let n: usize = rest.parse().map_err(|_| format!("bad order in {name:?}"))?;
        return Graph::cycle(n).map_err(graph_err);
    }
    if let Some(rest) = s.strip_prefix('p') {
        let n: usize = rest.parse().map_err(|_| format!("bad order in {name:?}"))?;
        return Graph::path(n).map_err(graph_err);
    }
    if let Some(rest) = s.strip_prefix('e') {
        let n: usize = rest.parse().map_err(|_| format!("bad order in {name:?}"))?;
        return Graph::edgeless(n).map_err(graph_err);
    }
    Err(format!("unknown graph name {name:?}"))
}

/// Interprets a CLI argument as a graph name or a graph6 string.
pub fn parse_graph_arg(arg: &str) -> Result<Graph, String> {
    match graph_by_name(arg) {
        Ok(g) => Ok(g),
        Err(name_err) => {
            graph6::decode(arg.trim()).map_err(|g6_err| format!("{name_err}; as graph6: {g6_err}"))
        }
    }
}
