//! Small-graph corpora: canonical forms, isomorphism-free enumeration, and
//! graph6 file ingestion.
//!
//! The canonical form is the lexicographic minimum of the upper-triangle
//! adjacency bitstring over all vertex relabelings, found by branch and
//! bound over partial assignments (candidates ordered by degree, partial
//! prefixes compared against the incumbent). Two graphs are isomorphic
//! exactly when their canonical forms agree.
//!
//! Enumeration is orderly: graphs grow one edge at a time, each new edge
//! placed after the previous ones in bit order, and a candidate is kept only
//! when its labeling is the maximal representative of its isomorphism class.
//! Deleting the last edge of a maximal representative is again maximal, so
//! the generation tree visits every class exactly once.

use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::graph6::{self, Graph6Error};

/// Canonical forms use a full permutation search; ten vertices (45 bits)
/// keeps that tractable and fits one word.
pub const MAX_CANON_VERTICES: usize = 10;

/// Largest supported exhaustive enumeration order.
pub const MAX_ENUM_VERTICES: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("canonical form supports at most {MAX_CANON_VERTICES} vertices, got {0}")]
    CanonTooLarge(usize),
    #[error("enumeration supports 1..={MAX_ENUM_VERTICES} vertices, got {0}")]
    EnumOutOfRange(usize),
}

/// Canonical upper-triangle bitstring plus the order; equal forms mean
/// isomorphic graphs. Bits run column by column as in graph6 — (0,1), (0,2),
/// (1,2), (0,3), ... — with the first pair in the most significant position,
/// so placing one more vertex appends a contiguous chunk of bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm {
    n: u8,
    bits: u64,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Compact text key, e.g. for report records.
    pub fn hex(&self) -> String {
        format!("{}:{:x}", self.n, self.bits)
    }
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Upper-triangle bits of the identity labeling, column-major, MSB first.
fn labeled_bits(g: &Graph) -> u64 {
    let n = g.n();
    let total = pair_count(n);
    let mut bits = 0u64;
    let mut pos = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                bits |= 1u64 << (total - 1 - pos);
            }
            pos += 1;
        }
    }
    bits
}

/// Lexicographically minimal upper-triangle bitstring over all relabelings.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, CorpusError> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(CorpusError::CanonTooLarge(n));
    }
    if n <= 1 || g.is_edgeless() || g.is_complete() {
        // Every labeling agrees.
        return Ok(CanonicalForm {
            n: n as u8,
            bits: labeled_bits(g),
        });
    }
    let total = pair_count(n);
    let mut best = labeled_bits(g);
    // perm[pos] = original vertex placed at position pos.
    let mut perm = [0usize; MAX_CANON_VERTICES];
    let mut used = VertexSet::EMPTY;
    // Candidates sorted by ascending degree: the minimum string must place a
    // minimum-degree vertex first, and low rows tend to prune early.
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (g.degree(v), v));

    fn rec(
        g: &Graph,
        order: &[usize],
        total: usize,
        pos: usize,
        acc: u64,
        placed_bits: usize,
        perm: &mut [usize; MAX_CANON_VERTICES],
        used: &mut VertexSet,
        best: &mut u64,
    ) {
        let n = g.n();
        if pos == n {
            if acc < *best {
                *best = acc;
            }
            return;
        }
        // Row bits contributed by placing v at `pos`: pairs (i, pos), i < pos.
        let mut cands: Vec<(u64, usize)> = Vec::with_capacity(n - pos);
        for &v in order {
            if used.contains(v) {
                continue;
            }
            let mut row = 0u64;
            for i in 0..pos {
                row = row << 1 | u64::from(g.has_edge(perm[i], v));
            }
            cands.push((row, v));
        }
        cands.sort_unstable();
        for (row, v) in cands {
            let new_bits = placed_bits + pos;
            let acc2 = acc | row << (total - new_bits);
            // Compare the determined prefix against the incumbent's prefix.
            let mask = if new_bits == 0 {
                0
            } else {
                !0u64 << (total - new_bits)
            };
            if acc2 > *best & mask {
                continue;
            }
            perm[pos] = v;
            used.insert(v);
            rec(g, order, total, pos + 1, acc2, new_bits, perm, used, best);
            used.remove(v);
        }
    }

    rec(g, &order, total, 0, 0, 0, &mut perm, &mut used, &mut best);
    Ok(CanonicalForm {
        n: n as u8,
        bits: best,
    })
}

// ---------------------------------------------------------------------------
// Orderly enumeration
// ---------------------------------------------------------------------------

/// True when the identity labeling maximizes the upper-triangle bitstring,
/// i.e. the graph is the chosen representative of its isomorphism class.
fn is_max_representative(g: &Graph) -> bool {
    let n = g.n();
    if n <= 1 || g.is_edgeless() || g.is_complete() {
        return true;
    }
    let total = pair_count(n);
    let target = labeled_bits(g);
    let mut perm = vec![0usize; n];
    let mut used = VertexSet::EMPTY;

    // Search for any labeling that strictly beats `target`.
    fn beats(
        g: &Graph,
        total: usize,
        target: u64,
        pos: usize,
        acc: u64,
        placed_bits: usize,
        perm: &mut [usize],
        used: &mut VertexSet,
    ) -> bool {
        let n = g.n();
        if pos == n {
            return acc > target;
        }
        let mut cands: Vec<(u64, usize)> = Vec::with_capacity(n - pos);
        for v in 0..n {
            if used.contains(v) {
                continue;
            }
            let mut row = 0u64;
            for i in 0..pos {
                row = row << 1 | u64::from(g.has_edge(perm[i], v));
            }
            cands.push((row, v));
        }
        // Try large rows first; a strictly greater prefix wins immediately.
        cands.sort_unstable_by(|a, b| b.cmp(a));
        for (row, v) in cands {
            let new_bits = placed_bits + pos;
            let acc2 = acc | row << (total - new_bits);
            let mask = if new_bits == 0 {
                0
            } else {
                !0u64 << (total - new_bits)
            };
            let target_prefix = target & mask;
            if acc2 > target_prefix {
                return true;
            }
            if acc2 < target_prefix {
                continue;
            }
            perm[pos] = v;
            used.insert(v);
            if beats(g, total, target, pos + 1, acc2, new_bits, perm, used) {
                return true;
            }
            used.remove(v);
        }
        false
    }

    !beats(g, total, target, 0, 0, 0, &mut perm, &mut used)
}

/// Pair at column-major position `pos` for order `n`.
fn pair_at(n: usize, pos: usize) -> (usize, usize) {
    let mut p = pos;
    for j in 1..n {
        if p < j {
            return (p, j);
        }
        p -= j;
    }
    unreachable!("position out of range");
}

/// All isomorphism classes of simple graphs on `n` vertices, in a fixed
/// deterministic order (by edge count, then generation order).
pub fn enumerate_graphs(n: usize) -> Result<GraphStream, CorpusError> {
    if n == 0 || n > MAX_ENUM_VERTICES {
        return Err(CorpusError::EnumOutOfRange(n));
    }
    let total = pair_count(n);
    let mut out: Vec<Graph> = Vec::new();
    // Depth-first augmentation: every accepted graph is emitted, and each
    // child adds one edge strictly after the parent's last edge position.
    let mut stack: Vec<(Graph, usize)> = vec![(Graph::edgeless(n).unwrap(), 0)];
    while let Some((g, next_pos)) = stack.pop() {
        out.push(g.clone());
        // Push children in reverse so lower positions are explored first.
        for pos in (next_pos..total).rev() {
            let (i, j) = pair_at(n, pos);
            let child = g.with_edge(i, j).unwrap();
            if is_max_representative(&child) {
                stack.push((child, pos + 1));
            }
        }
    }
    // Deterministic, human-friendly order: sparse graphs first.
    out.sort_by_key(|g| g.edge_count());
    Ok(GraphStream::from_vec(out, StreamSource::Enumeration(n)))
}

// ---------------------------------------------------------------------------
// Streams
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum StreamSource {
    Enumeration(usize),
    File(PathBuf),
}

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("{path}:{line}: {source}")]
    Parse {
        path: PathBuf,
        line: usize,
        source: Graph6Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

enum StreamInner {
    Memory(std::vec::IntoIter<Graph>),
    File {
        path: PathBuf,
        lines: std::iter::Enumerate<io::Lines<BufReader<File>>>,
        failed: bool,
    },
}

/// A deterministic stream of graphs from enumeration or a graph6 file.
/// After the first error the stream is exhausted.
pub struct GraphStream {
    source: StreamSource,
    inner: StreamInner,
}

impl GraphStream {
    fn from_vec(graphs: Vec<Graph>, source: StreamSource) -> GraphStream {
        GraphStream {
            source,
            inner: StreamInner::Memory(graphs.into_iter()),
        }
    }

    pub fn source(&self) -> &StreamSource {
        &self.source
    }
}

impl Iterator for GraphStream {
    type Item = Result<Graph, StreamError>;

    fn next(&mut self) -> Option<Self::Item> {
        match &mut self.inner {
            StreamInner::Memory(it) => it.next().map(Ok),
            StreamInner::File {
                path,
                lines,
                failed,
            } => {
                if *failed {
                    return None;
                }
                loop {
                    let (idx, line) = lines.next()?;
                    let line = match line {
                        Ok(l) => l,
                        Err(e) => {
                            *failed = true;
                            return Some(Err(StreamError::Io {
                                path: path.clone(),
                                source: e,
                            }));
                        }
                    };
                    let mut text = line.trim_end_matches('\r');
                    if idx == 0 {
                        // Tolerate the optional format banner some tools emit.
                        text = text.strip_prefix(">>graph6<<").unwrap_or(text);
                    }
                    if text.is_empty() {
                        continue;
                    }
                    return match graph6::decode(text) {
                        Ok(g) => Some(Ok(g)),
                        Err(e) => {
                            *failed = true;
                            Some(Err(StreamError::Parse {
                                path: path.clone(),
                                line: idx + 1,
                                source: e,
                            }))
                        }
                    };
                }
            }
        }
    }
}

/// Opens a graph6 file, one graph per line. Errors carry line numbers and
/// the decoder's byte offsets; the stream stops at the first failure.
pub fn read_graph6(path: &Path) -> io::Result<GraphStream> {
    let file = File::open(path)?;
    Ok(GraphStream {
        source: StreamSource::File(path.to_path_buf()),
        inner: StreamInner::File {
            path: path.to_path_buf(),
            lines: BufReader::new(file).lines().enumerate(),
            failed: false,
        },
    })
}
