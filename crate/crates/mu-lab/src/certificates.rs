//! Certificate matrices witnessing lower bounds on the parameter.
//!
//! A certificate for a graph G is a symmetric rational n x n matrix M with
//! (1) the sign pattern of G: strictly negative on edges, zero on off-diagonal
//!     non-edges, free diagonal;
//! (2) exactly one negative eigenvalue;
//! (3) the transversality condition: the only symmetric X with MX = 0 and X
//!     zero on edges and the diagonal is X = 0.
//! A verified certificate proves mu(G) >= corank(M). Verification is fully
//! exact; the search heuristic may float but every proposal is re-verified
//! exactly before it is returned.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::graph::Graph;
use crate::graph6;
use crate::linalg::{float, parse_rational, rat, Rational, RationalMatrix};

/// A candidate certificate: graph, matrix, and the corank it claims.
#[derive(Clone, Debug)]
pub struct CdVCertificate {
    pub graph: Graph,
    pub matrix: RationalMatrix,
    pub claimed_corank: usize,
}

/// Why verification rejected a certificate, with the offending locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertFailure {
    /// Matrix shape does not match the graph (or is not symmetric).
    DimensionMismatch { detail: String },
    /// Nonzero entry at a non-edge.
    PatternNonEdge { i: usize, j: usize },
    /// Edge entry not strictly negative.
    PatternEdgeSign { i: usize, j: usize },
    /// Eigenvalue sign counts are off.
    InertiaNotOneNegative { negative: usize },
    /// The homogeneous system has a nonzero solution; one free position.
    SapFails { free_i: usize, free_j: usize },
}

impl CertFailure {
    pub fn code(&self) -> &'static str {
        match self {
            CertFailure::DimensionMismatch { .. } => "DimensionMismatch",
            CertFailure::PatternNonEdge { .. } => "PatternNonEdge",
            CertFailure::PatternEdgeSign { .. } => "PatternEdgeSign",
            CertFailure::InertiaNotOneNegative { .. } => "InertiaNotOneNegative",
            CertFailure::SapFails { .. } => "SapFails",
        }
    }

    pub fn describe(&self) -> String {
        match self {
            CertFailure::DimensionMismatch { detail } => detail.clone(),
            CertFailure::PatternNonEdge { i, j } => {
                format!("nonzero entry at non-edge ({i}, {j})")
            }
            CertFailure::PatternEdgeSign { i, j } => {
                format!("entry at edge ({i}, {j}) is not strictly negative")
            }
            CertFailure::InertiaNotOneNegative { negative } => {
                format!("expected exactly one negative eigenvalue, found {negative}")
            }
            CertFailure::SapFails { free_i, free_j } => {
                format!("transversality fails: X_({free_i},{free_j}) is a free variable")
            }
        }
    }
}

/// Verification outcome. `valid` exactly when `failure` is absent; `corank`
/// is the exact kernel dimension when valid.
#[derive(Clone, Debug)]
pub struct CertVerdict {
    pub valid: bool,
    pub corank: usize,
    pub failure: Option<CertFailure>,
}

impl CertVerdict {
    fn fail(failure: CertFailure) -> CertVerdict {
        CertVerdict {
            valid: false,
            corank: 0,
            failure: Some(failure),
        }
    }
}

/// Checks the three certificate conditions exactly, in order: sign pattern,
/// inertia, transversality. A valid verdict proves mu(G) >= corank.
pub fn verify_certificate(cert: &CdVCertificate) -> CertVerdict {
    let g = &cert.graph;
    let m = &cert.matrix;
    let n = g.n();
    if m.rows() != n || m.cols() != n {
        return CertVerdict::fail(CertFailure::DimensionMismatch {
            detail: format!(
                "matrix is {}x{}, graph has {} vertices",
                m.rows(),
                m.cols(),
                n
            ),
        });
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if m.get(i, j) != m.get(j, i) {
                return CertVerdict::fail(CertFailure::DimensionMismatch {
                    detail: format!("matrix is not symmetric at ({i}, {j})"),
                });
            }
        }
    }
    // (1) Sign pattern.
    for i in 0..n {
        for j in (i + 1)..n {
            let entry = m.get(i, j);
            if g.has_edge(i, j) {
                if !entry.is_negative() {
                    return CertVerdict::fail(CertFailure::PatternEdgeSign { i, j });
                }
            } else if !entry.is_zero() {
                return CertVerdict::fail(CertFailure::PatternNonEdge { i, j });
            }
        }
    }
    // (2) Exactly one negative eigenvalue.
    let inertia = m.inertia().expect("symmetry was checked");
    if inertia.negative != 1 {
        return CertVerdict::fail(CertFailure::InertiaNotOneNegative {
            negative: inertia.negative,
        });
    }
    // (3) Transversality: the system (MX)_{kl} = 0 over the free positions
    // of X (off-diagonal non-edges) must force X = 0. MX is not symmetric
    // even for symmetric M and X, so all n^2 entries constrain (with
    // M = diag(-1, 0, 1) on three isolated vertices, (MX)_{12} is trivial
    // but (MX)_{21} pins X_{12}).
    let vars: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !g.has_edge(i, j))
        .collect();
    if !vars.is_empty() {
        let mut rows = Vec::new();
        for k in 0..n {
            for l in 0..n {
                let mut row = vec![Rational::zero(); vars.len()];
                for (c, &(a, b)) in vars.iter().enumerate() {
                    // X contributes at (a,b) and (b,a).
                    // (MX)_{kl} = sum_p M_{kp} X_{pl}.
                    if b == l {
                        row[c] += m.get(k, a);
                    }
                    if a == l {
                        row[c] += m.get(k, b);
                    }
                }
                rows.push(row);
            }
        }
        let system = RationalMatrix::from_rows(rows).expect("rows are uniform");
        let (rank, pivots) = system.rank_and_pivots();
        if rank < vars.len() {
            let free = pivots
                .iter()
                .position(|&p| !p)
                .expect("rank deficit has a free column");
            let (i, j) = vars[free];
            return CertVerdict::fail(CertFailure::SapFails {
                free_i: i,
                free_j: j,
            });
        }
    }
    CertVerdict {
        valid: true,
        corank: m.corank(),
        failure: None,
    }
}

/// The all-(-1) certificate for the complete graph: corank n - 1, and the
/// transversality check is vacuous (no non-edges).
pub fn canonical_complete_certificate(n: usize) -> Result<CdVCertificate, CertError> {
    if n < 2 {
        return Err(CertError::OrderTooSmall(n));
    }
    let graph = Graph::complete(n).map_err(|e| CertError::Graph(e.to_string()))?;
    let matrix = RationalMatrix::from_fn(n, n, |_, _| rat(-1));
    Ok(CdVCertificate {
        graph,
        matrix,
        claimed_corank: n - 1,
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error("complete-graph certificates need n >= 2, got {0}")]
    OrderTooSmall(usize),
    #[error("graph error: {0}")]
    Graph(String),
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("search supports up to {max} vertices, got {got}")]
    SearchTooLarge { max: usize, got: usize },
    #[error("target corank {target} impossible for {n} vertices")]
    TargetOutOfRange { target: usize, n: usize },
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

// ---------------------------------------------------------------------------
// Certificate search: float proposes, rationals decide
// ---------------------------------------------------------------------------

pub const MAX_SEARCH_VERTICES: usize = 20;

/// Denominator cap for continued-fraction rounding of float proposals.
const ROUND_DENOMINATOR_CAP: u64 = 1_000_000;

/// Best rational approximation with denominator at most `cap`, by continued
/// fraction convergents.
fn round_to_rational(x: f64, cap: u64) -> Rational {
    // Search proposals are small numbers; anything absurd just fails the
    // later exact verification, so it is rounded to zero rather than risking
    // convergent overflow.
    if !x.is_finite() || x.abs() > 1e12 {
        return Rational::zero();
    }
    let negative = x < 0.0;
    let mut x = x.abs();
    let (mut h0, mut k0, mut h1, mut k1) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..64 {
        let a = x.floor() as i128;
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > cap as i128 {
            break;
        }
        (h0, k0, h1, k1) = (h1, k1, h2, k2);
        let frac = x - x.floor();
        if frac < 1e-12 {
            break;
        }
        x = 1.0 / frac;
    }
    let mut r = Rational::new(BigInt::from(h1), BigInt::from(k1.max(1)));
    if negative {
        r = -r;
    }
    r
}

/// Best-effort search for a certificate of corank at least `target_corank`.
///
/// Seeds -1 on every edge, optimizes the diagonal in floating point to push
/// eigenvalues 2..=target+1 to zero, then tries exact completions: first the
/// rounded diagonal itself, then a diagonal solved exactly from the rounded
/// near-kernel basis. Returns a certificate only if exact verification
/// passes with enough corank; returning `None` proves nothing.
pub fn search_certificate(
    g: &Graph,
    target_corank: usize,
    budget: u64,
) -> Result<Option<CdVCertificate>, CertError> {
    let n = g.n();
    if n > MAX_SEARCH_VERTICES {
        return Err(CertError::SearchTooLarge {
            max: MAX_SEARCH_VERTICES,
            got: n,
        });
    }
    if target_corank >= n || n == 0 {
        return Err(CertError::TargetOutOfRange {
            target: target_corank,
            n,
        });
    }
    if g.is_complete() {
        let cert = canonical_complete_certificate(n).expect("n >= 1 and complete");
        if cert.claimed_corank >= target_corank {
            return Ok(Some(cert));
        }
        return Ok(None);
    }

    // Floating phase: minimize sum of squares of eigenvalues 2..=c+1 over
    // the diagonal.
    let mut diag = vec![0.0f64; n];
    let objective = |d: &[f64]| -> (f64, Vec<f64>, Vec<Vec<f64>>) {
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            a[i][i] = d[i];
            for j in g.neighbors(i).iter() {
                a[i][j] = -1.0;
            }
        }
        let (vals, vecs) = float::symmetric_eigen(&a);
        let obj: f64 = vals[1..=target_corank].iter().map(|l| l * l).sum();
        (obj, vals, vecs)
    };
    let mut step = 0.25;
    let (mut obj, mut vals, mut vecs) = objective(&diag);
    let mut iterations = 0u64;
    while obj > 1e-22 && iterations < budget.max(1) && step > 1e-12 {
        iterations += 1;
        // Gradient of sum lambda_k^2 wrt d_i is 2 lambda_k v_k[i]^2.
        let mut grad = vec![0.0; n];
        for k in 1..=target_corank {
            for i in 0..n {
                grad[i] += 2.0 * vals[k] * vecs[k][i] * vecs[k][i];
            }
        }
        let trial: Vec<f64> = diag.iter().zip(&grad).map(|(d, g)| d - step * g).collect();
        let (tobj, tvals, tvecs) = objective(&trial);
        if tobj < obj {
            diag = trial;
            (obj, vals, vecs) = (tobj, tvals, tvecs);
            step *= 1.2;
        } else {
            step *= 0.5;
        }
    }

    // Completion 1: round the optimized diagonal directly.
    for cap in [1u64, 4, 64, 4096, ROUND_DENOMINATOR_CAP] {
        let d: Vec<Rational> = diag.iter().map(|&x| round_to_rational(x, cap)).collect();
        if let Some(cert) = try_diagonal(g, &d, target_corank) {
            return Ok(Some(cert));
        }
    }

    // Completion 2: solve the diagonal exactly from the rounded near-kernel.
    // Jacobi returns an arbitrary orthonormal basis of a degenerate
    // eigenspace; echelonizing first makes the basis canonical, so its
    // entries land on small rationals whenever the optimum's kernel is
    // rational.
    let echelon = float_rref((1..=target_corank).map(|k| vecs[k].clone()).collect());
    let kernel: Vec<Vec<Rational>> = echelon.iter().map(|v| round_vector(v)).collect();
    if let Some(d) = solve_diagonal_from_kernel(g, &kernel, &diag) {
        if let Some(cert) = try_diagonal(g, &d, target_corank) {
            return Ok(Some(cert));
        }
    }

    // Completion 3: the float descent often lands on a symmetric optimum
    // whose kernel is irrational even when rational witnesses exist nearby
    // on the solution manifold (the 5-cycle does exactly this). Scan small
    // integer diagonals nearest the float point, each checked exactly.
    let mut candidates = integer_diagonals_near(&diag, budget);
    candidates.truncate(budget.min(100_000) as usize);
    for d in candidates {
        if let Some(cert) = try_diagonal(g, &d, target_corank) {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Integer diagonal patterns from a small palette, ordered by distance to
/// the float optimum. Small graphs get the full sorted palette product;
/// larger ones get the nearest assignment plus its one- and two-coordinate
/// flips to the runner-up value.
fn integer_diagonals_near(diag: &[f64], budget: u64) -> Vec<Vec<Rational>> {
    const PALETTE: [i64; 4] = [0, 1, -1, 2];
    let n = diag.len();
    let mut out: Vec<Vec<Rational>> = Vec::new();
    if n <= 8 && 4u64.pow(n as u32) <= budget.saturating_mul(4).max(4096) {
        let mut all: Vec<(f64, Vec<i64>)> = Vec::with_capacity(4usize.pow(n as u32));
        let mut assign = vec![0i64; n];
        fn rec(
            diag: &[f64],
            palette: &[i64],
            pos: usize,
            cost: f64,
            assign: &mut Vec<i64>,
            all: &mut Vec<(f64, Vec<i64>)>,
        ) {
            if pos == diag.len() {
                all.push((cost, assign.clone()));
                return;
            }
            for &v in palette {
                assign[pos] = v;
                let d = diag[pos] - v as f64;
                rec(diag, palette, pos + 1, cost + d * d, assign, all);
            }
        }
        rec(diag, &PALETTE, 0, 0.0, &mut assign, &mut all);
        all.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        out.extend(
            all.into_iter()
                .map(|(_, a)| a.into_iter().map(rat).collect()),
        );
    } else {
        let nearest: Vec<i64> = diag
            .iter()
            .map(|&x| {
                *PALETTE
                    .iter()
                    .min_by(|a, b| {
                        (x - **a as f64)
                            .abs()
                            .partial_cmp(&(x - **b as f64).abs())
                            .unwrap()
                    })
                    .unwrap()
            })
            .collect();
        let runner_up: Vec<i64> = diag
            .iter()
            .zip(&nearest)
            .map(|(&x, &skip)| {
                *PALETTE
                    .iter()
                    .filter(|&&v| v != skip)
                    .min_by(|a, b| {
                        (x - **a as f64)
                            .abs()
                            .partial_cmp(&(x - **b as f64).abs())
                            .unwrap()
                    })
                    .unwrap()
            })
            .collect();
        let to_rats = |a: &[i64]| a.iter().map(|&v| rat(v)).collect::<Vec<_>>();
        out.push(to_rats(&nearest));
        for i in 0..n {
            let mut a = nearest.clone();
            a[i] = runner_up[i];
            out.push(to_rats(&a));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let mut a = nearest.clone();
                a[i] = runner_up[i];
                a[j] = runner_up[j];
                out.push(to_rats(&a));
            }
        }
    }
    out
}

/// Reduced row echelon form of a small float matrix, pivoting on the
/// largest remaining entry; rows keep unit pivots.
fn float_rref(mut rows: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut used = vec![false; rows.len()];
    for c in 0..cols {
        let pivot = (0..rows.len())
            .filter(|&r| !used[r])
            .max_by(|&a, &b| rows[a][c].abs().partial_cmp(&rows[b][c].abs()).unwrap());
        let Some(r) = pivot else { break };
        if rows[r][c].abs() < 1e-9 {
            continue;
        }
        used[r] = true;
        let scale = rows[r][c];
        for x in rows[r].iter_mut() {
            *x /= scale;
        }
        let lead = rows[r].clone();
        for (other, row) in rows.iter_mut().enumerate() {
            if other == r {
                continue;
            }
            let f = row[c];
            if f.abs() < 1e-12 {
                continue;
            }
            for (x, l) in row.iter_mut().zip(&lead) {
                *x -= f * l;
            }
        }
    }
    rows
}

/// Builds M = (-1 on edges) + diag(d) and verifies it exactly.
fn try_diagonal(g: &Graph, d: &[Rational], target: usize) -> Option<CdVCertificate> {
    let n = g.n();
    let matrix = RationalMatrix::from_fn(n, n, |i, j| {
        if i == j {
            d[i].clone()
        } else if g.has_edge(i, j) {
            rat(-1)
        } else {
            rat(0)
        }
    });
    let cert = CdVCertificate {
        graph: g.clone(),
        matrix,
        claimed_corank: 0,
    };
    let verdict = verify_certificate(&cert);
    if verdict.valid && verdict.corank >= target {
        let mut cert = cert;
        cert.claimed_corank = verdict.corank;
        Some(cert)
    } else {
        None
    }
}

/// Scales a float vector so its largest component is 1, rounds entries with
/// small denominators, and clears the denominators to integers.
fn round_vector(v: &[f64]) -> Vec<Rational> {
    let max = v.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    if max == 0.0 {
        return vec![Rational::zero(); v.len()];
    }
    let scaled: Vec<Rational> = v.iter().map(|&x| round_to_rational(x / max, 64)).collect();
    let lcm = scaled
        .iter()
        .map(|r| r.denom().clone())
        .fold(BigInt::from(1), num_integer_lcm);
    scaled
        .into_iter()
        .map(|r| r * Rational::from_integer(lcm.clone()))
        .collect()
}

fn num_integer_lcm(a: BigInt, b: BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::from(1);
    }
    let g = num_gcd(a.clone(), b.clone());
    (a / g * b).abs()
}

fn num_gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
    while !b.is_zero() {
        let r = &a % &b;
        a = std::mem::replace(&mut b, r);
    }
    a.abs()
}

/// Solves d_i * v[i] = sum of v over the neighbors of i, for every kernel
/// vector simultaneously; positions unconstrained by the kernel fall back to
/// the rounded float diagonal.
fn solve_diagonal_from_kernel(
    g: &Graph,
    kernel: &[Vec<Rational>],
    float_diag: &[f64],
) -> Option<Vec<Rational>> {
    let n = g.n();
    let mut out: Vec<Option<Rational>> = vec![None; n];
    for v in kernel {
        for i in 0..n {
            let nbr_sum: Rational = g.neighbors(i).iter().map(|j| v[j].clone()).sum();
            if v[i].is_zero() {
                if !nbr_sum.is_zero() {
                    return None; // inconsistent kernel vector
                }
                continue;
            }
            let d = nbr_sum / v[i].clone();
            match &out[i] {
                None => out[i] = Some(d),
                Some(prev) if *prev == d => {}
                Some(_) => return None,
            }
        }
    }
    Some(
        out.into_iter()
            .enumerate()
            .map(|(i, d)| d.unwrap_or_else(|| round_to_rational(float_diag[i], 64)))
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Certificate files
// ---------------------------------------------------------------------------

/// Renders the exact text format:
/// line 1 `cdv 1`, line 2 the graph in graph6, line 3 the claimed corank,
/// then n rows of n space-separated rationals.
pub fn format_certificate(cert: &CdVCertificate) -> String {
    let n = cert.graph.n();
    let mut out = String::new();
    let _ = writeln!(out, "cdv 1");
    let _ = writeln!(out, "{}", graph6::encode(&cert.graph));
    let _ = writeln!(out, "{}", cert.claimed_corank);
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| cert.matrix.get(i, j).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// Parses the text format; errors carry line and column (1-based).
pub fn parse_certificate(text: &str, origin: &str) -> Result<CdVCertificate, CertError> {
    let err = |line: usize, column: usize, message: String| CertError::Parse {
        path: origin.to_string(),
        line,
        column,
        message,
    };
    let mut lines = text.lines().enumerate();
    let (i, header) = lines
        .next()
        .ok_or_else(|| err(1, 1, "empty certificate".into()))?;
    if header.trim() != "cdv 1" {
        return Err(err(
            i + 1,
            1,
            format!("bad header {header:?}, expected \"cdv 1\""),
        ));
    }
    let (i, g6) = lines
        .next()
        .ok_or_else(|| err(2, 1, "missing graph line".into()))?;
    let graph = graph6::decode(g6.trim()).map_err(|e| err(i + 1, 1, format!("graph6: {e}")))?;
    let (i, claim) = lines
        .next()
        .ok_or_else(|| err(3, 1, "missing corank line".into()))?;
    let claimed_corank: usize = claim
        .trim()
        .parse()
        .map_err(|_| err(i + 1, 1, format!("bad corank {claim:?}")))?;
    let n = graph.n();
    let mut matrix = RationalMatrix::zeros(n, n);
    for row in 0..n {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| err(4 + row, 1, format!("missing matrix row {row}")))?;
        let mut col = 0usize;
        let mut cursor = 0usize;
        for token in line.split_whitespace() {
            let column = line[cursor..]
                .find(token)
                .map(|p| cursor + p + 1)
                .unwrap_or(cursor + 1);
            cursor = column - 1 + token.len();
            if col >= n {
                return Err(err(
                    lineno + 1,
                    column,
                    format!("row {row} has more than {n} entries"),
                ));
            }
            let value =
                parse_rational(token).map_err(|e| err(lineno + 1, column, e.to_string()))?;
            matrix.set(row, col, value);
            col += 1;
        }
        if col != n {
            return Err(err(
                lineno + 1,
                line.len() + 1,
                format!("row {row} has {col} entries, expected {n}"),
            ));
        }
    }
    if let Some((extra, text)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(err(
            extra + 1,
            1,
            format!("unexpected trailing line {text:?}"),
        ));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if matrix.get(i, j) != matrix.get(j, i) {
                return Err(err(4 + j, 1, format!("matrix not symmetric at ({i}, {j})")));
            }
        }
    }
    Ok(CdVCertificate {
        graph,
        matrix,
        claimed_corank,
    })
}

pub fn read_certificate(path: &Path) -> Result<CdVCertificate, CertError> {
    let text = fs::read_to_string(path).map_err(|e| CertError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_certificate(&text, &path.display().to_string())
}

pub fn write_certificate(cert: &CdVCertificate, path: &Path) -> Result<(), CertError> {
    fs::write(path, format_certificate(cert)).map_err(|e| CertError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
