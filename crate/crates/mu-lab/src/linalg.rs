//! Exact rational matrices and the three primitives certificate checking
//! needs: symmetric inertia by congruence, rank, and nullspace dimension.
//!
//! Entries are arbitrary-precision rationals, always reduced with positive
//! denominator; nothing here ever rounds. Floating point appears only in
//! [`float`], a quarantined helper for heuristic searches and test oracles.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar: reduced, positive denominator, field arithmetic.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

/// Rational from a fraction; panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("invalid rational literal {literal:?}: {reason}")]
    BadLiteral {
        literal: String,
        reason: &'static str,
    },
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        got: usize,
        expected: usize,
    },
}

/// Parses "p", "-p" or "p/q" into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let bad = |reason| LinalgError::BadLiteral {
        literal: s.to_string(),
        reason,
    };
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(BigRational::from_integer)
            .map_err(|_| bad("not an integer")),
        Some((num, den)) => {
            let n = BigInt::from_str(num).map_err(|_| bad("bad numerator"))?;
            let d = BigInt::from_str(den).map_err(|_| bad("bad denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Eigenvalue sign counts of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
}

/// Dense matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Rational,
    ) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<RationalMatrix, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(LinalgError::RaggedRow {
                    row: i,
                    got: row.len(),
                    expected: c,
                });
            }
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        RationalMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols)
                .map(|k| self.get(i, k) * other.get(k, j))
                .sum()
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Eigenvalue sign counts by congruence-preserving symmetric elimination
    /// (Sylvester's law of inertia). A zero diagonal with a nonzero
    /// off-diagonal partner takes a 2x2 hyperbolic block contributing one
    /// negative and one positive eigenvalue.
    pub fn inertia(&self) -> Result<Inertia, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return Err(LinalgError::NotSymmetric(i, j));
                }
            }
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inertia = Inertia {
            negative: 0,
            zero: 0,
            positive: 0,
        };
        let mut i = 0;
        while i < n {
            if a.get(i, i).is_zero() {
                // Prefer a diagonal pivot elsewhere in the trailing block.
                if let Some(j) = ((i + 1)..n).find(|&j| !a.get(j, j).is_zero()) {
                    a.swap_rows(i, j);
                    a.swap_cols(i, j);
                } else if let Some(j) = ((i + 1)..n).find(|&j| !a.get(i, j).is_zero()) {
                    // Hyperbolic 2x2 block: both diagonals vanish here.
                    a.swap_rows(i + 1, j);
                    a.swap_cols(i + 1, j);
                    let b = a.get(i, i + 1).clone();
                    for k in (i + 2)..n {
                        let alpha = a.get(k, i + 1) / &b;
                        let beta = a.get(k, i) / &b;
                        for l in (i + 2)..n {
                            let v = a.get(k, l) - &alpha * a.get(i, l) - &beta * a.get(i + 1, l);
                            a.set(k, l, v);
                        }
                    }
                    inertia.negative += 1;
                    inertia.positive += 1;
                    i += 2;
                    continue;
                } else {
                    // Entire trailing row/column is zero.
                    inertia.zero += 1;
                    i += 1;
                    continue;
                }
            }
            let pivot = a.get(i, i).clone();
            if pivot.is_negative() {
                inertia.negative += 1;
            } else {
                inertia.positive += 1;
            }
            for k in (i + 1)..n {
                let f = a.get(k, i) / &pivot;
                if f.is_zero() {
                    continue;
                }
                for l in (i + 1)..n {
                    let v = a.get(k, l) - &f * a.get(i, l);
                    a.set(k, l, v);
                }
            }
            i += 1;
        }
        Ok(inertia)
    }

    /// Exact rank via rational Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.rank_and_pivots().0
    }

    /// Rank plus, for each column, whether it carries a pivot. Free columns
    /// of a homogeneous system correspond to independent solutions.
    pub fn rank_and_pivots(&self) -> (usize, Vec<bool>) {
        let mut a = self.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut pivot_col = vec![false; cols];
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let pivot = a.get(r, c).clone();
            for i in (r + 1)..rows {
                let f = a.get(i, c) / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let v = a.get(i, j) - &f * a.get(r, j);
                    a.set(i, j, v);
                }
            }
            pivot_col[c] = true;
            r += 1;
            if r == rows {
                break;
            }
        }
        (r, pivot_col)
    }

    /// Kernel dimension of the square matrix.
    pub fn corank(&self) -> usize {
        assert_eq!(
            self.rows, self.cols,
            "corank is defined for square matrices"
        );
        self.rows - self.rank()
    }

    /// Solution-space dimension of the homogeneous system `self * x = 0`.
    pub fn nullspace_dimension(&self) -> usize {
        self.cols - self.rank()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Quarantined floating-point helpers: eigenvalues for the certificate
/// search heuristic and for wide-margin cross-checks in tests. Floats may
/// propose; only the exact routines above decide.
pub mod float {
    /// Eigenvalues and eigenvectors of a symmetric matrix by cyclic Jacobi
    /// rotations. Returns (eigenvalues, eigenvectors) with eigenvalues
    /// ascending; eigenvector k is `vectors[k]`.
    pub fn symmetric_eigen(a: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
        let n = a.len();
        let mut m: Vec<Vec<f64>> = a.to_vec();
        let mut v: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        for _sweep in 0..100 {
            let mut off = 0.0;
            for i in 0..n {
                for j in (i + 1)..n {
                    off += m[i][j] * m[i][j];
                }
            }
            if off < 1e-24 {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    if m[p][q].abs() < 1e-15 {
                        continue;
                    }
                    let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let (mkp, mkq) = (m[k][p], m[k][q]);
                        m[k][p] = c * mkp - s * mkq;
                        m[k][q] = s * mkp + c * mkq;
                    }
                    for k in 0..n {
                        let (mpk, mqk) = (m[p][k], m[q][k]);
                        m[p][k] = c * mpk - s * mqk;
                        m[q][k] = s * mpk + c * mqk;
                    }
                    for k in 0..n {
                        let (vkp, vkq) = (v[k][p], v[k][q]);
                        v[k][p] = c * vkp - s * vkq;
                        v[k][q] = s * vkp + c * vkq;
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| m[a][a].partial_cmp(&m[b][b]).unwrap());
        let vals: Vec<f64> = order.iter().map(|&i| m[i][i]).collect();
        let vecs: Vec<Vec<f64>> = order
            .iter()
            .map(|&i| (0..n).map(|k| v[k][i]).collect())
            .collect();
        (vals, vecs)
    }
}
