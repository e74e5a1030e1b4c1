//! Matrices of Laurent polynomials.
//!
//! Structural decisions (determinant, normal rank, unimodularity) run in
//! exact rational arithmetic. Determinants use fraction-free Bareiss
//! elimination after each row is scaled by a monomial z^(−ℓ) to make it an
//! ordinary-polynomial row; the scaling is a unimodular operation, so the
//! stripped monomial factor is simply reapplied at the end. The normal rank
//! additionally has a randomized evaluation fast path that can confirm full
//! rank early; anything short of full rank is re-decided exactly.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::One;
use thiserror::Error;

use crate::poly::LaurentPolynomial;
use crate::rational::{rat_to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("matrix needs at least one row and one column")]
    EmptyMatrix,
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    EntryCount { rows: usize, cols: usize, expected: usize, got: usize },
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, got: usize },
    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare { op: &'static str, rows: usize, cols: usize },
    #[error("matrix is not unimodular: determinant {det} is not a nonzero monomial")]
    NotUnimodular { det: String },
    #[error("cannot stack matrices with {left_cols} and {right_cols} columns")]
    StackMismatch { left_cols: usize, right_cols: usize },
}

/// A p×n matrix over ℚ[z, z⁻¹], stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPolynomial>,
}

impl LaurentMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        entries: Vec<LaurentPolynomial>,
    ) -> Result<Self, AlgebraError> {
        if rows == 0 || cols == 0 {
            return Err(AlgebraError::EmptyMatrix);
        }
        if entries.len() != rows * cols {
            return Err(AlgebraError::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(LaurentMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPolynomial>>) -> Result<Self, AlgebraError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(AlgebraError::EmptyMatrix);
        }
        let cols = rows[0].len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(AlgebraError::RaggedRow { row: i, expected: cols, got: r.len() });
            }
        }
        let row_count = rows.len();
        Ok(LaurentMatrix {
            rows: row_count,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> LaurentPolynomial,
    ) -> Result<Self, AlgebraError> {
        if rows == 0 || cols == 0 {
            return Err(AlgebraError::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Ok(LaurentMatrix { rows, cols, entries })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j { LaurentPolynomial::one() } else { LaurentPolynomial::zero() }
        })
        .expect("n >= 1")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| LaurentPolynomial::zero()).expect("nonempty")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPolynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &LaurentPolynomial> {
        self.entries.iter()
    }

    pub fn row(&self, i: usize) -> &[LaurentPolynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Clones the matrix out as a vector of rows (working form for the
    /// staircase reduction).
    pub fn to_rows(&self) -> Vec<Vec<LaurentPolynomial>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(LaurentPolynomial::is_zero)
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(LaurentPolynomial::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.entry(j, i).clone()).expect("nonempty")
    }

    /// The star operation M*(z) := Mᵀ(1/z).
    pub fn star(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.entry(j, i).star()).expect("nonempty")
    }

    pub fn map(&self, f: impl Fn(&LaurentPolynomial) -> LaurentPolynomial) -> Self {
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        self.map(|p| p.scaled(c))
    }

    /// Multiplies every entry by z^k.
    pub fn shifted(&self, k: i64) -> Self {
        self.map(|p| p.shifted(k))
    }

    /// Vertical stack [self; other].
    pub fn vstack(&self, other: &LaurentMatrix) -> Result<Self, AlgebraError> {
        if self.cols != other.cols {
            return Err(AlgebraError::StackMismatch {
                left_cols: self.cols,
                right_cols: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(LaurentMatrix { rows: self.rows + other.rows, cols: self.cols, entries })
    }

    /// Smallest and largest exponents over all entries; `None` if the matrix
    /// is identically zero.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        let mut range: Option<(i64, i64)> = None;
        for e in &self.entries {
            if e.is_zero() {
                continue;
            }
            let (lo, hi) = (e.low_exponent(), e.high_exponent());
            range = Some(match range {
                None => (lo, hi),
                Some((a, b)) => (a.min(lo), b.max(hi)),
            });
        }
        range
    }

    /// The real coefficient matrix of z^k, in floating point (simulation use).
    pub fn coefficient_matrix(&self, k: i64) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| rat_to_f64(&self.entry(i, j).coeff(k)))
    }

    /// Evaluates the matrix at a complex point.
    pub fn eval(&self, z: Complex64) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.entry(i, j).eval(z))
    }

    /// Exact determinant. Each row is first scaled by z^(−ℓ_row) so Bareiss
    /// fraction-free elimination runs over ordinary polynomials; the product
    /// of the stripped monomials multiplies the result back at the end.
    pub fn determinant(&self) -> Result<LaurentPolynomial, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare {
                op: "determinant",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut shift_total = 0i64;
        let mut a: Vec<Vec<LaurentPolynomial>> = Vec::with_capacity(n);
        for i in 0..n {
            if self.row_is_zero(i) {
                return Ok(LaurentPolynomial::zero());
            }
            let ell = self
                .row(i)
                .iter()
                .filter(|p| !p.is_zero())
                .map(LaurentPolynomial::low_exponent)
                .min()
                .expect("nonzero row");
            shift_total += ell;
            a.push(self.row(i).iter().map(|p| p.shifted(-ell)).collect());
        }
        let mut sign = false;
        let mut prev = LaurentPolynomial::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
                match swap {
                    Some(i) => {
                        a.swap(k, i);
                        sign = !sign;
                    }
                    None => return Ok(LaurentPolynomial::zero()),
                }
            }
            if k + 1 == n {
                break;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num
                        .div_exact(&prev)
                        .expect("Bareiss elimination divides exactly over an integral domain");
                }
                a[i][k] = LaurentPolynomial::zero();
            }
            prev = a[k][k].clone();
        }
        let mut det = a[n - 1][n - 1].shifted(shift_total);
        if sign {
            det = -det;
        }
        Ok(det)
    }

    /// Exact normal rank by fraction-free elimination with full pivoting.
    pub fn normal_rank_exact(&self) -> usize {
        let mut a: Vec<Vec<LaurentPolynomial>> = (0..self.rows)
            .map(|i| {
                let ell = self
                    .row(i)
                    .iter()
                    .filter(|p| !p.is_zero())
                    .map(LaurentPolynomial::low_exponent)
                    .min();
                match ell {
                    Some(ell) => self.row(i).iter().map(|p| p.shifted(-ell)).collect(),
                    None => self.row(i).to_vec(),
                }
            })
            .collect();
        let bound = self.rows.min(self.cols);
        let mut prev = LaurentPolynomial::one();
        let mut rank = 0;
        for step in 0..bound {
            // Pick the nonzero pivot of smallest width to limit growth.
            let mut pivot: Option<(usize, usize, i64)> = None;
            for (i, row) in a.iter().enumerate().skip(step) {
                for (j, p) in row.iter().enumerate().skip(step) {
                    if p.is_zero() {
                        continue;
                    }
                    let w = p.width();
                    if pivot.is_none_or(|(_, _, pw)| w < pw) {
                        pivot = Some((i, j, w));
                    }
                }
            }
            let Some((pi, pj, _)) = pivot else { break };
            a.swap(step, pi);
            if pj != step {
                for row in a.iter_mut() {
                    row.swap(step, pj);
                }
            }
            rank += 1;
            for i in step + 1..self.rows {
                for j in step + 1..self.cols {
                    let num = &(&a[step][step] * &a[i][j]) - &(&a[i][step] * &a[step][j]);
                    a[i][j] = num
                        .div_exact(&prev)
                        .expect("Bareiss elimination divides exactly over an integral domain");
                }
                a[i][step] = LaurentPolynomial::zero();
            }
            prev = a[step][step].clone();
        }
        rank
    }

    /// Randomized fast path: the rank of M(z₀) never exceeds the normal rank,
    /// so a full-rank evaluation settles the question. Points are spread on
    /// the unit circle at irrational (golden-ratio) angle spacing to stay
    /// clear of structured rank-drop points.
    pub fn normal_rank_probe(&self) -> usize {
        const GOLDEN: f64 = 0.618_033_988_749_894_9;
        let mut best = 0;
        for k in 1..=3u32 {
            let angle = std::f64::consts::TAU * (f64::from(k) * GOLDEN).fract();
            let z = Complex64::new(angle.cos(), angle.sin());
            best = best.max(numeric_rank(&self.eval(z), 1e-8));
            if best == self.rows.min(self.cols) {
                break;
            }
        }
        best
    }

    /// Normal rank: the probe may confirm full rank early; every other
    /// outcome is decided by the exact elimination.
    pub fn normal_rank(&self) -> usize {
        let bound = self.rows.min(self.cols);
        if self.normal_rank_probe() == bound {
            return bound;
        }
        self.normal_rank_exact()
    }

    /// True iff the matrix is square and its determinant is a nonzero
    /// monomial λz^k. Non-square input returns false.
    pub fn is_unimodular(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        self.determinant().expect("square").as_monomial().is_some()
    }

    /// Adjugate (classical adjoint): adj(M)·M = det(M)·I exactly.
    pub fn adjugate(&self) -> Result<LaurentMatrix, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare {
                op: "adjugate",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        Self::from_fn(n, n, |i, j| {
            // Entry (i, j) is the (j, i) cofactor.
            let cof = self.minor(j, i).determinant().expect("square minor");
            if (i + j) % 2 == 0 { cof } else { -cof }
        })
    }

    /// Exact inverse of a unimodular matrix: adjugate divided by the
    /// monomial determinant. The result satisfies U·U⁻¹ = I exactly.
    pub fn unimodular_inverse(&self) -> Result<LaurentMatrix, AlgebraError> {
        let det = match self.determinant() {
            Ok(det) => det,
            Err(AlgebraError::NotSquare { rows, cols, .. }) => {
                return Err(AlgebraError::NotSquare { op: "unimodular_inverse", rows, cols })
            }
            Err(e) => return Err(e),
        };
        let Some((lambda, k)) = det.as_monomial() else {
            return Err(AlgebraError::NotUnimodular { det: det.to_string() });
        };
        let scale = Rational::one() / lambda;
        let inv = self.adjugate()?.map(|p| p.scaled(&scale).shifted(-k));
        debug_assert_eq!(&inv * self, Self::identity(self.rows));
        Ok(inv)
    }

    /// The matrix with row `i` and column `j` removed (n ≥ 2), or [[1]] for
    /// a 1×1 input so that the adjugate of a scalar is 1.
    fn minor(&self, i: usize, j: usize) -> LaurentMatrix {
        let n = self.rows;
        if n == 1 {
            return Self::identity(1);
        }
        Self::from_fn(n - 1, n - 1, |r, c| {
            let rr = if r < i { r } else { r + 1 };
            let cc = if c < j { c } else { c + 1 };
            self.entry(rr, cc).clone()
        })
        .expect("n >= 2")
    }
}

/// Numeric rank of a complex matrix by full-pivot elimination; entries below
/// `tol_rel` times the largest initial magnitude count as zero.
fn numeric_rank(m: &DMatrix<Complex64>, tol_rel: f64) -> usize {
    let mut a = m.clone();
    let scale = a.iter().map(|c| c.norm()).fold(0.0_f64, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let tol = tol_rel * scale;
    let (rows, cols) = a.shape();
    let mut rank = 0;
    for step in 0..rows.min(cols) {
        let mut best = (step, step, 0.0_f64);
        for i in step..rows {
            for j in step..cols {
                let mag = a[(i, j)].norm();
                if mag > best.2 {
                    best = (i, j, mag);
                }
            }
        }
        if best.2 <= tol {
            break;
        }
        a.swap_rows(step, best.0);
        a.swap_columns(step, best.1);
        rank += 1;
        let pivot = a[(step, step)];
        for i in step + 1..rows {
            let factor = a[(i, step)] / pivot;
            for j in step..cols {
                let delta = factor * a[(step, j)];
                a[(i, j)] -= delta;
            }
        }
    }
    rank
}

impl Add for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn add(self, rhs: Self) -> LaurentMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix addition shape mismatch");
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn sub(self, rhs: Self) -> LaurentMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix subtraction shape mismatch"
        );
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn mul(self, rhs: Self) -> LaurentMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        LaurentMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = LaurentPolynomial::zero();
            for k in 0..self.cols {
                acc = &acc + &(self.entry(i, k) * rhs.entry(k, j));
            }
            acc
        })
        .expect("nonempty")
    }
}

impl Mul for LaurentMatrix {
    type Output = LaurentMatrix;
    fn mul(self, rhs: Self) -> LaurentMatrix {
        &self * &rhs
    }
}

/// Prints in the text grammar the CLI parses: `[ a, b ; c, d ]`.
impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, " ;")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, " {}", self.entry(i, j))?;
            }
        }
        write!(f, " ]")
    }
}
