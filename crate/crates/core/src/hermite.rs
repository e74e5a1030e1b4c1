//! Canonical staircase (Hermite) form over ℚ[z, z⁻¹].
//!
//! Every matrix M has a unique canonical form H with U·M = H for some
//! unimodular U: an upper staircase whose pivots are unit-normal associates
//! (monic ordinary polynomials with nonzero constant term) and whose
//! above-pivot entries are the canonical residues modulo the pivot
//! (ordinary, degree strictly below the pivot's). Uniqueness makes
//! `canonical` an exact equality test for left-unimodular equivalence,
//! which is precisely behavior equality of kernel representations.
//!
//! The reduction is the Euclidean-domain Hermite algorithm: within each
//! column, repeated width-reducing divisions shrink all entries below the
//! pivot row into the pivot (computing a column GCD), the pivot is then
//! normalized by a unit λz^k, and entries above it are residue-reduced.

use crate::matrix::LaurentMatrix;
use crate::poly::LaurentPolynomial;
use crate::rational::Rational;
use num_traits::One;

/// Outcome of the staircase reduction: `transform · input = canonical`
/// exactly, with `transform` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteResult {
    pub canonical: LaurentMatrix,
    pub transform: LaurentMatrix,
}

impl LaurentMatrix {
    /// Canonical staircase form; see the module docs. The canonical matrix
    /// is identical for every U·M with U unimodular.
    pub fn hermite_form(&self) -> HermiteResult {
        let p = self.rows();
        let n = self.cols();
        let mut a = self.to_rows();
        let mut t = LaurentMatrix::identity(p).to_rows();
        let mut pivot_row = 0;
        for col in 0..n {
            if pivot_row == p {
                break;
            }
            // Column GCD by Euclidean width reduction: divide every entry
            // below the working row by the smallest-width entry until one
            // survivor remains.
            loop {
                let mut best: Option<(usize, i64)> = None;
                for (i, row) in a.iter().enumerate().skip(pivot_row) {
                    if !row[col].is_zero() {
                        let w = row[col].width();
                        if best.is_none_or(|(_, bw)| w < bw) {
                            best = Some((i, w));
                        }
                    }
                }
                let Some((r, _)) = best else { break };
                if r != pivot_row {
                    a.swap(pivot_row, r);
                    t.swap(pivot_row, r);
                }
                let mut survivor_alone = true;
                for i in pivot_row + 1..p {
                    if a[i][col].is_zero() {
                        continue;
                    }
                    let (q, rem) = a[i][col].div_rem(&a[pivot_row][col]);
                    row_axpy_neg(&mut a, i, pivot_row, &q);
                    row_axpy_neg(&mut t, i, pivot_row, &q);
                    debug_assert_eq!(a[i][col], rem);
                    if !rem.is_zero() {
                        survivor_alone = false;
                    }
                }
                if survivor_alone {
                    break;
                }
            }
            if a[pivot_row][col].is_zero() {
                continue;
            }
            // Normalize the pivot to its unit-normal associate by the unit
            // row scaling (1/λ)·z^(−k).
            let (lambda, k, _) = a[pivot_row][col].unit_normal_parts();
            let inv = Rational::one() / lambda;
            scale_shift_row(&mut a, pivot_row, &inv, -k);
            scale_shift_row(&mut t, pivot_row, &inv, -k);
            // Residue-reduce the entries above the pivot.
            let pivot = a[pivot_row][col].clone();
            for i in 0..pivot_row {
                if a[i][col].is_zero() {
                    continue;
                }
                let (q, rem) = a[i][col].canonical_residue(&pivot);
                if !q.is_zero() {
                    row_axpy_neg(&mut a, i, pivot_row, &q);
                    row_axpy_neg(&mut t, i, pivot_row, &q);
                }
                debug_assert_eq!(a[i][col], rem);
            }
            pivot_row += 1;
        }
        let canonical = LaurentMatrix::from_rows(a).expect("shape preserved");
        let transform = LaurentMatrix::from_rows(t).expect("shape preserved");
        debug_assert_eq!(&transform * self, canonical);
        HermiteResult { canonical, transform }
    }
}

/// rows[dst] −= q · rows[src]
fn row_axpy_neg(
    rows: &mut [Vec<LaurentPolynomial>],
    dst: usize,
    src: usize,
    q: &LaurentPolynomial,
) {
    for j in 0..rows[src].len() {
        let delta = q * &rows[src][j];
        let updated = &rows[dst][j] - &delta;
        rows[dst][j] = updated;
    }
}

/// rows[i] ← (c·z^k) · rows[i]
fn scale_shift_row(rows: &mut [Vec<LaurentPolynomial>], i: usize, c: &Rational, k: i64) {
    for e in &mut rows[i] {
        *e = e.scaled(c).shifted(k);
    }
}
