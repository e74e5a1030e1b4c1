//! Kernel representations of complete LTI behaviors.
//!
//! A behavior is the solution set {w : R(σ)w = 0} of a Laurent polynomial
//! matrix acting through the forward shift (σf)(t) := f(t+1). Completeness
//! means membership is decided by finite windows, so the operations here
//! work on finite trajectory windows only. Two representations describe the
//! same behavior exactly when one kernel matrix is a unimodular multiple of
//! the other, which the canonical staircase form decides by plain equality.
//!
//! Windows store exact rationals. Samples supplied as `f64` convert
//! losslessly (every float is dyadic), so residuals are computed without
//! rounding and a tolerance of zero is meaningful.

use thiserror::Error;

use crate::matrix::LaurentMatrix;
use crate::rational::{abs_le_tol, rat_from_f64, Rational};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BehaviorError {
    #[error("kernel matrix has normal rank {rank}, expected full row rank {rows}")]
    RankDeficient { rank: usize, rows: usize },
    #[error("kernel matrix row {row} is zero")]
    ZeroRow { row: usize },
    #[error("matrix is identically zero")]
    ZeroMatrix,
    #[error("window has {len} samples but the kernel stencil spans {stencil_plus_one}")]
    WindowTooShort { len: usize, stencil_plus_one: usize },
    #[error("window dimension {got} does not match signal dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("kernel shapes {left_rows}x{left_cols} and {right_rows}x{right_cols} do not match")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("window must contain at least one sample vector")]
    EmptyWindow,
    #[error("window sample {index} is not finite")]
    NonFiniteSample { index: usize },
    #[error("tolerance must be a finite nonnegative number, got {got}")]
    InvalidTolerance { got: f64 },
}

/// A validated kernel representation: an m×n Laurent matrix of full row
/// normal rank with no zero rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelRepresentation {
    matrix: LaurentMatrix,
}

impl KernelRepresentation {
    /// Validates a kernel matrix. Rank-deficient input is rejected rather
    /// than silently reduced; use [`KernelRepresentation::reduce`] to obtain
    /// a full-row-rank representation of the same behavior.
    pub fn new(matrix: LaurentMatrix) -> Result<Self, BehaviorError> {
        for i in 0..matrix.rows() {
            if matrix.row_is_zero(i) {
                return Err(BehaviorError::ZeroRow { row: i });
            }
        }
        let rank = matrix.normal_rank();
        if rank < matrix.rows() {
            return Err(BehaviorError::RankDeficient { rank, rows: matrix.rows() });
        }
        Ok(KernelRepresentation { matrix })
    }

    /// Extracts a full-row-rank kernel for the behavior of an arbitrary
    /// nonzero matrix: the nonzero rows of its canonical staircase form.
    /// Row operations by a unimodular transform leave the solution set
    /// unchanged, and dropped rows are identically zero.
    pub fn reduce(matrix: &LaurentMatrix) -> Result<Self, BehaviorError> {
        if matrix.is_zero_matrix() {
            return Err(BehaviorError::ZeroMatrix);
        }
        let canonical = matrix.hermite_form().canonical;
        let rows: Vec<Vec<_>> = (0..canonical.rows())
            .filter(|&i| !canonical.row_is_zero(i))
            .map(|i| canonical.row(i).to_vec())
            .collect();
        let reduced = LaurentMatrix::from_rows(rows).expect("nonzero matrix keeps a nonzero row");
        debug_assert_eq!(reduced.normal_rank(), reduced.rows());
        Ok(KernelRepresentation { matrix: reduced })
    }

    pub fn matrix(&self) -> &LaurentMatrix {
        &self.matrix
    }

    /// Equation count m.
    pub fn equation_count(&self) -> usize {
        self.matrix.rows()
    }

    /// Signal dimension n.
    pub fn signal_dimension(&self) -> usize {
        self.matrix.cols()
    }

    /// Lowest and highest shift exponents (ℓ, L) of the kernel.
    pub fn exponent_range(&self) -> (i64, i64) {
        self.matrix.exponent_range().expect("kernel has no zero rows")
    }

    /// Applies the kernel to a window: the residual r(t) = Σᵢ Rᵢ w(t+i) for
    /// every t at which all needed samples exist. The result starts at
    /// t₁ − ℓ and is shorter than the input by the stencil width L − ℓ.
    pub fn apply_shift(&self, w: &TrajectoryWindow) -> Result<TrajectoryWindow, BehaviorError> {
        if w.dim() != self.signal_dimension() {
            return Err(BehaviorError::DimensionMismatch {
                expected: self.signal_dimension(),
                got: w.dim(),
            });
        }
        let (low, high) = self.exponent_range();
        let stencil = (high - low) as usize;
        if w.len() <= stencil {
            return Err(BehaviorError::WindowTooShort {
                len: w.len(),
                stencil_plus_one: stencil + 1,
            });
        }
        let m = self.equation_count();
        let n = self.signal_dimension();
        let out_len = w.len() - stencil;
        let mut data = Vec::with_capacity(out_len * m);
        for k in 0..out_len {
            for row in 0..m {
                let mut acc = Rational::zero();
                for col in 0..n {
                    for (exp, c) in self.matrix.entry(row, col).terms() {
                        let sample_idx = k + (exp - low) as usize;
                        acc += c * &w.sample(sample_idx)[col];
                    }
                }
                data.push(acc);
            }
        }
        Ok(TrajectoryWindow {
            start_time: w.start_time() - low,
            dim: m,
            data,
            from_floats: w.from_floats,
        })
    }

    /// True iff every residual entry of [`Self::apply_shift`] has absolute
    /// value ≤ `tol`. The comparison is exact: `tol` is converted to its
    /// exact dyadic value first.
    pub fn is_member(&self, w: &TrajectoryWindow, tol: f64) -> Result<bool, BehaviorError> {
        if !(tol >= 0.0 && tol.is_finite()) {
            return Err(BehaviorError::InvalidTolerance { got: tol });
        }
        let residual = self.apply_shift(w)?;
        Ok(residual.data.iter().all(|r| abs_le_tol(r, tol)))
    }
}

/// Decides behavior equality: true iff the two kernels have identical
/// canonical staircase forms, equivalently iff R₁ = U·R₂ for a unimodular U.
pub fn behaviors_equivalent(
    k1: &KernelRepresentation,
    k2: &KernelRepresentation,
) -> Result<bool, BehaviorError> {
    if k1.equation_count() != k2.equation_count()
        || k1.signal_dimension() != k2.signal_dimension()
    {
        return Err(BehaviorError::ShapeMismatch {
            left_rows: k1.equation_count(),
            left_cols: k1.signal_dimension(),
            right_rows: k2.equation_count(),
            right_cols: k2.signal_dimension(),
        });
    }
    Ok(k1.matrix.hermite_form().canonical == k2.matrix.hermite_form().canonical)
}

/// Kernel of the intersection of two behaviors: the reduced vertical stack
/// [R₁; R₂]. A window lies in the result exactly when it lies in both.
pub fn intersect(
    k1: &KernelRepresentation,
    k2: &KernelRepresentation,
) -> Result<KernelRepresentation, BehaviorError> {
    if k1.signal_dimension() != k2.signal_dimension() {
        return Err(BehaviorError::DimensionMismatch {
            expected: k1.signal_dimension(),
            got: k2.signal_dimension(),
        });
    }
    let stack = k1.matrix.vstack(&k2.matrix).expect("dimensions checked");
    KernelRepresentation::reduce(&stack)
}

/// A finite window of vector samples w(t₁), …, w(t₂) with exact rational
/// entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectoryWindow {
    start_time: i64,
    dim: usize,
    data: Vec<Rational>,
    from_floats: bool,
}

impl TrajectoryWindow {
    /// Tolerance for windows built from exact rationals.
    pub const EXACT_TOLERANCE: f64 = 0.0;
    /// Tolerance for windows whose samples came from floating-point
    /// computations (simulation output and the like).
    pub const FLOAT_TOLERANCE: f64 = 1e-9;

    pub fn from_rows(start_time: i64, rows: Vec<Vec<Rational>>) -> Result<Self, BehaviorError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(BehaviorError::EmptyWindow);
        }
        let dim = rows[0].len();
        for r in &rows {
            if r.len() != dim {
                return Err(BehaviorError::DimensionMismatch { expected: dim, got: r.len() });
            }
        }
        Ok(TrajectoryWindow {
            start_time,
            dim,
            data: rows.into_iter().flatten().collect(),
            from_floats: false,
        })
    }

    /// Builds a window from floats; each sample converts to its exact
    /// dyadic rational value.
    pub fn from_f64_rows(start_time: i64, rows: Vec<Vec<f64>>) -> Result<Self, BehaviorError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(BehaviorError::EmptyWindow);
        }
        let dim = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * dim);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(BehaviorError::DimensionMismatch { expected: dim, got: r.len() });
            }
            for &x in r {
                data.push(
                    rat_from_f64(x).ok_or(BehaviorError::NonFiniteSample { index: i })?,
                );
            }
        }
        Ok(TrajectoryWindow { start_time, dim, data, from_floats: true })
    }

    /// Scalar window convenience.
    pub fn scalar(start_time: i64, samples: &[f64]) -> Result<Self, BehaviorError> {
        Self::from_f64_rows(start_time, samples.iter().map(|&x| vec![x]).collect())
    }

    pub fn start_time(&self) -> i64 {
        self.start_time
    }

    pub fn end_time(&self) -> i64 {
        self.start_time + self.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sample(&self, idx: usize) -> &[Rational] {
        &self.data[idx * self.dim..(idx + 1) * self.dim]
    }

    pub fn samples(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.len()).map(move |i| self.sample(i))
    }

    /// A copy of the window with a different start time (the same data).
    pub fn retimed(&self, start_time: i64) -> Self {
        TrajectoryWindow { start_time, ..self.clone() }
    }

    /// Default membership tolerance for this window: zero for exact input,
    /// [`Self::FLOAT_TOLERANCE`] for float-sourced input.
    pub fn default_tolerance(&self) -> f64 {
        if self.from_floats { Self::FLOAT_TOLERANCE } else { Self::EXACT_TOLERANCE }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LaurentPolynomial;
    use crate::rational::rat;

    fn poly(low: i64, coeffs: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_ints(low, coeffs)
    }

    fn kernel(rows: Vec<Vec<LaurentPolynomial>>) -> KernelRepresentation {
        KernelRepresentation::new(LaurentMatrix::from_rows(rows).unwrap()).unwrap()
    }

    fn shift_minus_one() -> KernelRepresentation {
        kernel(vec![vec![poly(0, &[-1, 1])]]) // z − 1
    }

    #[test]
    fn constant_windows_satisfy_the_difference_kernel() {
        let k = shift_minus_one();
        let w = TrajectoryWindow::scalar(0, &[3.0, 3.0, 3.0, 3.0]).unwrap();
        let r = k.apply_shift(&w).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.samples().all(|s| s[0].is_zero()));
        assert!(k.is_member(&w, 0.0).unwrap());
        let increasing = TrajectoryWindow::scalar(0, &[0.0, 1.0, 2.0]).unwrap();
        let r = k.apply_shift(&increasing).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.samples().all(|s| s[0] == rat(1, 1)));
        assert!(!k.is_member(&increasing, 0.0).unwrap());
    }

    #[test]
    fn geometric_window_lies_in_the_ar_kernel() {
        let k = kernel(vec![vec![LaurentPolynomial::from_coefficients(
            0,
            vec![rat(-1, 2), rat(1, 1)],
        )]]); // z − 1/2
        let w = TrajectoryWindow::scalar(0, &[1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125]).unwrap();
        assert!(k.is_member(&w, 1e-12).unwrap());
        assert!(k.is_member(&w, 0.0).unwrap());
    }

    #[test]
    fn vector_kernel_checks_equal_components() {
        let k = kernel(vec![vec![LaurentPolynomial::one(), poly(0, &[-1])]]); // [1, −1]
        let w =
            TrajectoryWindow::from_f64_rows(0, vec![vec![1.0, 1.0], vec![2.0, 2.0]]).unwrap();
        let r = k.apply_shift(&w).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.samples().all(|s| s[0].is_zero()));
    }

    #[test]
    fn residual_window_is_retimed_by_the_low_exponent() {
        // ℓ = −1, L = 1: residual at t needs samples t−1, t, t+1.
        let k = kernel(vec![vec![poly(-1, &[1, 0, 1])]]); // z⁻¹ + z
        let w = TrajectoryWindow::scalar(5, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let r = k.apply_shift(&w).unwrap();
        assert_eq!(r.start_time(), 6);
        assert_eq!(r.len(), 2);
        assert_eq!(r.sample(0)[0], rat(4, 1));
        assert_eq!(r.sample(1)[0], rat(6, 1));
    }

    #[test]
    fn construction_rejects_rank_deficiency_and_reduce_repairs_it() {
        let deficient = LaurentMatrix::from_rows(vec![
            vec![LaurentPolynomial::z(), LaurentPolynomial::z()],
            vec![LaurentPolynomial::one(), LaurentPolynomial::one()],
        ])
        .unwrap();
        assert_eq!(
            KernelRepresentation::new(deficient.clone()),
            Err(BehaviorError::RankDeficient { rank: 1, rows: 2 })
        );
        let reduced = KernelRepresentation::reduce(&deficient).unwrap();
        assert_eq!(
            reduced.matrix(),
            &LaurentMatrix::from_rows(vec![vec![
                LaurentPolynomial::one(),
                LaurentPolynomial::one()
            ]])
            .unwrap()
        );
    }

    #[test]
    fn reduce_drops_dependent_rows() {
        let m = LaurentMatrix::from_rows(vec![
            vec![poly(0, &[-1, 1])],
            vec![poly(1, &[-1, 1])], // z·(z − 1)
        ])
        .unwrap();
        let k = KernelRepresentation::reduce(&m).unwrap();
        assert_eq!(
            k.matrix(),
            &LaurentMatrix::from_rows(vec![vec![poly(0, &[-1, 1])]]).unwrap()
        );
        assert_eq!(
            KernelRepresentation::reduce(&LaurentMatrix::zeros(2, 2)),
            Err(BehaviorError::ZeroMatrix)
        );
    }

    #[test]
    fn equivalence_detects_unimodular_row_factors() {
        let k1 = kernel(vec![vec![
            LaurentPolynomial::from_coefficients(0, vec![rat(1, 2), rat(1, 1)]),
            LaurentPolynomial::from_coefficients(0, vec![rat(1, 5), rat(1, 1)]),
        ]]);
        // 2z·K1
        let scale = poly(1, &[2]);
        let k2 = KernelRepresentation::new(k1.matrix().map(|p| &scale * p)).unwrap();
        assert!(behaviors_equivalent(&k1, &k2).unwrap());
        assert!(behaviors_equivalent(&k1, &k1).unwrap());
        let k3 = kernel(vec![vec![
            LaurentPolynomial::from_coefficients(0, vec![rat(3, 10), rat(1, 1)]),
            LaurentPolynomial::from_coefficients(0, vec![rat(1, 5), rat(1, 1)]),
        ]]);
        assert!(!behaviors_equivalent(&k1, &k3).unwrap());
    }

    #[test]
    fn intersection_of_coordinate_kernels_pins_the_origin() {
        let k1 = kernel(vec![vec![LaurentPolynomial::one(), LaurentPolynomial::zero()]]);
        let k2 = kernel(vec![vec![LaurentPolynomial::zero(), LaurentPolynomial::one()]]);
        let both = intersect(&k1, &k2).unwrap();
        assert_eq!(both.matrix(), &LaurentMatrix::identity(2));
        let same = intersect(&k1, &k1).unwrap();
        assert!(behaviors_equivalent(&same, &k1).unwrap());
    }

    #[test]
    fn membership_is_shift_invariant() {
        let k = shift_minus_one();
        let w = TrajectoryWindow::scalar(0, &[2.0, 2.0, 2.0]).unwrap();
        for dt in [-7, 0, 13] {
            assert!(k.is_member(&w.retimed(dt), 0.0).unwrap());
        }
    }

    #[test]
    fn window_validation() {
        assert_eq!(
            TrajectoryWindow::scalar(0, &[]),
            Err(BehaviorError::EmptyWindow)
        );
        assert_eq!(
            TrajectoryWindow::scalar(0, &[f64::NAN]),
            Err(BehaviorError::NonFiniteSample { index: 0 })
        );
        let k = shift_minus_one();
        let short = TrajectoryWindow::scalar(0, &[1.0]).unwrap();
        assert!(matches!(
            k.is_member(&short, 0.0),
            Err(BehaviorError::WindowTooShort { .. })
        ));
        assert!(matches!(
            k.is_member(&TrajectoryWindow::scalar(0, &[1.0, 1.0]).unwrap(), -1.0),
            Err(BehaviorError::InvalidTolerance { .. })
        ));
    }
}
