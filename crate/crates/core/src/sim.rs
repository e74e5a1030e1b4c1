//! White-noise-driven simulation of processes in kernel form, residual
//! extraction, and empirical spectrum estimation.
//!
//! With the forward shift convention (σf)(t) := f(t+1), the kernel equation
//! R(σ)w = e solves for the highest-index sample:
//! w(t+L) = R_L⁻¹ (e(t) − Σ_{i=ℓ}^{L−1} R_i w(t+i)). When the coefficient
//! of z^L is singular, an exact unimodular row transformation first brings
//! the kernel to row-proper form (every square full-normal-rank kernel
//! admits one), then all rows are shift-aligned to a common highest power.
//! The recursion starts from a zero window and discards a burn-in prefix
//! to approximate stationarity.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rustfft::FftPlanner;
use thiserror::Error;

use crate::behavior::{BehaviorError, KernelRepresentation, TrajectoryWindow};
use crate::matrix::{AlgebraError, LaurentMatrix};
use crate::noise::GaussianStream;
use crate::poly::LaurentPolynomial;
use crate::rational::Rational;
use crate::roots::nonzero_roots;
use crate::spectral::{density_eval_scalar, SpectralDensity, SpectralError};

/// Roots at least this far inside the unit circle count as stable.
const STABILITY_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("simulation requires a square kernel, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("kernel is unstable: determinant root of modulus {max_modulus}")]
    UnstableKernel { max_modulus: f64 },
    #[error("leading coefficient matrix is numerically singular")]
    LeadingCoefficientSingular,
    #[error("trajectory sample {index} is not finite")]
    NonFiniteSample { index: usize },
    #[error("trajectory data length {len} is not a multiple of the dimension {dim}")]
    RaggedData { len: usize, dim: usize },
    #[error("expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("trajectory of length {len} is too short for a stencil needing {needed} samples")]
    WindowTooShort { len: usize, needed: usize },
    #[error("simulation length must be at least 1")]
    InvalidLength,
    #[error("segment length {got} is not a power of two")]
    NotPowerOfTwo { got: usize },
    #[error("segment length {segment} exceeds the trajectory length {length}")]
    SegmentTooLong { segment: usize, length: usize },
    #[error("overlap fraction {got} is outside [0, 1)")]
    InvalidOverlap { got: f64 },
    #[error("estimate grid has {got} points, expected {expected}")]
    GridMismatch { expected: usize, got: usize },
    #[error("operation needs a scalar trajectory or density, got dimension {got}")]
    NotScalar { got: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Length, burn-in and seed of one simulation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub length: usize,
    pub burn_in: usize,
    pub seed: u64,
}

impl SimConfig {
    pub const DEFAULT_BURN_IN: usize = 1000;

    pub fn new(length: usize, seed: u64) -> Self {
        SimConfig { length, burn_in: Self::DEFAULT_BURN_IN, seed }
    }

    pub fn with_burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = burn_in;
        self
    }
}

/// A finite window of vector-valued samples, stored sample-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    start_time: i64,
    dim: usize,
    data: Vec<f64>,
}

impl Trajectory {
    pub fn new(start_time: i64, dim: usize, data: Vec<f64>) -> Result<Self, SimError> {
        assert!(dim >= 1, "trajectory dimension must be at least 1");
        if !data.len().is_multiple_of(dim) {
            return Err(SimError::RaggedData { len: data.len(), dim });
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(SimError::NonFiniteSample { index: index / dim });
        }
        Ok(Trajectory { start_time, dim, data })
    }

    pub fn from_rows(start_time: i64, rows: &[Vec<f64>]) -> Result<Self, SimError> {
        let dim = rows.first().map_or(1, Vec::len).max(1);
        for r in rows {
            if r.len() != dim {
                return Err(SimError::DimensionMismatch { expected: dim, got: r.len() });
            }
        }
        Self::new(start_time, dim, rows.concat())
    }

    pub fn scalar(start_time: i64, samples: Vec<f64>) -> Result<Self, SimError> {
        Self::new(start_time, 1, samples)
    }

    pub fn start_time(&self) -> i64 {
        self.start_time
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn sample(&self, idx: usize) -> &[f64] {
        &self.data[idx * self.dim..(idx + 1) * self.dim]
    }

    pub fn samples(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// The trajectory as an exact window for membership tests.
    pub fn to_window(&self) -> Result<TrajectoryWindow, BehaviorError> {
        TrajectoryWindow::from_f64_rows(
            self.start_time,
            self.samples().map(<[f64]>::to_vec).collect(),
        )
    }

    /// Drops the first `skip` samples, advancing the start time.
    pub fn tail(&self, skip: usize) -> Trajectory {
        Trajectory {
            start_time: self.start_time + skip as i64,
            dim: self.dim,
            data: self.data[skip.min(self.len()) * self.dim..].to_vec(),
        }
    }
}

/// Root report of a stability check on det R.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub stable: bool,
    pub max_modulus: f64,
    pub roots: Vec<Complex64>,
}

/// Locates the nonzero roots of det R; stable iff all are strictly inside
/// the unit disc (modulus below 1 − 1e−9).
pub fn stability_check(k: &KernelRepresentation) -> Result<StabilityReport, SimError> {
    let m = k.matrix();
    if !m.is_square() {
        return Err(SimError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let det = m.determinant()?;
    let roots = nonzero_roots(&det);
    let max_modulus = roots.iter().map(|r| r.norm()).fold(0.0_f64, f64::max);
    Ok(StabilityReport { stable: max_modulus < 1.0 - STABILITY_MARGIN, max_modulus, roots })
}

/// An exact nonzero solution of A·x = 0 for square rational A, or None if
/// A is nonsingular. Gauss-Jordan; returns at the first free column.
fn null_vector(mut a: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut pivot_row_of_col: Vec<Option<usize>> = vec![None; n];
    let mut next_row = 0;
    for col in 0..n {
        match (next_row..n).find(|&r| !a[r][col].is_zero()) {
            Some(r) => {
                a.swap(next_row, r);
                let p = a[next_row][col].clone();
                for e in &mut a[next_row][col..] {
                    *e = &*e / &p;
                }
                let pivot_tail = a[next_row][col..].to_vec();
                for (r2, row) in a.iter_mut().enumerate() {
                    if r2 != next_row && !row[col].is_zero() {
                        let f = row[col].clone();
                        for (e, pv) in row[col..].iter_mut().zip(&pivot_tail) {
                            let delta = &f * pv;
                            *e = &*e - &delta;
                        }
                    }
                }
                pivot_row_of_col[col] = Some(next_row);
                next_row += 1;
            }
            None => {
                let mut x = vec![Rational::zero(); n];
                x[col] = Rational::one();
                for c in 0..col {
                    if let Some(pr) = pivot_row_of_col[c] {
                        x[c] = -a[pr][col].clone();
                    }
                }
                return Some(x);
            }
        }
    }
    None
}

/// Unimodular row transformation to row-proper form with all row highest
/// exponents aligned, so the coefficient matrix of the top power is
/// nonsingular. Exact; terminates because the total row degree strictly
/// decreases and is bounded below by the determinant's highest exponent.
fn aligned_row_proper(matrix: &LaurentMatrix) -> LaurentMatrix {
    let n = matrix.rows();
    let mut rows = matrix.to_rows();
    let row_degree = |row: &[LaurentPolynomial]| -> i64 {
        row.iter()
            .filter(|p| !p.is_zero())
            .map(LaurentPolynomial::high_exponent)
            .max()
            .expect("full-normal-rank kernels have no zero row")
    };
    loop {
        let degs: Vec<i64> = rows.iter().map(|r| row_degree(r)).collect();
        let lambda: Vec<Vec<Rational>> = rows
            .iter()
            .zip(&degs)
            .map(|(r, &d)| r.iter().map(|p| p.coeff(d)).collect())
            .collect();
        // Left null vector of Λ = null vector of Λᵀ.
        let transposed: Vec<Vec<Rational>> =
            (0..n).map(|j| (0..n).map(|i| lambda[i][j].clone()).collect()).collect();
        let Some(v) = null_vector(transposed) else { break };
        let k = (0..n)
            .filter(|&i| !v[i].is_zero())
            .max_by_key(|&i| degs[i])
            .expect("null vector is nonzero");
        // Row k ← Σ vᵢ z^{δₖ−δᵢ} rowᵢ cancels the top coefficient; the
        // elementary factor has determinant vₖ, hence is unimodular.
        let new_row: Vec<LaurentPolynomial> = (0..n)
            .map(|j| {
                let mut acc = LaurentPolynomial::zero();
                for i in 0..n {
                    if v[i].is_zero() {
                        continue;
                    }
                    acc = &acc + &rows[i][j].scaled(&v[i]).shifted(degs[k] - degs[i]);
                }
                acc
            })
            .collect();
        rows[k] = new_row;
    }
    let degs: Vec<i64> = rows.iter().map(|r| row_degree(r)).collect();
    let top = *degs.iter().max().expect("at least one row");
    let aligned: Vec<Vec<LaurentPolynomial>> = rows
        .iter()
        .zip(&degs)
        .map(|(r, &d)| r.iter().map(|p| p.shifted(top - d)).collect())
        .collect();
    LaurentMatrix::from_rows(aligned).expect("shape preserved")
}

/// The float recursion data: coefficient matrices C_j of z^{L−j} for
/// j = 0..=d together with the LU inverse of C_0.
struct Recursion {
    inv_top: DMatrix<f64>,
    past: Vec<DMatrix<f64>>,
    dim: usize,
}

impl Recursion {
    fn prepare(matrix: &LaurentMatrix) -> Result<Self, SimError> {
        let proper = aligned_row_proper(matrix);
        let (low, high) = proper.exponent_range().expect("nonzero kernel");
        let top = proper.coefficient_matrix(high);
        let inv_top = top
            .clone()
            .try_inverse()
            .ok_or(SimError::LeadingCoefficientSingular)?;
        let past = (1..=(high - low) as usize)
            .map(|j| proper.coefficient_matrix(high - j as i64))
            .collect();
        Ok(Recursion { inv_top, past, dim: proper.rows() })
    }

    /// Runs w_s = C₀⁻¹(ε_s − Σ_j C_j w_{s−j}) over the noise samples.
    fn drive(&self, noise: &Trajectory) -> Result<Vec<f64>, SimError> {
        let n = self.dim;
        let total = noise.len();
        let d = self.past.len();
        let mut history: Vec<DVector<f64>> = vec![DVector::zeros(n); d.max(1)];
        let mut out = Vec::with_capacity(total * n);
        for (s, eps) in noise.samples().enumerate() {
            let mut rhs = DVector::from_column_slice(eps);
            // Samples before time 0 are the zero initial window.
            for (j, c) in self.past.iter().enumerate().take(s) {
                rhs -= c * &history[(s - 1 - j) % history.len()];
            }
            let w = &self.inv_top * rhs;
            if w.iter().any(|v| !v.is_finite()) {
                return Err(SimError::NonFiniteSample { index: s });
            }
            out.extend(w.iter().copied());
            if d > 0 {
                let slot = s % history.len();
                history[slot] = w;
            }
        }
        Ok(out)
    }
}

/// A simulation run: the retained trajectory and the noise samples that
/// drove it. With stencil span d = L − ℓ, the residual of the trajectory
/// under the kernel reproduces `noise` shifted by d samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SimRun {
    pub trajectory: Trajectory,
    pub noise: Trajectory,
}

fn checked_model(k: &KernelRepresentation) -> Result<(), SimError> {
    let report = stability_check(k)?;
    if !report.stable {
        return Err(SimError::UnstableKernel { max_modulus: report.max_modulus });
    }
    Ok(())
}

/// Drives the kernel with the given noise trajectory (one noise vector per
/// time step, dimension equal to the kernel's row count); returns the full
/// trajectory with no burn-in discard, aligned so sample s is produced
/// from noise sample s.
pub fn simulate_with_noise(
    k: &KernelRepresentation,
    noise: &Trajectory,
) -> Result<Trajectory, SimError> {
    let m = k.matrix();
    if !m.is_square() {
        return Err(SimError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if noise.dim() != m.rows() {
        return Err(SimError::DimensionMismatch { expected: m.rows(), got: noise.dim() });
    }
    checked_model(k)?;
    let rec = Recursion::prepare(m)?;
    let data = rec.drive(noise)?;
    Trajectory::new(noise.start_time(), m.rows(), data)
}

/// Simulates the process under a fresh standard normal draw and returns
/// both the post-burn-in trajectory and the noise that produced it, each
/// restarted at time 0. Identical configuration gives bitwise-identical
/// output.
pub fn simulate_run(
    p: &crate::process::LtiProcessModel,
    cfg: &SimConfig,
) -> Result<SimRun, SimError> {
    if cfg.length == 0 {
        return Err(SimError::InvalidLength);
    }
    let n = p.kernel().matrix().rows();
    let total = cfg.burn_in + cfg.length;
    let mut stream = GaussianStream::new(cfg.seed);
    let mut draws = vec![0.0; total * n];
    stream.fill(&mut draws);
    let noise = Trajectory::new(0, n, draws)?;
    let full = simulate_with_noise(p.kernel(), &noise)?;
    let mut trajectory = full.tail(cfg.burn_in);
    let mut kept_noise = noise.tail(cfg.burn_in);
    trajectory.start_time = 0;
    kept_noise.start_time = 0;
    Ok(SimRun { trajectory, noise: kept_noise })
}

/// The post-burn-in trajectory alone.
pub fn simulate(
    p: &crate::process::LtiProcessModel,
    cfg: &SimConfig,
) -> Result<Trajectory, SimError> {
    Ok(simulate_run(p, cfg)?.trajectory)
}

/// Applies the kernel stencil to a trajectory: e(t) = Σ_{i=ℓ}^{L} R_i w(t+i).
/// The output starts at w.start − ℓ and is d = L − ℓ samples shorter.
pub fn residual_noise(
    k: &KernelRepresentation,
    w: &Trajectory,
) -> Result<Trajectory, SimError> {
    let m = k.matrix();
    if w.dim() != m.cols() {
        return Err(SimError::DimensionMismatch { expected: m.cols(), got: w.dim() });
    }
    let (low, high) = k.exponent_range();
    let d = (high - low) as usize;
    if w.len() < d + 1 {
        return Err(SimError::WindowTooShort { len: w.len(), needed: d + 1 });
    }
    let coeffs: Vec<DMatrix<f64>> =
        (0..=d).map(|j| m.coefficient_matrix(low + j as i64)).collect();
    let out_len = w.len() - d;
    let mut data = Vec::with_capacity(out_len * m.rows());
    for t in 0..out_len {
        let mut acc = DVector::zeros(m.rows());
        for (j, c) in coeffs.iter().enumerate() {
            acc += c * DVector::from_column_slice(w.sample(t + j));
        }
        data.extend(acc.iter().copied());
    }
    Trajectory::new(w.start_time() - low, m.rows(), data)
}

/// Welch periodogram estimate on the grid θ_k = 2πk/segment_length.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEstimate {
    pub grid: Vec<f64>,
    pub values: Vec<DMatrix<Complex64>>,
    pub segment_count: usize,
    pub segment_length: usize,
}

impl SpectrumEstimate {
    /// Real scalar values when the trajectory was one-dimensional.
    pub fn scalar_values(&self) -> Result<Vec<f64>, SimError> {
        let dim = self.values.first().map_or(1, |m| m.nrows());
        if dim != 1 {
            return Err(SimError::NotScalar { got: dim });
        }
        Ok(self.values.iter().map(|m| m[(0, 0)].re).collect())
    }
}

/// Hann-windowed averaged periodogram with the density normalization of
/// this crate: a unit-variance white sequence estimates the flat density 1
/// (values are |X(θ_k)|²/Σh² averaged over segments; matrix trajectories
/// get the cross-spectral outer product X·Xᴴ).
pub fn welch_spectrum(
    w: &Trajectory,
    segment_length: usize,
    overlap_fraction: f64,
) -> Result<SpectrumEstimate, SimError> {
    if segment_length < 2 || !segment_length.is_power_of_two() {
        return Err(SimError::NotPowerOfTwo { got: segment_length });
    }
    if segment_length > w.len() {
        return Err(SimError::SegmentTooLong { segment: segment_length, length: w.len() });
    }
    if !(0.0..1.0).contains(&overlap_fraction) || !overlap_fraction.is_finite() {
        return Err(SimError::InvalidOverlap { got: overlap_fraction });
    }
    let hop = ((segment_length as f64) * (1.0 - overlap_fraction)).floor() as usize;
    let hop = hop.max(1);
    let window: Vec<f64> = (0..segment_length)
        .map(|j| 0.5 * (1.0 - (std::f64::consts::TAU * j as f64 / segment_length as f64).cos()))
        .collect();
    let window_power: f64 = window.iter().map(|h| h * h).sum();
    let n = w.dim();
    let fft = FftPlanner::new().plan_fft_forward(segment_length);
    let mut values = vec![DMatrix::<Complex64>::zeros(n, n); segment_length];
    let mut segment_count = 0;
    let mut spectra: Vec<Vec<Complex64>> = vec![vec![Complex64::zero(); segment_length]; n];
    let mut start = 0;
    while start + segment_length <= w.len() {
        for (i, chan) in spectra.iter_mut().enumerate() {
            for (j, slot) in chan.iter_mut().enumerate() {
                *slot = Complex64::new(window[j] * w.sample(start + j)[i], 0.0);
            }
            fft.process(chan);
        }
        for (k, value) in values.iter_mut().enumerate() {
            for r in 0..n {
                for c in 0..n {
                    value[(r, c)] += spectra[r][k] * spectra[c][k].conj();
                }
            }
        }
        segment_count += 1;
        start += hop;
    }
    let scale = 1.0 / (segment_count as f64 * window_power);
    for v in &mut values {
        *v *= Complex64::new(scale, 0.0);
    }
    let grid = (0..segment_length)
        .map(|k| std::f64::consts::TAU * k as f64 / segment_length as f64)
        .collect();
    Ok(SpectrumEstimate { grid, values, segment_count, segment_length })
}

/// Elementwise relative errors of a scalar estimate against the analytic
/// density evaluated on the same grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumReport {
    pub mean_relative_error: f64,
    pub max_relative_error: f64,
}

pub fn compare_spectrum(
    est: &SpectrumEstimate,
    d: &SpectralDensity,
) -> Result<SpectrumReport, SimError> {
    let analytic = density_eval_scalar(d, est.segment_length)?;
    let values = est.scalar_values()?;
    if values.len() != analytic.len() {
        return Err(SimError::GridMismatch { expected: analytic.len(), got: values.len() });
    }
    let mut sum = 0.0;
    let mut max = 0.0_f64;
    for (v, a) in values.iter().zip(&analytic) {
        let rel = (v - a).abs() / a;
        sum += rel;
        max = max.max(rel);
    }
    Ok(SpectrumReport {
        mean_relative_error: sum / values.len() as f64,
        max_relative_error: max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::LtiProcessModel;
    use crate::rational::rat;

    fn scalar_kernel(coeffs: &[i64], low: i64, den: i64) -> KernelRepresentation {
        let p = LaurentPolynomial::from_coefficients(
            low,
            coeffs.iter().map(|&c| rat(c, den)).collect(),
        );
        KernelRepresentation::new(LaurentMatrix::new(1, 1, vec![p]).unwrap()).unwrap()
    }

    fn ar1() -> KernelRepresentation {
        // z − 1/2
        scalar_kernel(&[-1, 2], 0, 2)
    }

    #[test]
    fn stability_reports() {
        assert!(stability_check(&ar1()).unwrap().stable);
        let circle = scalar_kernel(&[-1, 1], 0, 1);
        let r = stability_check(&circle).unwrap();
        assert!(!r.stable);
        assert!((r.max_modulus - 1.0).abs() < 1e-12);
        // Stacked first-order pair with determinant z/10 − 1/100: root 0.1.
        let stack = LaurentMatrix::from_rows(vec![
            vec![
                LaurentPolynomial::from_coefficients(0, vec![rat(1, 2), rat(1, 1)]),
                LaurentPolynomial::from_coefficients(0, vec![rat(1, 5), rat(1, 1)]),
            ],
            vec![
                LaurentPolynomial::from_coefficients(0, vec![rat(3, 10), rat(1, 1)]),
                LaurentPolynomial::from_coefficients(0, vec![rat(1, 10), rat(1, 1)]),
            ],
        ])
        .unwrap();
        let r = stability_check(&KernelRepresentation::new(stack).unwrap()).unwrap();
        assert!(r.stable);
        assert!((r.max_modulus - 0.1).abs() < 1e-9);
    }

    #[test]
    fn identity_kernel_reproduces_the_noise() {
        let p = LtiProcessModel::from_kernel(
            KernelRepresentation::new(LaurentMatrix::identity(1)).unwrap(),
        );
        let run = simulate_run(&p, &SimConfig::new(64, 7).with_burn_in(16)).unwrap();
        assert_eq!(run.trajectory, run.noise);
    }

    #[test]
    fn ar1_variance_matches_the_stationary_formula() {
        let p = LtiProcessModel::from_kernel(ar1());
        let w = simulate(&p, &SimConfig::new(1 << 17, 42)).unwrap();
        let n = w.len() as f64;
        let mean: f64 = w.data().iter().sum::<f64>() / n;
        let var: f64 = w.data().iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let target = 1.0 / (1.0 - 0.25);
        assert!((var - target).abs() / target < 0.03, "var {var}");
    }

    #[test]
    fn simulation_is_deterministic_and_seed_sensitive() {
        let p = LtiProcessModel::from_kernel(ar1());
        let cfg = SimConfig::new(512, 99);
        assert_eq!(simulate(&p, &cfg).unwrap(), simulate(&p, &cfg).unwrap());
        assert_ne!(
            simulate(&p, &cfg).unwrap(),
            simulate(&p, &SimConfig::new(512, 100)).unwrap()
        );
    }

    #[test]
    fn unstable_kernels_are_rejected() {
        let p = LtiProcessModel::from_kernel(scalar_kernel(&[-1, 1], 0, 1));
        assert!(matches!(
            simulate(&p, &SimConfig::new(16, 1)),
            Err(SimError::UnstableKernel { .. })
        ));
    }

    #[test]
    fn residual_recovers_the_injected_noise() {
        let p = LtiProcessModel::from_kernel(ar1());
        let run = simulate_run(&p, &SimConfig::new(4096, 5)).unwrap();
        let residual = residual_noise(p.kernel(), &run.trajectory).unwrap();
        let (low, high) = p.kernel().exponent_range();
        let d = (high - low) as usize;
        assert_eq!(residual.start_time(), -low);
        assert_eq!(residual.len(), run.trajectory.len() - d);
        for k in 0..residual.len() {
            let expected = run.noise.sample(k + d)[0];
            assert!((residual.sample(k)[0] - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn residual_of_a_constant_trajectory_under_difference_kernel_is_zero() {
        let k = scalar_kernel(&[-1, 1], 0, 1);
        let w = Trajectory::scalar(0, vec![2.5; 32]).unwrap();
        let r = residual_noise(&k, &w).unwrap();
        assert!(r.data().iter().all(|v| v.abs() == 0.0));
        let k1 = KernelRepresentation::new(LaurentMatrix::identity(1)).unwrap();
        let r = residual_noise(&k1, &w).unwrap();
        assert_eq!(r.data(), w.data());
    }

    #[test]
    fn row_transformation_handles_singular_leading_coefficients() {
        // Rows [z, z] and [z, z+1] have the singular top coefficient
        // matrix [[1,1],[1,1]], but det = z, so the kernel is unimodular
        // and stable (no determinant roots at all).
        let m = LaurentMatrix::from_rows(vec![
            vec![
                LaurentPolynomial::from_ints(1, &[1]),
                LaurentPolynomial::from_ints(1, &[1]),
            ],
            vec![
                LaurentPolynomial::from_ints(1, &[1]),
                LaurentPolynomial::from_ints(0, &[1, 1]),
            ],
        ])
        .unwrap();
        // det = z(z+1) − z·z = z: unimodular.
        let k = KernelRepresentation::new(m).unwrap();
        let p = LtiProcessModel::from_kernel(k);
        let run = simulate_run(&p, &SimConfig::new(256, 3).with_burn_in(32)).unwrap();
        assert_eq!(run.trajectory.dim(), 2);
        assert_eq!(run.trajectory.len(), 256);
    }

    #[test]
    fn injected_noise_scales_linearly() {
        let p = LtiProcessModel::from_kernel(ar1());
        let mut stream = GaussianStream::new(11);
        let mut base = vec![0.0; 128];
        stream.fill(&mut base);
        let scaled: Vec<f64> = base.iter().map(|v| 3.0 * v).collect();
        let w1 = simulate_with_noise(p.kernel(), &Trajectory::scalar(0, base).unwrap()).unwrap();
        let w3 = simulate_with_noise(p.kernel(), &Trajectory::scalar(0, scaled).unwrap()).unwrap();
        for (a, b) in w1.data().iter().zip(w3.data()) {
            assert!((3.0 * a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn welch_is_calibrated_on_white_noise() {
        let mut stream = GaussianStream::new(2024);
        let mut draws = vec![0.0; 1 << 17];
        stream.fill(&mut draws);
        let w = Trajectory::scalar(0, draws).unwrap();
        let est = welch_spectrum(&w, 1 << 10, 0.5).unwrap();
        let vals = est.scalar_values().unwrap();
        let mean: f64 = vals.iter().sum::<f64>() / vals.len() as f64;
        assert!((mean - 1.0).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn welch_tracks_the_ar1_density() {
        let p = LtiProcessModel::from_kernel(ar1());
        let w = simulate(&p, &SimConfig::new(1 << 17, 1)).unwrap();
        let est = welch_spectrum(&w, 256, 0.5).unwrap();
        let d = crate::spectral::density_from_kernel(p.kernel()).unwrap();
        let report = compare_spectrum(&est, &d).unwrap();
        assert!(report.mean_relative_error < 0.05, "{report:?}");
    }

    #[test]
    fn zero_trajectory_estimates_the_zero_spectrum() {
        let w = Trajectory::scalar(0, vec![0.0; 1024]).unwrap();
        let est = welch_spectrum(&w, 64, 0.5).unwrap();
        assert!(est.scalar_values().unwrap().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn welch_validates_its_arguments() {
        let w = Trajectory::scalar(0, vec![1.0; 100]).unwrap();
        assert!(matches!(
            welch_spectrum(&w, 100, 0.5),
            Err(SimError::NotPowerOfTwo { .. })
        ));
        assert!(matches!(
            welch_spectrum(&w, 128, 0.5),
            Err(SimError::SegmentTooLong { .. })
        ));
        assert!(matches!(
            welch_spectrum(&w, 64, 1.0),
            Err(SimError::InvalidOverlap { .. })
        ));
    }

    #[test]
    fn trajectory_validation() {
        assert!(matches!(
            Trajectory::new(0, 2, vec![1.0, 2.0, 3.0]),
            Err(SimError::RaggedData { .. })
        ));
        assert!(matches!(
            Trajectory::new(0, 1, vec![f64::NAN]),
            Err(SimError::NonFiniteSample { .. })
        ));
    }
}
