//! Rational spectral densities and unimodular-invariant comparisons.
//!
//! A density is held through a spectral factor W rather than as an expanded
//! matrix: Φ = W·W* with W and W⁻¹ analytic in {|z| > 1}, i.e. all finite
//! poles of W and zeros of det W strictly inside the open unit disc (the
//! point at infinity is exempt). Factors of the same density differ by a
//! unimodular right factor, which `unimodular_equivalent` decides exactly;
//! `shape_distance` is a scalar pseudometric invariant under that action
//! and under positive rescaling.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::One;
use thiserror::Error;

use crate::behavior::KernelRepresentation;
use crate::matrix::{AlgebraError, LaurentMatrix};
use crate::poly::LaurentPolynomial;
use crate::rational::{rat_from_f64, rat_to_f64, Rational};
use crate::roots::nonzero_roots;

/// Grid resolution used by default for spectral evaluations.
pub const DEFAULT_GRID: usize = 1024;

/// Roots at least this far inside the unit circle count as stable.
const STABILITY_MARGIN: f64 = 1e-9;
/// Root pairs (r, 1/r̄) are matched with this relative tolerance, and roots
/// this close to the circle abort factorization.
const PAIRING_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare { op: &'static str, rows: usize, cols: usize },
    #[error("kernel is unstable: determinant root of modulus {max_modulus} outside the unit disc")]
    UnstableKernel { max_modulus: f64, roots: Vec<(f64, f64)> },
    #[error("kernel determinant has a root of modulus {modulus} on the unit circle")]
    CircleRoot { modulus: f64 },
    #[error("factor has a {what} of modulus {modulus}, outside the stable region")]
    NotStable { what: &'static str, modulus: f64 },
    #[error("evaluation grid point theta={theta} is within 1e-12 of a pole")]
    EvaluationSingular { theta: f64 },
    #[error("density is not parahermitian")]
    NotParahermitian,
    #[error("density is not coercive: value {value} at theta={theta}")]
    NotCoercive { theta: f64, value: f64 },
    #[error("root of modulus {modulus} is within {PAIRING_TOL} of the unit circle")]
    RootOnCircle { modulus: f64 },
    #[error("roots do not pair as (r, 1/conj(r)) within the matching tolerance")]
    PairingFailed,
    #[error("factor verification failed: expansion residual {residual}")]
    FactorMismatch { residual: f64 },
    #[error("dimensions {left} and {right} do not match")]
    DimensionMismatch { left: usize, right: usize },
    #[error("factor is singular (zero determinant)")]
    SingularFactor,
    #[error("operation needs a scalar (1x1) density, got dimension {got}")]
    NotScalar { got: usize },
    #[error("denominator polynomial is zero")]
    ZeroDenominator,
    #[error("grid size {got} is below the minimum {min}")]
    GridTooSmall { got: usize, min: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A rational matrix stored as Laurent polynomial entries over one common
/// denominator. The representation is reduced: no nonconstant polynomial
/// divides the denominator together with every entry, and the denominator
/// is unit-normal (monic ordinary with nonzero constant term).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    entries: LaurentMatrix,
    denominator: LaurentPolynomial,
}

impl RationalMatrix {
    pub fn new(
        entries: LaurentMatrix,
        denominator: LaurentPolynomial,
    ) -> Result<Self, SpectralError> {
        if denominator.is_zero() {
            return Err(SpectralError::ZeroDenominator);
        }
        let mut g = denominator.unit_normal();
        for e in entries.entries() {
            if g.width() == 0 {
                break;
            }
            g = g.gcd(e);
        }
        let (entries, denominator) = if g.is_one() {
            (entries, denominator)
        } else {
            (
                entries.map(|e| e.div_exact(&g).expect("gcd divides every entry")),
                denominator.div_exact(&g).expect("gcd divides the denominator"),
            )
        };
        // Shift the remaining unit λz^k of the denominator into the entries.
        let (lambda, k, den) = denominator.unit_normal_parts();
        let inv = Rational::one() / lambda;
        let entries = entries.map(|e| e.scaled(&inv).shifted(-k));
        Ok(RationalMatrix { entries, denominator: den })
    }

    /// A Laurent matrix viewed as rational (denominator 1).
    pub fn from_laurent(entries: LaurentMatrix) -> Self {
        Self::new(entries, LaurentPolynomial::one()).expect("denominator is one")
    }

    /// Scalar rational function num/den.
    pub fn scalar(
        num: LaurentPolynomial,
        den: LaurentPolynomial,
    ) -> Result<Self, SpectralError> {
        Self::new(
            LaurentMatrix::new(1, 1, vec![num]).expect("1x1"),
            den,
        )
    }

    pub fn numerator(&self) -> &LaurentMatrix {
        &self.entries
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.denominator
    }

    pub fn rows(&self) -> usize {
        self.entries.rows()
    }

    pub fn cols(&self) -> usize {
        self.entries.cols()
    }

    /// The matrix as Laurent polynomial when the reduced denominator is 1.
    pub fn as_laurent(&self) -> Option<&LaurentMatrix> {
        self.denominator.is_one().then_some(&self.entries)
    }

    /// The star operation (E/d)* = E*/d*.
    pub fn star(&self) -> Self {
        Self::new(self.entries.star(), self.denominator.star()).expect("star keeps den nonzero")
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<Self, SpectralError> {
        if self.cols() != rhs.rows() {
            return Err(SpectralError::DimensionMismatch { left: self.cols(), right: rhs.rows() });
        }
        Self::new(&self.entries * &rhs.entries, &self.denominator * &rhs.denominator)
    }

    /// Inverse (E/d)⁻¹ = d·adj(E)/det(E).
    pub fn inverse(&self) -> Result<Self, SpectralError> {
        if self.rows() != self.cols() {
            return Err(SpectralError::NotSquare {
                op: "inverse",
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let det = self.entries.determinant()?;
        if det.is_zero() {
            return Err(SpectralError::SingularFactor);
        }
        let adj = self.entries.adjugate()?;
        Self::new(adj.map(|p| p * &self.denominator), det)
    }

    /// Evaluates at a complex point; fails within 1e-12 of a pole.
    pub fn eval(&self, z: Complex64) -> Result<DMatrix<Complex64>, SpectralError> {
        let d = self.denominator.eval(z);
        if d.norm() < 1e-12 {
            return Err(SpectralError::EvaluationSingular { theta: z.arg() });
        }
        Ok(self.entries.eval(z).map(|v| v / d))
    }
}

/// A member of the stable factor class: square, full normal rank, all
/// poles and all zeros of the determinant strictly inside the unit disc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralFactor {
    value: RationalMatrix,
}

impl SpectralFactor {
    pub fn new(value: RationalMatrix) -> Result<Self, SpectralError> {
        if value.rows() != value.cols() {
            return Err(SpectralError::NotSquare {
                op: "spectral factor",
                rows: value.rows(),
                cols: value.cols(),
            });
        }
        let det = value.numerator().determinant()?;
        if det.is_zero() {
            return Err(SpectralError::SingularFactor);
        }
        for r in nonzero_roots(value.denominator()) {
            if r.norm() >= 1.0 - STABILITY_MARGIN {
                return Err(SpectralError::NotStable { what: "pole", modulus: r.norm() });
            }
        }
        for r in nonzero_roots(&det) {
            if r.norm() >= 1.0 - STABILITY_MARGIN {
                return Err(SpectralError::NotStable { what: "zero", modulus: r.norm() });
            }
        }
        Ok(SpectralFactor { value })
    }

    pub fn value(&self) -> &RationalMatrix {
        &self.value
    }

    pub fn dimension(&self) -> usize {
        self.value.rows()
    }

    pub fn eval(&self, z: Complex64) -> Result<DMatrix<Complex64>, SpectralError> {
        self.value.eval(z)
    }
}

/// A rational parahermitian coercive density Φ = W·W*, held via its factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralDensity {
    factor: SpectralFactor,
}

impl SpectralDensity {
    pub fn from_factor(factor: SpectralFactor) -> Self {
        SpectralDensity { factor }
    }

    pub fn factor(&self) -> &SpectralFactor {
        &self.factor
    }

    pub fn dimension(&self) -> usize {
        self.factor.dimension()
    }
}

fn unit_circle_point(k: usize, n: usize) -> Complex64 {
    let theta = std::f64::consts::TAU * k as f64 / n as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// The density of a stable square kernel: Φ = R⁻¹·R⁻*, held via the factor
/// W = R⁻¹ = adj(R)/det(R). The kernel determinant must have all roots
/// strictly inside the unit disc and none on the circle.
pub fn density_from_kernel(k: &KernelRepresentation) -> Result<SpectralDensity, SpectralError> {
    let matrix = k.matrix();
    if !matrix.is_square() {
        return Err(SpectralError::NotSquare {
            op: "density_from_kernel",
            rows: matrix.rows(),
            cols: matrix.cols(),
        });
    }
    let det = matrix.determinant()?;
    let roots = nonzero_roots(&det);
    let mut max_modulus = 0.0_f64;
    for r in &roots {
        let m = r.norm();
        if (m - 1.0).abs() <= STABILITY_MARGIN {
            return Err(SpectralError::CircleRoot { modulus: m });
        }
        max_modulus = max_modulus.max(m);
    }
    if max_modulus >= 1.0 {
        return Err(SpectralError::UnstableKernel {
            max_modulus,
            roots: roots.iter().map(|r| (r.re, r.im)).collect(),
        });
    }
    let w = RationalMatrix::new(matrix.adjugate()?, det)?;
    let factor = SpectralFactor::new(w)?;
    Ok(SpectralDensity::from_factor(factor))
}

/// Evaluates Φ(e^{jθ_k}) = W·Wᴴ at θ_k = 2πk/grid_size; each value is
/// Hermitian positive definite.
pub fn density_eval(
    d: &SpectralDensity,
    grid_size: usize,
) -> Result<Vec<DMatrix<Complex64>>, SpectralError> {
    if grid_size < 2 {
        return Err(SpectralError::GridTooSmall { got: grid_size, min: 2 });
    }
    let mut out = Vec::with_capacity(grid_size);
    for k in 0..grid_size {
        let w = d.factor.eval(unit_circle_point(k, grid_size))?;
        out.push(&w * w.adjoint());
    }
    Ok(out)
}

/// Scalar density values on the grid (real parts of the 1×1 evaluations).
pub fn density_eval_scalar(
    d: &SpectralDensity,
    grid_size: usize,
) -> Result<Vec<f64>, SpectralError> {
    if d.dimension() != 1 {
        return Err(SpectralError::NotScalar { got: d.dimension() });
    }
    Ok(density_eval(d, grid_size)?.into_iter().map(|m| m[(0, 0)].re).collect())
}

/// Splits a conjugate-reciprocal root set into its inside-the-disc half,
/// verifying every inside root r has an outside partner within relative
/// tolerance of 1/conj(r).
fn inside_roots_of_pairing(roots: &[Complex64]) -> Result<Vec<Complex64>, SpectralError> {
    for r in roots {
        if (r.norm() - 1.0).abs() < PAIRING_TOL {
            return Err(SpectralError::RootOnCircle { modulus: r.norm() });
        }
    }
    let inside: Vec<Complex64> = roots.iter().copied().filter(|r| r.norm() < 1.0).collect();
    let mut outside: Vec<Complex64> = roots.iter().copied().filter(|r| r.norm() > 1.0).collect();
    if inside.len() != outside.len() {
        return Err(SpectralError::PairingFailed);
    }
    for r in &inside {
        let target = 1.0 / r.conj();
        let best = outside
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (*a - target).norm().total_cmp(&(*b - target).norm()));
        match best {
            Some((idx, cand)) if (cand - target).norm() <= PAIRING_TOL * target.norm() => {
                outside.swap_remove(idx);
            }
            _ => return Err(SpectralError::PairingFailed),
        }
    }
    Ok(inside)
}

/// The monic polynomial with the given roots; the root set must be closed
/// under conjugation so the coefficients are real.
fn poly_from_roots(roots: &[Complex64]) -> LaurentPolynomial {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, v) in c.iter().enumerate() {
            next[i] -= r * v;
            next[i + 1] += v;
        }
        c = next;
    }
    LaurentPolynomial::from_coefficients(
        0,
        c.iter()
            .map(|v| rat_from_f64(v.re).expect("root products are finite"))
            .collect(),
    )
}

/// Minimum-phase spectral factorization of a scalar density: returns the
/// w ∈ 𝒲 with w·w* = phi and w(1) > 0. The numerator and denominator of a
/// reduced parahermitian rational function are each parahermitian up to a
/// unit, so their roots come in (r, 1/conj(r)) pairs; the factor keeps the
/// inside-the-disc half of each, and the gain is fixed by phi(1) = w(1)².
pub fn scalar_spectral_factor(phi: &RationalMatrix) -> Result<SpectralFactor, SpectralError> {
    if phi.rows() != 1 || phi.cols() != 1 {
        return Err(SpectralError::NotScalar { got: phi.rows().max(phi.cols()) });
    }
    let num = phi.numerator().entry(0, 0).clone();
    let den = phi.denominator().clone();
    if num.is_zero() {
        return Err(SpectralError::NotCoercive { theta: 0.0, value: 0.0 });
    }
    // Exact parahermitian test on the cross-multiplied form.
    if &num.star() * &den != &num * &den.star() {
        return Err(SpectralError::NotParahermitian);
    }
    // Coercivity on a 512-point grid.
    for k in 0..512 {
        let z = unit_circle_point(k, 512);
        let v = phi.eval(z)?[(0, 0)];
        if v.re <= 0.0 {
            return Err(SpectralError::NotCoercive {
                theta: std::f64::consts::TAU * k as f64 / 512.0,
                value: v.re,
            });
        }
    }
    let num_inside = inside_roots_of_pairing(&nonzero_roots(&num))?;
    let den_inside = inside_roots_of_pairing(&nonzero_roots(&den))?;
    let w_num = poly_from_roots(&num_inside);
    let w_den = poly_from_roots(&den_inside);
    // Positive gain from phi(1) = w(1)² (the grid above checked θ = 0).
    let one = Complex64::new(1.0, 0.0);
    let phi_at_one = phi.eval(one)?[(0, 0)].re;
    let w0_at_one = w_num.eval(one).re / w_den.eval(one).re;
    let gain = phi_at_one.sqrt() / w0_at_one;
    let w_num = w_num.scaled(&rat_from_f64(gain).ok_or(SpectralError::PairingFailed)?);
    // Verify w·w* = phi by exact expansion of the cross-multiplied form.
    let lhs = &(&w_num * &w_num.star()) * &den;
    let rhs = &num * &(&w_den * &w_den.star());
    let scale = rhs
        .terms()
        .map(|(_, c)| rat_to_f64(c).abs())
        .fold(1.0_f64, f64::max);
    let residual = (&lhs - &rhs)
        .terms()
        .map(|(_, c)| rat_to_f64(c).abs())
        .fold(0.0_f64, f64::max);
    if residual > 1e-9 * scale {
        return Err(SpectralError::FactorMismatch { residual });
    }
    SpectralFactor::new(RationalMatrix::scalar(w_num, w_den)?)
}

/// True iff W₁ = W₂·V for some unimodular Laurent V, i.e. V := W₂⁻¹·W₁ is a
/// Laurent polynomial matrix with monomial determinant. The division is
/// exact for exact inputs; for float-derived coefficients, remainders and
/// non-dominant determinant coefficients below 1e-9 (relative) are
/// treated as zero.
pub fn unimodular_equivalent(
    w1: &SpectralFactor,
    w2: &SpectralFactor,
) -> Result<bool, SpectralError> {
    if w1.dimension() != w2.dimension() {
        return Err(SpectralError::DimensionMismatch {
            left: w1.dimension(),
            right: w2.dimension(),
        });
    }
    let v = w2.value.inverse()?.mul(&w1.value)?;
    let v_matrix = if let Some(m) = v.as_laurent() {
        m.clone()
    } else {
        // Tolerant path: divide out the denominator entrywise and accept
        // only near-zero remainders.
        let den = v.denominator();
        let mut quotients = Vec::with_capacity(v.rows() * v.cols());
        for e in v.numerator().entries() {
            let (q, r) = e.div_rem(den);
            let scale = e
                .terms()
                .map(|(_, c)| rat_to_f64(c).abs())
                .fold(1.0_f64, f64::max);
            let rem_mag = r.terms().map(|(_, c)| rat_to_f64(c).abs()).fold(0.0_f64, f64::max);
            if rem_mag > 1e-9 * scale {
                return Ok(false);
            }
            quotients.push(q);
        }
        LaurentMatrix::new(v.rows(), v.cols(), quotients).expect("shape preserved")
    };
    let det = v_matrix.determinant()?;
    if det.is_zero() {
        return Ok(false);
    }
    if det.as_monomial().is_some() {
        return Ok(true);
    }
    // Tolerant monomial test for float-derived factors.
    let dominant = det.terms().map(|(_, c)| rat_to_f64(c).abs()).fold(0.0_f64, f64::max);
    Ok(det
        .terms()
        .filter(|(_, c)| rat_to_f64(c).abs() > 1e-9 * dominant)
        .count()
        == 1)
}

/// Mean-removed log-spectral L2 distance between two scalar densities on a
/// uniform grid: with r_k = log Φ₁ − log Φ₂,
/// d = sqrt(mean (r_k − mean r)²). Removing the mean makes the distance
/// exactly invariant under independent positive scalings Φᵢ → αᵢΦᵢ, and
/// scalar unimodular factors u = λz^k change a density by the constant λ²
/// on the circle, so the distance is invariant under those as well.
pub fn shape_distance(
    phi1: &SpectralDensity,
    phi2: &SpectralDensity,
    grid_size: usize,
) -> Result<f64, SpectralError> {
    if phi1.dimension() != 1 || phi2.dimension() != 1 {
        return Err(SpectralError::NotScalar { got: phi1.dimension().max(phi2.dimension()) });
    }
    if grid_size < 64 {
        return Err(SpectralError::GridTooSmall { got: grid_size, min: 64 });
    }
    let v1 = density_eval_scalar(phi1, grid_size)?;
    let v2 = density_eval_scalar(phi2, grid_size)?;
    let mut log_ratio = Vec::with_capacity(grid_size);
    for (k, (a, b)) in v1.iter().zip(&v2).enumerate() {
        if *a <= 0.0 || *b <= 0.0 {
            return Err(SpectralError::NotCoercive {
                theta: std::f64::consts::TAU * k as f64 / grid_size as f64,
                value: a.min(*b),
            });
        }
        log_ratio.push(a.ln() - b.ln());
    }
    let mean = log_ratio.iter().sum::<f64>() / grid_size as f64;
    let var = log_ratio.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / grid_size as f64;
    Ok(var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ar_kernel(a: Rational) -> KernelRepresentation {
        // z − a
        KernelRepresentation::new(
            LaurentMatrix::new(
                1,
                1,
                vec![LaurentPolynomial::from_coefficients(0, vec![-a, Rational::one()])],
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn ar1_density_matches_the_closed_form() {
        let d = density_from_kernel(&ar_kernel(rat(1, 2))).unwrap();
        // Φ(e^{jθ}) = 1/(1.25 − cos θ): value 4 at θ=0 and 1/2.25 at θ=π.
        let vals = density_eval_scalar(&d, 2).unwrap();
        assert!((vals[0] - 4.0).abs() < 1e-12);
        assert!((vals[1] - 1.0 / 2.25).abs() < 1e-12);
        let grid = density_eval_scalar(&d, 64).unwrap();
        for (k, v) in grid.iter().enumerate() {
            let theta = std::f64::consts::TAU * k as f64 / 64.0;
            assert!((v - 1.0 / (1.25 - theta.cos())).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_kernel_gives_the_flat_density() {
        let d = density_from_kernel(
            &KernelRepresentation::new(LaurentMatrix::identity(1)).unwrap(),
        )
        .unwrap();
        for v in density_eval_scalar(&d, 16).unwrap() {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn unstable_and_circle_kernels_are_rejected() {
        let unstable = density_from_kernel(&ar_kernel(rat(2, 1)));
        assert!(matches!(unstable, Err(SpectralError::UnstableKernel { .. })));
        let circle = density_from_kernel(&ar_kernel(rat(1, 1)));
        assert!(matches!(circle, Err(SpectralError::CircleRoot { .. })));
    }

    #[test]
    fn worked_scalar_factorization() {
        // phi = −z/2 + 5/4 − z⁻¹/2 = (z − 1/2)(z⁻¹ − 1/2); minimum-phase
        // factor z − 1/2 with w(1) = 1/2 = sqrt(phi(1)).
        let phi = RationalMatrix::scalar(
            LaurentPolynomial::from_coefficients(-1, vec![rat(-1, 2), rat(5, 4), rat(-1, 2)]),
            LaurentPolynomial::one(),
        )
        .unwrap();
        let w = scalar_spectral_factor(&phi).unwrap();
        let num = w.value().numerator().entry(0, 0);
        assert!(w.value().denominator().is_one());
        assert!((rat_to_f64(&num.coeff(1)) - 1.0).abs() < 1e-9);
        assert!((rat_to_f64(&num.coeff(0)) + 0.5).abs() < 1e-9);
    }

    #[test]
    fn constant_density_factors_to_its_square_root() {
        let phi = RationalMatrix::scalar(
            LaurentPolynomial::constant(rat(9, 4)),
            LaurentPolynomial::one(),
        )
        .unwrap();
        let w = scalar_spectral_factor(&phi).unwrap();
        let c = rat_to_f64(&w.value().numerator().entry(0, 0).coeff(0));
        assert!((c - 1.5).abs() < 1e-12);
    }

    #[test]
    fn factorization_rejects_bad_densities() {
        // z + 2 is not parahermitian.
        let phi = RationalMatrix::scalar(
            LaurentPolynomial::from_coefficients(0, vec![rat(2, 1), rat(1, 1)]),
            LaurentPolynomial::one(),
        )
        .unwrap();
        assert!(matches!(
            scalar_spectral_factor(&phi),
            Err(SpectralError::NotParahermitian)
        ));
        // z + z⁻¹ = 2cosθ is parahermitian but changes sign on the circle.
        let phi = RationalMatrix::scalar(
            LaurentPolynomial::from_coefficients(-1, vec![rat(1, 1), rat(0, 1), rat(1, 1)]),
            LaurentPolynomial::one(),
        )
        .unwrap();
        assert!(matches!(
            scalar_spectral_factor(&phi),
            Err(SpectralError::NotCoercive { .. })
        ));
        // −z/2 + 1 − z⁻¹/2 = −(1/2)z⁻¹(z − 1)² has a double root on the circle.
        let phi = RationalMatrix::scalar(
            LaurentPolynomial::from_coefficients(-1, vec![rat(-1, 2), rat(1, 1), rat(-1, 2)]),
            LaurentPolynomial::one(),
        )
        .unwrap();
        let err = scalar_spectral_factor(&phi);
        assert!(matches!(
            err,
            Err(SpectralError::RootOnCircle { .. }) | Err(SpectralError::NotCoercive { .. })
        ));
    }

    #[test]
    fn unimodular_equivalence_of_factors() {
        let den = LaurentPolynomial::from_coefficients(0, vec![rat(-1, 2), rat(1, 1)]);
        let w1 = SpectralFactor::new(
            RationalMatrix::scalar(LaurentPolynomial::one(), den.clone()).unwrap(),
        )
        .unwrap();
        // W₂ = 2z/(z − 1/2): V = W₂⁻¹W₁ = 1/(2z), a monomial.
        let w2 = SpectralFactor::new(
            RationalMatrix::scalar(LaurentPolynomial::monomial(rat(2, 1), 1), den).unwrap(),
        )
        .unwrap();
        assert!(unimodular_equivalent(&w1, &w2).unwrap());
        assert!(unimodular_equivalent(&w1, &w1).unwrap());
        let w3 = SpectralFactor::new(
            RationalMatrix::scalar(
                LaurentPolynomial::one(),
                LaurentPolynomial::from_coefficients(0, vec![rat(-3, 10), rat(1, 1)]),
            )
            .unwrap(),
        )
        .unwrap();
        assert!(!unimodular_equivalent(&w1, &w3).unwrap());
    }

    #[test]
    fn shape_distance_is_projectively_invariant() {
        let d1 = density_from_kernel(&ar_kernel(rat(1, 2))).unwrap();
        assert!(shape_distance(&d1, &d1, 256).unwrap() < 1e-15);
        // (49/16)Φ via the factor (7/4)W: scaling a factor scales the density.
        let scaled = SpectralFactor::new(RationalMatrix::scalar(
            d1.factor().value().numerator().entry(0, 0).scaled(&rat(7, 4)),
            d1.factor().value().denominator().clone(),
        ).unwrap())
        .unwrap();
        let d2 = SpectralDensity::from_factor(scaled);
        assert!(shape_distance(&d1, &d2, 256).unwrap() < 1e-12);
        let flat = density_from_kernel(
            &KernelRepresentation::new(LaurentMatrix::identity(1)).unwrap(),
        )
        .unwrap();
        let d = shape_distance(&d1, &flat, 1024).unwrap();
        let d_rev = shape_distance(&flat, &d1, 1024).unwrap();
        assert!((d - d_rev).abs() < 1e-15);
        assert!(d > 0.5);
    }

    #[test]
    fn rational_reduction_cancels_common_factors() {
        let zm1 = LaurentPolynomial::from_ints(0, &[-1, 1]);
        let num = &zm1 * &LaurentPolynomial::from_ints(0, &[2, 2]);
        let den = &zm1 * &LaurentPolynomial::from_ints(0, &[0, 3]);
        let r = RationalMatrix::scalar(num, den).unwrap();
        // (z−1)(2z+2) / (3z(z−1)) reduces to (2z+2)/(3z); the unit 3z moves
        // into the numerator, leaving 2/3 + 2/3·z⁻¹ over denominator 1.
        assert!(r.denominator().is_one());
        assert_eq!(r.numerator().entry(0, 0).low_exponent(), -1);
        let z = Complex64::new(0.3, 0.4);
        let direct = (z + 1.0) * 2.0 / (3.0 * z);
        let via = r.eval(z).unwrap()[(0, 0)];
        assert!((direct - via).norm() < 1e-12);
    }
}
