//! Numerical root finding for Laurent polynomials.

use num_complex::Complex64;

use crate::poly::LaurentPolynomial;
use crate::rational::rat_to_f64;

/// The finite nonzero roots of a Laurent polynomial: the roots of its
/// unit-normal (monic ordinary) part. A root at the origin (positive low
/// exponent) is part of the stripped unit λz^k; callers that care about it
/// handle the origin separately.
///
/// Roots are computed by the Aberth simultaneous iteration with a bounded
/// step count and a deliberately asymmetric start, so polynomials whose
/// root sets are symmetric (for example even polynomials) cannot stall the
/// iteration the way shifted-QR eigenvalue solvers stall on their
/// companion matrices.
pub fn nonzero_roots(p: &LaurentPolynomial) -> Vec<Complex64> {
    let normal = p.unit_normal();
    if normal.is_zero() {
        return Vec::new();
    }
    let deg = normal.high_exponent();
    if deg == 0 {
        return Vec::new();
    }
    let coeffs: Vec<f64> = (0..=deg).map(|k| rat_to_f64(&normal.coeff(k))).collect();
    aberth(&coeffs)
}

/// Largest root modulus (0.0 when there are no nonzero roots).
pub fn max_root_modulus(p: &LaurentPolynomial) -> f64 {
    nonzero_roots(p).iter().map(|r| r.norm()).fold(0.0, f64::max)
}

/// p(x) and p'(x) by a joint Horner pass; `c[d]` is the leading coefficient.
fn horner_pair(c: &[f64], x: Complex64) -> (Complex64, Complex64) {
    let mut value = Complex64::new(c[c.len() - 1], 0.0);
    let mut derivative = Complex64::new(0.0, 0.0);
    for k in (0..c.len() - 1).rev() {
        derivative = derivative * x + value;
        value = value * x + c[k];
    }
    (value, derivative)
}

/// Aberth iteration for a monic polynomial with real coefficients
/// c₀ + c₁x + … + x^d. Cubic convergence at simple roots; the iteration
/// count is capped, so the call always returns.
fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    // Cauchy bound: every root satisfies |x| ≤ 1 + max |cᵢ|.
    let bound = 1.0 + coeffs[..d].iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    // Staggered radii and an irrational-looking phase offset keep the
    // start configuration free of the symmetries the input may have.
    let mut xs: Vec<Complex64> = (0..d)
        .map(|k| {
            let radius = bound * (0.35 + 0.6 * (k as f64 + 1.0) / d as f64);
            let angle = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.71830474;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    for _ in 0..300 {
        let mut settled = true;
        for i in 0..d {
            let (value, derivative) = horner_pair(coeffs, xs[i]);
            if value.norm() == 0.0 {
                continue;
            }
            let newton = if derivative.norm() > 0.0 {
                value / derivative
            } else {
                value
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    let gap = xs[i] - xs[j];
                    if gap.norm() > 0.0 {
                        repulsion += gap.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() > 1e-300 { newton / denom } else { newton };
            xs[i] -= step;
            if step.norm() > 1e-14 * (1.0 + xs[i].norm()) {
                settled = false;
            }
        }
        if settled {
            break;
        }
    }
    xs
}
