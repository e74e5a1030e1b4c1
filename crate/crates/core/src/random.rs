//! Seeded generators of random exact objects for randomized testing:
//! rationals, Laurent polynomials and matrices, unimodular products of
//! elementary factors, full-normal-rank kernels, stable kernels, and
//! minimum-phase scalar factors. Test-grade uniformity only.

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

use crate::behavior::KernelRepresentation;
use crate::matrix::LaurentMatrix;
use crate::poly::LaurentPolynomial;
use crate::rational::{rat, Rational};

pub struct Sampler {
    rng: ChaCha12Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha12Rng::seed_from_u64(seed) }
    }

    fn below(&mut self, n: u64) -> u64 {
        self.rng.next_u64() % n.max(1)
    }

    fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    fn coin(&mut self) -> bool {
        self.rng.next_u64() & 1 == 1
    }

    /// A rational with numerator in [−max_num, max_num] and denominator
    /// in [1, max_den].
    pub fn rational(&mut self, max_num: i64, max_den: i64) -> Rational {
        rat(self.int_in(-max_num, max_num), self.int_in(1, max_den))
    }

    /// A rational strictly inside (−1, 1).
    pub fn open_unit_rational(&mut self) -> Rational {
        let den = self.int_in(2, 24);
        rat(self.int_in(-(den - 1), den - 1), den)
    }

    fn nonzero_rational(&mut self, max_num: i64, max_den: i64) -> Rational {
        loop {
            let r = self.rational(max_num, max_den);
            if !num_traits::Zero::is_zero(&r) {
                return r;
            }
        }
    }

    /// A Laurent polynomial with exponents in [low, low + max_width] and
    /// small rational coefficients; may be zero.
    pub fn polynomial(&mut self, low: i64, max_width: usize) -> LaurentPolynomial {
        let width = self.below(max_width as u64 + 1) as usize;
        let coeffs: Vec<Rational> = (0..=width).map(|_| self.rational(4, 4)).collect();
        LaurentPolynomial::from_coefficients(low, coeffs)
    }

    /// A nonzero Laurent polynomial spanning exactly [low, low + width].
    pub fn exact_width_polynomial(&mut self, low: i64, width: usize) -> LaurentPolynomial {
        let mut coeffs: Vec<Rational> = (0..=width).map(|_| self.rational(4, 4)).collect();
        let last = coeffs.len() - 1;
        coeffs[0] = self.nonzero_rational(4, 4);
        coeffs[last] = self.nonzero_rational(4, 4);
        LaurentPolynomial::from_coefficients(low, coeffs)
    }

    /// A matrix of random polynomials with exponents within
    /// [−max_width, max_width].
    pub fn matrix(&mut self, rows: usize, cols: usize, max_width: usize) -> LaurentMatrix {
        let entries = (0..rows * cols)
            .map(|_| {
                let low = self.int_in(-(max_width as i64), 0);
                self.polynomial(low, max_width)
            })
            .collect();
        LaurentMatrix::new(rows, cols, entries).expect("dimensions are positive")
    }

    /// A unimodular matrix built as a product of `steps` elementary
    /// factors: row swaps, row scalings by λz^k, and row shears by a small
    /// polynomial multiple of another row.
    pub fn unimodular(&mut self, n: usize, steps: usize) -> LaurentMatrix {
        let mut rows = LaurentMatrix::identity(n).to_rows();
        for _ in 0..steps {
            match self.below(3) {
                0 if n > 1 => {
                    let i = self.below(n as u64) as usize;
                    let j = self.below(n as u64) as usize;
                    rows.swap(i, j);
                }
                1 => {
                    let i = self.below(n as u64) as usize;
                    let lambda = self.nonzero_rational(3, 3);
                    let k = self.int_in(-1, 1);
                    for e in &mut rows[i] {
                        *e = e.scaled(&lambda).shifted(k);
                    }
                }
                _ if n > 1 => {
                    let i = self.below(n as u64) as usize;
                    let mut j = self.below(n as u64) as usize;
                    if j == i {
                        j = (j + 1) % n;
                    }
                    let low = self.int_in(-1, 0);
                    let q = self.polynomial(low, 2);
                    let adds: Vec<_> = rows[j].iter().map(|p| p * &q).collect();
                    for (e, add) in rows[i].iter_mut().zip(&adds) {
                        *e = &*e + add;
                    }
                }
                _ => {}
            }
        }
        LaurentMatrix::from_rows(rows).expect("square")
    }

    /// A full-row-normal-rank kernel, found by rejection.
    pub fn full_rank_kernel(&mut self, rows: usize, cols: usize) -> KernelRepresentation {
        loop {
            let m = self.matrix(rows, cols, 2);
            if let Ok(k) = KernelRepresentation::new(m) {
                return k;
            }
        }
    }

    /// A random root of modulus in [1/20, 9/10], bounded away from both
    /// the origin and the unit circle.
    fn stable_root(&mut self) -> Rational {
        loop {
            let den = self.int_in(8, 20);
            let num = self.int_in(-(9 * den / 10), 9 * den / 10);
            let r = rat(num, den);
            let mag = rat(num.abs(), den);
            if mag >= rat(1, 20) {
                return r;
            }
        }
    }

    /// A minimum-phase polynomial of the requested degree: positive gain
    /// times a product of linear factors (z − r) and quadratic factors
    /// (z² − 2az + a² + b²) with all roots of modulus in [1/20, 9/10].
    /// Roots are pairwise distinct, which keeps the numerical root finding
    /// and (r, 1/conj(r)) pairing well conditioned in roundtrip tests.
    pub fn minimum_phase(&mut self, degree: usize) -> LaurentPolynomial {
        let mut w = LaurentPolynomial::constant(rat(self.int_in(1, 4), self.int_in(1, 3)));
        let mut used: Vec<(Rational, Rational)> = Vec::new();
        let mut budget = degree;
        while budget > 0 {
            if budget >= 2 && self.coin() {
                // Conjugate pair a ± bi with 1/16 ≤ a² + b² ≤ 18/25.
                let a = rat(self.int_in(-3, 3), 5);
                let b = rat(self.int_in(1, 3), 5);
                let modulus2 = &a * &a + &b * &b;
                if modulus2 < rat(1, 16) || used.contains(&(a.clone(), b.clone())) {
                    continue;
                }
                let quad = LaurentPolynomial::from_coefficients(
                    0,
                    vec![modulus2, rat(-2, 1) * &a, rat(1, 1)],
                );
                used.push((a, b));
                w = &w * &quad;
                budget -= 2;
            } else {
                let r = self.stable_root();
                if used.contains(&(r.clone(), rat(0, 1))) {
                    continue;
                }
                let linear =
                    LaurentPolynomial::from_coefficients(0, vec![-r.clone(), rat(1, 1)]);
                used.push((r, rat(0, 1)));
                w = &w * &linear;
                budget -= 1;
            }
        }
        w
    }

    /// A stable square kernel U₁·D·U₂ with D diagonal minimum-phase; the
    /// unimodular factors preserve the determinant's root set up to units.
    pub fn stable_kernel(&mut self, n: usize, max_degree: usize) -> KernelRepresentation {
        let d = LaurentMatrix::from_fn(n, n, |i, j| {
            if i == j {
                let deg = 1 + self.below(max_degree.max(1) as u64) as usize;
                self.minimum_phase(deg)
            } else {
                LaurentPolynomial::zero()
            }
        })
        .expect("n is positive");
        let u1 = self.unimodular(n, 6);
        let u2 = self.unimodular(n, 6);
        KernelRepresentation::new(&(&u1 * &d) * &u2).expect("unit-degree determinant is nonzero")
    }

    /// A stable kernel whose top-power coefficient matrix is invertible
    /// as it stands (all rows of equal degree, invertible leading matrix),
    /// so simulation needs no preliminary row transformation: R = Λ·T with
    /// Λ invertible constant and T upper triangular, diagonal monic
    /// minimum-phase of one common degree.
    pub fn stable_recursive_kernel(&mut self, n: usize, degree: usize) -> KernelRepresentation {
        let degree = degree.max(1);
        // Λ = unit-lower · diag(nonzero) · unit-upper is always invertible.
        let lower = LaurentMatrix::from_fn(n, n, |i, j| {
            if i == j {
                LaurentPolynomial::one()
            } else if i > j {
                LaurentPolynomial::constant(self.rational(2, 3))
            } else {
                LaurentPolynomial::zero()
            }
        })
        .expect("n is positive");
        let upper = LaurentMatrix::from_fn(n, n, |i, j| {
            if i == j {
                LaurentPolynomial::constant(self.nonzero_rational(3, 3))
            } else if i < j {
                LaurentPolynomial::constant(self.rational(2, 3))
            } else {
                LaurentPolynomial::zero()
            }
        })
        .expect("n is positive");
        let lambda = &lower * &upper;
        let t = LaurentMatrix::from_fn(n, n, |i, j| {
            if i == j {
                let w = self.minimum_phase(degree);
                // make it monic so the z^degree coefficient of T is I
                let lead = w.coeff(w.high_exponent());
                w.scaled(&(rat(1, 1) / lead))
            } else if i < j {
                self.polynomial(0, degree - 1)
            } else {
                LaurentPolynomial::zero()
            }
        })
        .expect("n is positive");
        KernelRepresentation::new(&lambda * &t).expect("det Λ · Π tᵢᵢ is nonzero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::nonzero_roots;
    use num_traits::Zero;

    #[test]
    fn unimodular_products_are_unimodular() {
        let mut s = Sampler::new(1);
        for n in 1..=3 {
            for _ in 0..20 {
                assert!(s.unimodular(n, 8).is_unimodular());
            }
        }
    }

    #[test]
    fn minimum_phase_roots_stay_inside_the_disc() {
        let mut s = Sampler::new(2);
        for deg in 1..=6 {
            let w = s.minimum_phase(deg);
            assert_eq!(w.high_exponent() - w.low_exponent(), deg as i64);
            assert_eq!(w.low_exponent(), 0);
            assert!(!w.coeff(0).is_zero(), "no root at the origin");
            for r in nonzero_roots(&w) {
                assert!(r.norm() < 0.95, "root {r}");
                assert!(r.norm() > 0.01);
            }
        }
    }

    #[test]
    fn stable_kernels_pass_the_stability_check() {
        let mut s = Sampler::new(3);
        for n in 1..=2 {
            for _ in 0..10 {
                let k = s.stable_kernel(n, 2);
                assert!(crate::sim::stability_check(&k).unwrap().stable);
                let k = s.stable_recursive_kernel(n, 2);
                assert!(crate::sim::stability_check(&k).unwrap().stable);
                // the aligned top coefficient is invertible as constructed
                let m = k.matrix();
                let (_, high) = m.exponent_range().unwrap();
                let top = m.coefficient_matrix(high);
                assert!(top.determinant().abs() > 1e-12);
            }
        }
    }

    #[test]
    fn full_rank_kernels_have_full_rank() {
        let mut s = Sampler::new(4);
        for _ in 0..10 {
            let k = s.full_rank_kernel(2, 3);
            assert_eq!(k.matrix().normal_rank(), 2);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a: Vec<Rational> = {
            let mut s = Sampler::new(9);
            (0..10).map(|_| s.rational(5, 5)).collect()
        };
        let b: Vec<Rational> = {
            let mut s = Sampler::new(9);
            (0..10).map(|_| s.rational(5, 5)).collect()
        };
        assert_eq!(a, b);
    }
}
