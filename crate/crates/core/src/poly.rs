//! Laurent polynomials over ℚ.
//!
//! The ring ℚ[z, z⁻¹] is a Euclidean domain: its units are the nonzero
//! monomials λz^k and its Euclidean function is the *width*
//! δ(p) = L − ℓ (highest minus lowest exponent). [`LaurentPolynomial::div_rem`]
//! implements that division; it is the engine behind GCDs, staircase
//! canonical forms, and every exact divisibility test in this crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::rational::{rat_to_f64, Rational};

/// A Laurent polynomial Σ cᵢ zⁱ with exact rational coefficients.
///
/// Invariant: `coeffs` is empty exactly for the zero polynomial (then
/// `low == 0`); otherwise the first and last coefficients are nonzero, so
/// equal values have equal representations and `==` is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    low: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        LaurentPolynomial { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coefficients(0, vec![c])
    }

    /// The monomial c·z^k.
    pub fn monomial(c: Rational, k: i64) -> Self {
        Self::from_coefficients(k, vec![c])
    }

    /// The variable z.
    pub fn z() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// Builds Σ coeffs[i]·z^(low+i), trimming zero coefficients at both ends.
    pub fn from_coefficients(low: i64, coeffs: Vec<Rational>) -> Self {
        let mut p = LaurentPolynomial { low, coeffs };
        p.trim();
        p
    }

    /// Convenience constructor from small integers, for tests and fixtures.
    pub fn from_ints(low: i64, coeffs: &[i64]) -> Self {
        Self::from_coefficients(
            low,
            coeffs.iter().map(|&n| Rational::from_integer(n.into())).collect(),
        )
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let leading_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.low += leading_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent ℓ (0 for the zero polynomial).
    pub fn low_exponent(&self) -> i64 {
        self.low
    }

    /// Highest exponent L (0 for the zero polynomial).
    pub fn high_exponent(&self) -> i64 {
        if self.coeffs.is_empty() { 0 } else { self.low + self.coeffs.len() as i64 - 1 }
    }

    /// Euclidean degree: the width L − ℓ (0 for the zero polynomial).
    pub fn width(&self) -> i64 {
        if self.coeffs.is_empty() { 0 } else { self.coeffs.len() as i64 - 1 }
    }

    /// Coefficient of z^k (zero outside the stored range).
    pub fn coeff(&self, k: i64) -> Rational {
        if k < self.low {
            return Rational::zero();
        }
        let idx = (k - self.low) as usize;
        self.coeffs.get(idx).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficients in ascending exponent order, paired with their exponents.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        let low = self.low;
        self.coeffs.iter().enumerate().map(move |(i, c)| (low + i as i64, c))
    }

    /// True iff every exponent is ≥ 0 (an ordinary polynomial).
    pub fn is_ordinary(&self) -> bool {
        self.is_zero() || self.low >= 0
    }

    /// For a nonzero monomial c·z^k returns (c, k).
    pub fn as_monomial(&self) -> Option<(&Rational, i64)> {
        if self.coeffs.len() == 1 { Some((&self.coeffs[0], self.low)) } else { None }
    }

    /// Multiplies by z^k.
    pub fn shifted(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Multiplies by the scalar c.
    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// The star operation p*(z) := p(1/z): every exponent negated.
    pub fn star(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPolynomial { low: -self.high_exponent(), coeffs }
    }

    /// Evaluates at a complex point (z ≠ 0 when negative exponents occur).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + Complex64::new(rat_to_f64(c), 0.0);
        }
        acc * z.powi(self.low as i32)
    }

    /// Decomposes p = λ·z^k·p̂ with p̂ the *unit-normal associate*: an
    /// ordinary polynomial, monic, with nonzero constant term. Returns
    /// (λ, k, p̂); the zero polynomial yields (1, 0, 0).
    pub fn unit_normal_parts(&self) -> (Rational, i64, LaurentPolynomial) {
        if self.is_zero() {
            return (Rational::one(), 0, Self::zero());
        }
        let lambda = self.coeffs.last().expect("nonzero").clone();
        let inv = Rational::one() / &lambda;
        let normal = LaurentPolynomial {
            low: 0,
            coeffs: self.coeffs.iter().map(|c| c * &inv).collect(),
        };
        (lambda, self.low, normal)
    }

    /// The unit-normal associate alone (see [`Self::unit_normal_parts`]).
    pub fn unit_normal(&self) -> LaurentPolynomial {
        self.unit_normal_parts().2
    }

    /// Euclidean division in ℚ[z, z⁻¹]: returns (q, r) with
    /// `self = q·d + r` and either r = 0 or width(r) < width(d).
    ///
    /// Panics if `d` is zero.
    pub fn div_rem(&self, d: &LaurentPolynomial) -> (LaurentPolynomial, LaurentPolynomial) {
        assert!(!d.is_zero(), "Laurent polynomial division by zero");
        if self.is_zero() || self.width() < d.width() {
            return (Self::zero(), self.clone());
        }
        // Both coefficient vectors are trimmed, so long division on them is
        // division by width: everything at or above the divisor's top slot
        // is eliminated, leaving a remainder of strictly smaller width.
        let mut rem = self.coeffs.clone();
        let dv = &d.coeffs;
        let dw = dv.len() - 1;
        let lead_inv = Rational::one() / dv.last().expect("nonzero divisor");
        let mut quot = vec![Rational::zero(); rem.len() - dw];
        for i in (dw..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lead_inv;
            let off = i - dw;
            for (j, dc) in dv.iter().enumerate() {
                let delta = &q * dc;
                rem[off + j] -= delta;
            }
            quot[off] = q;
        }
        let q = Self::from_coefficients(self.low - d.low, quot);
        let r = Self::from_coefficients(self.low, rem);
        debug_assert!(r.is_zero() || r.width() < d.width());
        (q, r)
    }

    /// Exact quotient `self / d`, or `None` when the division leaves a
    /// remainder. `d` must be nonzero.
    pub fn div_exact(&self, d: &LaurentPolynomial) -> Option<LaurentPolynomial> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Greatest common divisor, returned as the unit-normal associate
    /// (monic ordinary polynomial with nonzero constant term; gcd(0,0) = 0).
    pub fn gcd(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        // Renormalizing every remainder to its unit-normal associate keeps
        // the rational coefficients from compounding across Euclidean
        // steps, which would otherwise dominate the running time at even
        // moderate degrees.
        let mut a = self.unit_normal();
        let mut b = other.unit_normal();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.unit_normal();
        }
        a
    }

    /// Division in ℚ[z] viewed with the *ordinary* degree (not the width):
    /// requires `self` and `d` ordinary, returns ordinary (q, r) with
    /// deg r < deg d. Used to compute canonical residues where trailing
    /// zero coefficients matter.
    pub fn ordinary_div_rem(&self, d: &LaurentPolynomial) -> (LaurentPolynomial, LaurentPolynomial) {
        assert!(!d.is_zero(), "Laurent polynomial division by zero");
        assert!(self.is_ordinary() && d.is_ordinary(), "operands must be ordinary");
        if self.is_zero() || self.high_exponent() < d.high_exponent() {
            return (Self::zero(), self.clone());
        }
        // Pad both out to exponent 0 so the constant term participates.
        let deg_a = self.high_exponent() as usize;
        let deg_d = d.high_exponent() as usize;
        let mut rem = vec![Rational::zero(); deg_a + 1];
        for (k, c) in self.terms() {
            rem[k as usize] = c.clone();
        }
        let mut dc = vec![Rational::zero(); deg_d + 1];
        for (k, c) in d.terms() {
            dc[k as usize] = c.clone();
        }
        let lead_inv = Rational::one() / &dc[deg_d];
        let mut quot = vec![Rational::zero(); deg_a - deg_d + 1];
        for i in (deg_d..=deg_a).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lead_inv;
            let off = i - deg_d;
            for (j, c) in dc.iter().enumerate() {
                let delta = &q * c;
                rem[off + j] -= delta;
            }
            quot[off] = q;
        }
        (Self::from_coefficients(0, quot), Self::from_coefficients(0, rem))
    }

    /// Canonical residue of `self` modulo an ordinary monic `m` with
    /// m(0) ≠ 0: returns (q, r) with `self = q·m + r` and r an ordinary
    /// polynomial of degree < deg m. This is the unique such representative
    /// of `self` in ℚ[z, z⁻¹]/(m); negative powers of z are eliminated via
    /// the inverse of z modulo m, which exists because m(0) ≠ 0.
    pub fn canonical_residue(&self, m: &LaurentPolynomial) -> (LaurentPolynomial, LaurentPolynomial) {
        assert!(!m.is_zero() && m.is_ordinary() && !m.coeff(0).is_zero());
        if m.high_exponent() == 0 {
            // m is a nonzero constant: everything reduces to 0.
            return (self.scaled(&(Rational::one() / m.coeff(0))), Self::zero());
        }
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let neg_shift = (-self.low).max(0);
        let ordinary = self.shifted(neg_shift);
        let (_, mut r) = ordinary.ordinary_div_rem(m);
        if neg_shift > 0 {
            // m = c₀ + z·t(z) gives z·(−t/c₀) ≡ 1 (mod m).
            let c0 = m.coeff(0);
            let t = m
                .sub_poly(&LaurentPolynomial::constant(c0.clone()))
                .div_exact(&LaurentPolynomial::z())
                .expect("m − m(0) is divisible by z");
            let z_inv = t.scaled(&(-Rational::one() / c0));
            let mut factor = z_inv.pow_mod(neg_shift as u64, m);
            factor = factor.mul_poly(&r);
            let (_, reduced) = factor.ordinary_div_rem(m);
            r = reduced;
        }
        let q = self
            .sub_poly(&r)
            .div_exact(m)
            .expect("difference to canonical residue is divisible by the modulus");
        (q, r)
    }

    /// `self^exp` reduced modulo the ordinary polynomial `m` at every step.
    fn pow_mod(&self, mut exp: u64, m: &LaurentPolynomial) -> LaurentPolynomial {
        let mut base = {
            let (_, r) = self.ordinary_div_rem(m);
            r
        };
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                let (_, r) = acc.mul_poly(&base).ordinary_div_rem(m);
                acc = r;
            }
            exp >>= 1;
            if exp > 0 {
                let (_, r) = base.mul_poly(&base).ordinary_div_rem(m);
                base = r;
            }
        }
        acc
    }

    fn add_impl(&self, other: &LaurentPolynomial, negate: bool) -> LaurentPolynomial {
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high_exponent().max(other.high_exponent());
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (k, c) in self.terms() {
            coeffs[(k - low) as usize] += c;
        }
        for (k, c) in other.terms() {
            if negate {
                coeffs[(k - low) as usize] -= c;
            } else {
                coeffs[(k - low) as usize] += c;
            }
        }
        Self::from_coefficients(low, coeffs)
    }

    fn mul_poly(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coefficients(self.low + other.low, coeffs)
    }

    fn sub_poly(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        self.add_impl(other, true)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        self.add_impl(rhs, false)
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        self.add_impl(rhs, true)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        self.mul_poly(rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        &self + &rhs
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        &self - &rhs
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        &self * &rhs
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

/// Prints in the text grammar the CLI parses: terms in descending exponent
/// order, rational coefficients as `n` or `n/d`, powers as `z^k`
/// (`z^-1` for negative k), e.g. `z^2 - 3/2*z + 7/10`.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{k}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(low: i64, coeffs: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_ints(low, coeffs)
    }

    #[test]
    fn products_expand() {
        // (z + 1)(z − 1) = z² − 1
        let a = p(0, &[1, 1]);
        let b = p(0, &[-1, 1]);
        assert_eq!(&a * &b, p(0, &[-1, 0, 1]));
        // (z⁻¹ + z)·z = 1 + z²
        let c = LaurentPolynomial::from_ints(-1, &[1, 0, 1]);
        assert_eq!(&c * &LaurentPolynomial::z(), p(0, &[1, 0, 1]));
    }

    #[test]
    fn star_negates_exponents_and_is_involutive() {
        let q = LaurentPolynomial::from_coefficients(-1, vec![rat(1, 2), rat(0, 1), rat(-3, 1)]);
        let s = q.star();
        assert_eq!(s.coeff(1), rat(1, 2));
        assert_eq!(s.coeff(-1), rat(-3, 1));
        assert_eq!(s.star(), q);
    }

    #[test]
    fn widths_and_exponents() {
        let q = p(-2, &[1, 0, 5]);
        assert_eq!(q.low_exponent(), -2);
        assert_eq!(q.high_exponent(), 0);
        assert_eq!(q.width(), 2);
        assert_eq!(LaurentPolynomial::zero().width(), 0);
    }

    #[test]
    fn div_rem_satisfies_euclidean_contract() {
        let a = p(-2, &[3, 0, 1, 4, 2]);
        let d = p(-1, &[1, 0, 2]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.is_zero() || r.width() < d.width());
        // Division by a monomial is exact.
        let m = LaurentPolynomial::monomial(rat(2, 1), -3);
        let (q, r) = a.div_rem(&m);
        assert!(r.is_zero());
        assert_eq!(&q * &m, a);
    }

    #[test]
    fn gcd_is_unit_normal() {
        let a = p(0, &[-1, 1]); // z − 1
        let b = p(1, &[-1, 1]); // z² − z = z(z − 1)
        assert_eq!(a.gcd(&b), p(0, &[-1, 1]));
        // gcd is insensitive to unit factors.
        let a2 = a.shifted(-4).scaled(&rat(7, 3));
        assert_eq!(a2.gcd(&b), p(0, &[-1, 1]));
        assert_eq!(LaurentPolynomial::zero().gcd(&LaurentPolynomial::zero()), LaurentPolynomial::zero());
    }

    #[test]
    fn unit_normal_parts_factor_the_input() {
        let q = p(-1, &[4, 2]).scaled(&rat(1, 4)); // (1 + z/2)·z⁻¹
        let (lambda, k, normal) = q.unit_normal_parts();
        assert_eq!(normal.coeff(normal.high_exponent()), rat(1, 1));
        assert!(normal.is_ordinary());
        assert!(!normal.coeff(0).is_zero());
        assert_eq!(LaurentPolynomial::monomial(lambda, k) * normal, q);
    }

    #[test]
    fn canonical_residue_is_ordinary_and_small() {
        let m = p(0, &[2, 0, 1]); // z² + 2
        for e in [p(-3, &[1, 2, 0, 0, 5, 1]), p(5, &[3]), p(0, &[1]), p(-1, &[7])] {
            let (q, r) = e.canonical_residue(&m);
            assert!(r.is_ordinary());
            assert!(r.is_zero() || r.high_exponent() < m.high_exponent());
            assert_eq!(&(&q * &m) + &r, e);
        }
    }

    #[test]
    fn ordinary_division_reduces_true_degree() {
        let a = p(5, &[1]); // z⁵
        let d = p(0, &[1, 1]); // z + 1
        let (q, r) = a.ordinary_div_rem(&d);
        assert_eq!(&(&q * &d) + &r, a);
        assert_eq!(r, p(0, &[-1]));
    }

    #[test]
    fn eval_handles_negative_exponents() {
        let q = LaurentPolynomial::from_coefficients(-1, vec![rat(1, 2), rat(1, 1)]); // z⁻¹/2 + 1
        let v = q.eval(Complex64::new(2.0, 0.0));
        assert!((v - Complex64::new(1.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn display_round_trips_visually() {
        let q = LaurentPolynomial::from_coefficients(
            -1,
            vec![rat(7, 10), rat(0, 1), rat(-3, 2), rat(1, 1)],
        );
        assert_eq!(q.to_string(), "z^2 - 3/2*z + 7/10*z^-1");
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
        assert_eq!(p(0, &[-1, -1]).to_string(), "-z - 1");
    }
}
