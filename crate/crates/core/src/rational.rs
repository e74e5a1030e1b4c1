//! Exact rational coefficients.
//!
//! All structural decisions in this crate (normal rank, unimodularity,
//! Hermite forms, behavior equivalence) are made over ℚ, never in floating
//! point. `Rational` is `num_rational::BigRational`, which keeps values in
//! lowest terms with a positive denominator, exactly the invariants the
//! coefficient field needs. Floating point only enters in the `spectral`
//! and `sim` modules, and every `f64` that crosses back into the exact world
//! does so losslessly (an `f64` is a dyadic rational).

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact rational image of an `f64` (dyadic). `None` for non-finite input.
pub fn rat_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Rational to nearest `f64`.
pub fn rat_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses a decimal literal such as `0.7` into the exact rational `7/10`.
///
/// Only plain decimals (`digits '.' digits`) are accepted; scientific
/// notation is not part of the input grammar.
pub fn rat_from_decimal(int_part: &str, frac_part: &str) -> Option<Rational> {
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let int_digits: BigInt = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part.parse().ok()?
    };
    let frac_digits: BigInt = if frac_part.is_empty() {
        BigInt::zero()
    } else {
        frac_part.parse().ok()?
    };
    let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(Rational::new(int_digits * &scale + frac_digits, scale))
}

/// Parses an unsigned integer literal.
pub fn rat_from_int_str(digits: &str) -> Option<Rational> {
    let n: BigInt = digits.parse().ok()?;
    Some(Rational::from_integer(n))
}

/// Parses `p/q` from two unsigned integer literals. `None` if `q == 0`.
pub fn rat_from_fraction_str(num: &str, den: &str) -> Option<Rational> {
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Exact absolute-value comparison `|x| <= tol` with `tol` given as `f64`.
///
/// The tolerance is converted to its exact dyadic value first, so the
/// comparison itself involves no rounding.
pub fn abs_le_tol(x: &Rational, tol: f64) -> bool {
    match rat_from_f64(tol) {
        Some(t) => x.abs() <= t,
        None => false,
    }
}
