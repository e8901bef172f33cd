//! Exact rational scalars and the few integer predicates the rest of the
//! crate needs (perfect powers, square-free parts).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Coefficient field for every exact computation in this crate.
///
/// `BigRational` keeps numerator/denominator reduced with a positive
/// denominator, which is exactly the canonical form we rely on for
/// equality tests and hashing of serialized output.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Scalar {
    assert!(den != 0, "rational with zero denominator");
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(x: &Scalar) -> f64 {
    // Falls back to a quotient of approximations for very large entries.
    x.to_f64()
        .unwrap_or_else(|| x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN))
}

/// Integer n-th root if `x` is a perfect n-th power, for x >= 0.
fn int_nth_root_exact(x: &BigInt, n: u32) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.nth_root(n);
    if num::pow::pow(r.clone(), n as usize) == *x {
        Some(r)
    } else {
        None
    }
}

/// Exact n-th root of a nonnegative rational, when it exists in the rationals.
pub fn nth_root_exact(x: &Scalar, n: u32) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let num = int_nth_root_exact(x.numer(), n)?;
    let den = int_nth_root_exact(x.denom(), n)?;
    Some(Scalar::new(num, den))
}

pub fn sqrt_exact(x: &Scalar) -> Option<Scalar> {
    nth_root_exact(x, 2)
}

/// Writes sqrt(x) = s * sqrt(d) with d a square-free positive integer.
/// d == 1 exactly when the square root is rational; x = 0 gives (0, 1).
///
/// Used to normalize quadratic surds. Radicands stay desk-scale, so trial
/// division is plenty.
pub fn sqrt_normal_form(x: &Scalar) -> Option<(Scalar, BigInt)> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some((Scalar::zero(), BigInt::one()));
    }
    // sqrt(p/q) = sqrt(p*q)/q
    let mut d = x.numer() * x.denom();
    let mut square = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000u64);
    while &p * &p <= d && p <= limit {
        let p2 = &p * &p;
        while (&d % &p2).is_zero() {
            d /= &p2;
            square *= &p;
        }
        p += 1u32;
    }
    // Whatever is left may itself be a perfect square (large prime factors).
    if let Some(r) = int_nth_root_exact(&d, 2) {
        square *= r;
        d = BigInt::one();
    }
    Some((Scalar::new(square, x.denom().clone()), d))
}
