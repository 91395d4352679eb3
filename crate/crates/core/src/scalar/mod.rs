//! Exact scalar arithmetic: arbitrary-precision rationals, the real quartic
//! field Q(sqrt2, sqrt5) and its complexification.
//!
//! Every exact computation in this crate runs over [`ExactScalar`] (or
//! [`ComplexScalar`] where complex coordinates are unavoidable). Floating
//! point appears only behind [`ExactScalar::to_f64`] and is never fed back
//! into exact data.

mod complex;
mod exact;

pub use complex::ComplexScalar;
pub use exact::ExactScalar;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Shorthand for small rational constants.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Correctly rounded conversion of an arbitrary rational to `f64`
/// (round to nearest, ties to even).
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let negative = r.is_negative();
    let n = r.numer().abs();
    let d = r.denom().clone();

    // Scale so the integer quotient has at least 55 significant bits, round
    // the binary expansion at 53 bits with a sticky bit from the remainder.
    let shift: i64 = 55 + d.bits() as i64 - n.bits() as i64;
    let (scaled_n, scaled_d) = if shift >= 0 {
        (n << shift as u64, d)
    } else {
        (n, d << (-shift) as u64)
    };
    let (mut q, rem) = scaled_n.div_rem(&scaled_d);
    let mut exp = -shift;
    let qbits = q.bits() as i64; // 55 or 56
    let extra = (qbits - 53).max(0) as u64;
    if extra > 0 {
        let low: BigInt = &q & ((BigInt::from(1) << extra) - 1);
        let half = BigInt::from(1) << (extra - 1);
        q >>= extra;
        exp += extra as i64;
        let round_up = match low.cmp(&half) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => !rem.is_zero() || q.is_odd(),
        };
        if round_up {
            q += 1;
        }
    }
    let mantissa = q.to_f64().expect("<= 54 bits");
    let value = ldexp(mantissa, exp);
    if negative {
        -value
    } else {
        value
    }
}

fn ldexp(x: f64, exp: i64) -> f64 {
    // Exact power-of-two scaling; split to dodge intermediate over/underflow.
    let mut v = x;
    let mut e = exp;
    while e > 512 {
        v *= 2f64.powi(512);
        e -= 512;
    }
    while e < -512 {
        v *= 2f64.powi(-512);
        e += 512;
    }
    v * 2f64.powi(e as i32)
}

/// Floor of sqrt(n) for non-negative `n`.
pub(crate) fn isqrt(n: &BigInt) -> BigInt {
    assert!(n.sign() != BigSign::Minus, "isqrt of negative");
    n.sqrt()
}

/// Exact square root of a rational, if it is a perfect square.
pub(crate) fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let sn = isqrt(r.numer());
    let sd = isqrt(r.denom());
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// Field operations needed by the generic polynomial and linear-algebra code.
///
/// Implemented by [`ExactScalar`] and [`ComplexScalar`].
pub trait Scalar:
    Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug + std::fmt::Display + Send + Sync
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;
    /// Embedding of the base real field.
    fn from_exact(x: &ExactScalar) -> Self;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_to_f64_matches_reference_values() {
        assert_eq!(rational_to_f64(&rat(1, 2)), 0.5);
        assert_eq!(rational_to_f64(&rat(-22, 243)), -22.0 / 243.0);
        assert_eq!(rational_to_f64(&rat(1, 3)), 1.0 / 3.0);
        assert_eq!(rational_to_f64(&rat(0, 1)), 0.0);
        // A value needing a round-half-to-even decision: 2^53 + 1.
        let big = Rational::from(BigInt::from((1u64 << 53) + 1));
        assert_eq!(rational_to_f64(&big), 9007199254740992.0);
    }

    #[test]
    fn rational_sqrt_detects_squares() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
        assert_eq!(rational_sqrt(&rat(0, 1)), Some(rat(0, 1)));
    }
}
