use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::{ExactScalar, Scalar};

/// Complexification of [`ExactScalar`]: `re + i*im` with both parts in
/// Q(sqrt2, sqrt5).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ComplexScalar {
    pub re: ExactScalar,
    pub im: ExactScalar,
}

impl ComplexScalar {
    pub fn new(re: ExactScalar, im: ExactScalar) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(ExactScalar::one(), ExactScalar::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(ExactScalar::zero(), ExactScalar::one())
    }

    pub fn from_real(re: ExactScalar) -> Self {
        Self::new(re, ExactScalar::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// `re^2 + im^2`; zero iff the value is zero.
    pub fn norm_sqr(&self) -> ExactScalar {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm_sqr().inverse().ok()?;
        Some(Self::new(&self.re * &n, &(-&self.im) * &n))
    }
}

impl Add for &ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, rhs: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, rhs: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, rhs: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl Neg for &ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        ComplexScalar::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "({})*i", self.im);
        }
        write!(f, "({}) + ({})*i", self.re, self.im)
    }
}

impl fmt::Debug for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for ComplexScalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Scalar for ComplexScalar {
    fn zero() -> Self {
        ComplexScalar::zero()
    }
    fn one() -> Self {
        ComplexScalar::one()
    }
    fn is_zero(&self) -> bool {
        ComplexScalar::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        ComplexScalar::inverse(self)
    }
    fn from_exact(x: &ExactScalar) -> Self {
        Self::from_real(x.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = ComplexScalar::i();
        assert_eq!(&i * &i, -&ComplexScalar::one());
    }

    #[test]
    fn conjugation_involution_and_norm() {
        let z = ComplexScalar::new(ExactScalar::tau(), ExactScalar::sqrt2());
        assert_eq!(z.conj().conj(), z);
        let w = ComplexScalar::new(ExactScalar::from_int(2), -&ExactScalar::sqrt5());
        let lhs = (&z * &w).norm_sqr();
        let rhs = &z.norm_sqr() * &w.norm_sqr();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_of_nonzero() {
        let z = ComplexScalar::new(ExactScalar::one(), ExactScalar::sqrt2());
        let inv = z.inverse().unwrap();
        assert_eq!(&z * &inv, ComplexScalar::one());
        assert_eq!(ComplexScalar::zero().inverse(), None);
    }
}
