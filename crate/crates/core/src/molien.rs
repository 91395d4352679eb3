//! Poincare series of the invariant rings via Molien's theorem: the series
//! is the class-weighted sum of reciprocal characteristic polynomials,
//!
//! ```text
//! p(t) = 1/|G| * sum over GL4 classes of n_g / det(g - id * t)
//! ```
//!
//! computed exactly as a truncated power series.

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::groups::PolyGroup;
use crate::scalar::{ExactScalar, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MolienError {
    #[error("Molien coefficient at degree {degree} is not a non-negative integer: {value}")]
    NonIntegral { degree: usize, value: String },
}

/// Truncated power series with rational coefficients, index = degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coefficient(&self, degree: usize) -> Rational {
        self.coeffs.get(degree).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficients as plain integers (valid after a successful Molien run).
    pub fn integer_coefficients(&self) -> Vec<u64> {
        self.coeffs
            .iter()
            .map(|c| c.numer().to_u64().expect("small non-negative integer"))
            .collect()
    }
}

/// Poincare series of the invariant ring of `group`, truncated at `trunc`.
///
/// Characteristic polynomials carry sqrt2 and sqrt5 mid-computation; that
/// the class-weighted sum collapses to non-negative integers is asserted,
/// not assumed.
pub fn molien(group: &PolyGroup, trunc: usize) -> Result<PowerSeries, MolienError> {
    let mut acc = vec![ExactScalar::zero(); trunc + 1];
    for class in group.gl4_classes() {
        let weight = ExactScalar::from_int(class.size as i64);
        let inv = class.charpoly.series_inverse(trunc);
        for (k, term) in inv.iter().enumerate() {
            acc[k] = &acc[k] + &(&weight * term);
        }
    }
    let order = ExactScalar::from_int(group.order() as i64);
    let mut coeffs = Vec::with_capacity(trunc + 1);
    for (degree, value) in acc.into_iter().enumerate() {
        let scaled = &value / &order;
        let check = scaled
            .to_rational()
            .filter(|r| r.denom().is_one() && !r.numer().is_negative());
        match check {
            Some(r) => coeffs.push(r),
            None => {
                return Err(MolienError::NonIntegral {
                    degree,
                    value: scaled.to_string(),
                })
            }
        }
    }
    Ok(PowerSeries::from_coeffs(coeffs))
}

/// Dimension of the degree-`d` slice of the invariant ring per Molien.
pub fn molien_dimension(group: &PolyGroup, d: usize) -> Result<u64, MolienError> {
    let series = molien(group, d)?;
    Ok(series.coefficient(d).numer().to_u64().expect("small integer"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupName;

    fn series_for(name: GroupName, trunc: usize) -> Vec<u64> {
        molien(PolyGroup::cached(name), trunc)
            .unwrap()
            .integer_coefficients()
    }

    #[test]
    fn h_series_through_t8() {
        assert_eq!(series_for(GroupName::H, 8), vec![1, 0, 1, 0, 5, 0, 6, 0, 15]);
    }

    #[test]
    fn g8_series_truncated_low() {
        assert_eq!(series_for(GroupName::G8, 6), vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn g12_series_through_t14() {
        assert_eq!(
            series_for(GroupName::G12, 14),
            vec![1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 2, 0, 2]
        );
    }

    #[test]
    fn degree_zero_and_two() {
        for name in GroupName::ALL {
            let s = series_for(name, 2);
            assert_eq!(s[0], 1, "constants are invariant");
            assert_eq!(s[2], 1, "the quadric spans degree two for {name}");
        }
    }
}
