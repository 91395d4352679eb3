//! Canonical projective points and lines in P3 over an exact scalar field.
//!
//! Points are normalized so the first nonzero coordinate is 1; lines are
//! stored as the reduced row echelon form of a spanning 2x4 matrix. Both
//! forms are unique, so equality and hashing are exact set semantics.

use std::fmt;

use crate::linalg::{rank_of, rref, Mat4, Vec4};
use crate::scalar::{ComplexScalar, ExactScalar, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint<S: Scalar> {
    coords: [S; 4],
}

impl<S: Scalar> ProjPoint<S> {
    /// Canonicalize homogeneous coordinates; `None` if all are zero.
    pub fn new(raw: Vec4<S>) -> Option<Self> {
        let lead = raw.iter().position(|c| !c.is_zero())?;
        let inv = raw[lead].inverse().expect("nonzero leading coordinate");
        Some(Self {
            coords: std::array::from_fn(|i| raw[i].mul_ref(&inv)),
        })
    }

    pub fn coords(&self) -> &[S; 4] {
        &self.coords
    }

    pub fn apply(&self, m: &Mat4<S>) -> Self {
        Self::new(m.mul_vec(&self.coords)).expect("projective image of a nonzero vector")
    }

    /// Value of the invariant quadric x0^2 + x1^2 + x2^2 + x3^2.
    pub fn quadric_value(&self) -> S {
        let mut acc = S::zero();
        for c in &self.coords {
            acc = acc.add_ref(&c.mul_ref(c));
        }
        acc
    }
}

impl ProjPoint<ExactScalar> {
    pub fn from_ints(coords: [i64; 4]) -> Self {
        Self::new(coords.map(ExactScalar::from_int)).expect("nonzero point")
    }

    pub fn to_complex(&self) -> ProjPoint<ComplexScalar> {
        ProjPoint {
            coords: std::array::from_fn(|i| ComplexScalar::from_real(self.coords[i].clone())),
        }
    }
}

impl ProjPoint<ComplexScalar> {
    pub fn is_real(&self) -> bool {
        self.coords.iter().all(|c| c.is_real())
    }
}

impl<S: Scalar> fmt::Display for ProjPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(" : "))
    }
}

impl<S: Scalar> fmt::Debug for ProjPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> serde::Serialize for ProjPoint<S> {
    fn serialize<Ser: serde::Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        serializer.collect_str(self)
    }
}

/// Outcome of intersecting two distinct projective lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineMeet<S: Scalar> {
    Disjoint,
    Point(ProjPoint<S>),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine<S: Scalar> {
    rows: [[S; 4]; 2],
}

impl<S: Scalar> ProjLine<S> {
    /// Line spanned by two vectors; `None` if they are dependent.
    pub fn from_span(a: Vec4<S>, b: Vec4<S>) -> Option<Self> {
        let mut rows = vec![a.to_vec(), b.to_vec()];
        let pivots = rref(&mut rows);
        if pivots.len() != 2 {
            return None;
        }
        Some(Self {
            rows: [
                std::array::from_fn(|i| rows[0][i].clone()),
                std::array::from_fn(|i| rows[1][i].clone()),
            ],
        })
    }

    pub fn through(a: &ProjPoint<S>, b: &ProjPoint<S>) -> Option<Self> {
        Self::from_span(a.coords().clone(), b.coords().clone())
    }

    /// The two canonical basis points (rows of the echelon form).
    pub fn basis(&self) -> [&[S; 4]; 2] {
        [&self.rows[0], &self.rows[1]]
    }

    pub fn pivot_columns(&self) -> [usize; 2] {
        let p0 = self.rows[0].iter().position(|c| !c.is_zero()).expect("rank 2");
        let p1 = self.rows[1].iter().position(|c| !c.is_zero()).expect("rank 2");
        [p0, p1]
    }

    pub fn contains(&self, pt: &ProjPoint<S>) -> bool {
        // Reduce the point against the echelon rows; membership iff zero.
        let mut v: Vec<S> = pt.coords().to_vec();
        for row in &self.rows {
            let lead = row.iter().position(|c| !c.is_zero()).expect("rank 2");
            if v[lead].is_zero() {
                continue;
            }
            let factor = v[lead].clone();
            for i in 0..4 {
                v[i] = v[i].sub_ref(&factor.mul_ref(&row[i]));
            }
        }
        v.iter().all(|c| c.is_zero())
    }

    /// The parameter `(u : v)` of a point on this line with respect to the
    /// canonical basis, i.e. `pt ~ u*b0 + v*b1`. `None` if `pt` is not on
    /// the line.
    pub fn parameter_of(&self, pt: &ProjPoint<S>) -> Option<(S, S)> {
        if !self.contains(pt) {
            return None;
        }
        let [p0, p1] = self.pivot_columns();
        Some((pt.coords()[p0].clone(), pt.coords()[p1].clone()))
    }

    /// Point at parameter `(u : v)`.
    pub fn point_at(&self, u: &S, v: &S) -> Option<ProjPoint<S>> {
        ProjPoint::new(std::array::from_fn(|i| {
            u.mul_ref(&self.rows[0][i]).add_ref(&v.mul_ref(&self.rows[1][i]))
        }))
    }

    pub fn apply(&self, m: &Mat4<S>) -> Self {
        let a = m.mul_vec(&self.rows[0]);
        let b = m.mul_vec(&self.rows[1]);
        Self::from_span(a, b).expect("image of a line under an invertible map")
    }

    /// Exact intersection of two distinct lines.
    ///
    /// Two distinct lines in P3 are either disjoint or meet in one point;
    /// intersecting a line with itself is rejected.
    pub fn intersect(&self, other: &Self) -> Result<LineMeet<S>, GeometryError> {
        if self == other {
            return Err(GeometryError::SameLine);
        }
        let mut stacked: Vec<Vec<S>> = vec![
            self.rows[0].to_vec(),
            self.rows[1].to_vec(),
            other.rows[0].to_vec(),
            other.rows[1].to_vec(),
        ];
        if rank_of(&mut stacked) == 4 {
            return Ok(LineMeet::Disjoint);
        }
        // alpha*a + beta*b - gamma*c - delta*d = 0: kernel of the matrix with
        // those four vectors as columns.
        let cols = [
            &self.rows[0],
            &self.rows[1],
            &other.rows[0],
            &other.rows[1],
        ];
        let m = Mat4::from_fn(|r, c| {
            if c < 2 {
                cols[c][r].clone()
            } else {
                cols[c][r].neg_ref()
            }
        });
        let kernel = m.kernel();
        let coeffs = kernel.first().expect("rank 3 stack has a combination");
        let pt = ProjPoint::new(std::array::from_fn(|i| {
            coeffs[0]
                .mul_ref(&self.rows[0][i])
                .add_ref(&coeffs[1].mul_ref(&self.rows[1][i]))
        }))
        .expect("nonzero intersection point");
        debug_assert!(self.contains(&pt) && other.contains(&pt));
        Ok(LineMeet::Point(pt))
    }
}

impl ProjLine<ExactScalar> {
    pub fn from_int_span(a: [i64; 4], b: [i64; 4]) -> Option<Self> {
        Self::from_span(a.map(ExactScalar::from_int), b.map(ExactScalar::from_int))
    }

    pub fn to_complex(&self) -> ProjLine<ComplexScalar> {
        ProjLine {
            rows: [
                std::array::from_fn(|i| ComplexScalar::from_real(self.rows[0][i].clone())),
                std::array::from_fn(|i| ComplexScalar::from_real(self.rows[1][i].clone())),
            ],
        }
    }
}

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("intersection of a line with itself")]
    SameLine,
}

impl<S: Scalar> fmt::Display for ProjLine<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_row = |row: &[S; 4]| {
            let parts: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            format!("({})", parts.join(" : "))
        };
        write!(f, "<{}, {}>", fmt_row(&self.rows[0]), fmt_row(&self.rows[1]))
    }
}

impl<S: Scalar> fmt::Debug for ProjLine<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> serde::Serialize for ProjLine<S> {
    fn serialize<Ser: serde::Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: [i64; 4]) -> ProjPoint<ExactScalar> {
        ProjPoint::from_ints(c)
    }

    #[test]
    fn points_canonicalize() {
        assert_eq!(pt([2, 4, 0, 6]), pt([1, 2, 0, 3]));
        assert_eq!(pt([0, -3, 3, 0]), pt([0, 1, -1, 0]));
        assert_eq!(
            ProjPoint::new(std::array::from_fn(|_| ExactScalar::zero())),
            None
        );
    }

    #[test]
    fn line_canonical_and_membership() {
        let l = ProjLine::from_int_span([1, 1, 0, 0], [1, -1, 0, 0]).unwrap();
        let l2 = ProjLine::from_int_span([1, 0, 0, 0], [0, 1, 0, 0]).unwrap();
        assert_eq!(l, l2);
        assert!(l.contains(&pt([3, 7, 0, 0])));
        assert!(!l.contains(&pt([1, 0, 1, 0])));
        assert!(ProjLine::from_int_span([1, 2, 0, 0], [2, 4, 0, 0]).is_none());
    }

    #[test]
    fn intersections() {
        let l1 = ProjLine::from_int_span([1, 0, 0, 0], [0, 0, 1, 0]).unwrap();
        let l2 = ProjLine::from_int_span([0, 1, 0, 0], [0, 0, 0, 1]).unwrap();
        assert_eq!(l1.intersect(&l2), Ok(LineMeet::Disjoint));

        let l3 = ProjLine::from_int_span([1, 0, 0, 0], [0, 1, 0, 0]).unwrap();
        let l4 = ProjLine::from_int_span([0, 1, 0, 0], [0, 0, 1, 0]).unwrap();
        assert_eq!(l3.intersect(&l4), Ok(LineMeet::Point(pt([0, 1, 0, 0]))));

        assert_eq!(l1.intersect(&l1), Err(GeometryError::SameLine));
    }

    #[test]
    fn parameters_round_trip() {
        let l = ProjLine::from_int_span([1, 0, 0, 1], [0, 1, 1, 0]).unwrap();
        let p = l
            .point_at(&ExactScalar::from_int(2), &ExactScalar::from_int(3))
            .unwrap();
        let (u, v) = l.parameter_of(&p).unwrap();
        // parameters are homogeneous
        let ratio = &u * &v.inverse().unwrap();
        assert_eq!(ratio, ExactScalar::rational(2, 3));
        assert_eq!(l.parameter_of(&pt([1, 0, 0, 0])), None);
    }
}
