//! Sparse multivariate polynomials in x0..x3 over an exact scalar field:
//! arithmetic, evaluation, formal derivatives, Hessians and composition
//! with linear substitutions (the group action on the coordinate ring).

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::linalg::Mat4;
use crate::scalar::{ComplexScalar, ExactScalar, Scalar};

/// Exponent vector of a monomial in x0..x3.
pub type Monomial = [u8; 4];

pub fn monomial_degree(m: &Monomial) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

/// Sparse polynomial; no zero coefficients are stored and the term map is
/// ordered, so the representation is canonical.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<S: Scalar> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> MultiPoly<S> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: S) -> Self {
        let mut p = Self::zero();
        p.add_term([0, 0, 0, 0], c);
        p
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn var(i: usize) -> Self {
        let mut mono = [0u8; 4];
        mono[i] = 1;
        Self::from_term(mono, S::one())
    }

    pub fn from_term(mono: Monomial, coeff: S) -> Self {
        let mut p = Self::zero();
        p.add_term(mono, coeff);
        p
    }

    /// Add `coeff * x^mono`, dropping the term if it cancels.
    pub fn add_term(&mut self, mono: Monomial, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add_ref(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> S {
        self.terms.get(mono).cloned().unwrap_or_else(S::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(monomial_degree).max()
    }

    /// `Some(d)` if every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(monomial_degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c.mul_ref(s))).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mono = std::array::from_fn(|i| ma[i] + mb[i]);
                out.add_term(mono, ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn evaluate(&self, pt: &[S; 4]) -> S {
        // Power tables keep evaluation linear in the number of terms.
        let max_exp: [usize; 4] = std::array::from_fn(|i| {
            self.terms.keys().map(|m| m[i] as usize).max().unwrap_or(0)
        });
        let powers: [Vec<S>; 4] = std::array::from_fn(|i| {
            let mut v = Vec::with_capacity(max_exp[i] + 1);
            v.push(S::one());
            for k in 1..=max_exp[i] {
                let next = v[k - 1].mul_ref(&pt[i]);
                v.push(next);
            }
            v
        });
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..4 {
                if m[i] > 0 {
                    term = term.mul_ref(&powers[i][m[i] as usize]);
                }
            }
            acc = acc.add_ref(&term);
        }
        acc
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut mono = *m;
            mono[i] -= 1;
            let factor = S::from_exact(&ExactScalar::from_int(m[i] as i64));
            out.add_term(mono, c.mul_ref(&factor));
        }
        out
    }

    pub fn gradient(&self) -> [Self; 4] {
        std::array::from_fn(|i| self.partial(i))
    }

    /// Hessian matrix of second partials evaluated at `pt`.
    pub fn hessian_at(&self, pt: &[S; 4]) -> Mat4<S> {
        let firsts = self.gradient();
        let mut entries: Vec<Vec<Option<S>>> = vec![vec![None; 4]; 4];
        for r in 0..4 {
            for c in r..4 {
                let v = firsts[r].partial(c).evaluate(pt);
                entries[r][c] = Some(v.clone());
                entries[c][r] = Some(v);
            }
        }
        Mat4::from_fn(|r, c| entries[r][c].take().expect("filled"))
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MultiPoly<T> {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, f(c))).collect(),
        }
    }
}

impl MultiPoly<ExactScalar> {
    pub fn to_complex(&self) -> MultiPoly<ComplexScalar> {
        self.map_scalar(|c| ComplexScalar::from_real(c.clone()))
    }

    /// The invariant quadric Q = x0^2 + x1^2 + x2^2 + x3^2.
    pub fn quadric() -> Self {
        let mut q = Self::zero();
        for i in 0..4 {
            let mut mono = [0u8; 4];
            mono[i] = 2;
            q.add_term(mono, ExactScalar::one());
        }
        q
    }
}

impl<S: Scalar> Hash for MultiPoly<S> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl<S: Scalar> fmt::Display for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // graded lexicographic, highest degree first
        let mut items: Vec<(&Monomial, &S)> = self.terms.iter().collect();
        items.sort_by(|(ma, _), (mb, _)| {
            monomial_degree(mb)
                .cmp(&monomial_degree(ma))
                .then_with(|| mb.cmp(ma))
        });
        let mut first = true;
        for (m, c) in items {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let is_const = m.iter().all(|&e| e == 0);
            if is_const {
                write!(f, "{cs}")?;
                continue;
            }
            if cs == "1" {
                // suppress unit coefficient
            } else if cs.contains(' ') || cs.contains('+') {
                write!(f, "({cs})*")?;
            } else {
                write!(f, "{cs}*")?;
            }
            let mut first_var = true;
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                if e == 1 {
                    write!(f, "x{i}")?;
                } else {
                    write!(f, "x{i}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> serde::Serialize for MultiPoly<S> {
    fn serialize<Ser: serde::Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        serializer.collect_str(self)
    }
}

/// Composition with the substitution x -> m * x, with power caching so that
/// acting on many monomials of one degree shares work.
pub struct LinearAction<S: Scalar> {
    powers: [Vec<MultiPoly<S>>; 4],
}

impl<S: Scalar> LinearAction<S> {
    pub fn new(m: &Mat4<S>) -> Self {
        let powers = std::array::from_fn(|i| {
            let mut form = MultiPoly::zero();
            for j in 0..4 {
                let mut mono = [0u8; 4];
                mono[j] = 1;
                form.add_term(mono, m.at(i, j).clone());
            }
            vec![MultiPoly::one(), form]
        });
        Self { powers }
    }

    fn power(&mut self, i: usize, k: usize) -> &MultiPoly<S> {
        while self.powers[i].len() <= k {
            let last = self.powers[i].last().unwrap();
            let next = last.mul(&self.powers[i][1]);
            self.powers[i].push(next);
        }
        &self.powers[i][k]
    }

    pub fn monomial_image(&mut self, mono: &Monomial) -> MultiPoly<S> {
        let mut acc = MultiPoly::one();
        for i in 0..4 {
            if mono[i] > 0 {
                let p = self.power(i, mono[i] as usize).clone();
                acc = acc.mul(&p);
            }
        }
        acc
    }

    pub fn apply(&mut self, p: &MultiPoly<S>) -> MultiPoly<S> {
        let mut out = MultiPoly::zero();
        let terms: Vec<(Monomial, S)> = p.terms().map(|(m, c)| (*m, c.clone())).collect();
        for (mono, coeff) in terms {
            let image = self.monomial_image(&mono).scale(&coeff);
            out = out.add(&image);
        }
        out
    }
}

/// `p` composed with the linear substitution x -> m * x.
pub fn act<S: Scalar>(m: &Mat4<S>, p: &MultiPoly<S>) -> MultiPoly<S> {
    LinearAction::new(m).apply(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::reference_matrices;

    fn es(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn arithmetic_and_degrees() {
        let x0 = MultiPoly::<ExactScalar>::var(0);
        let x1 = MultiPoly::<ExactScalar>::var(1);
        let p = x0.mul(&x0).add(&x1.scale(&es(3)));
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.homogeneous_degree(), None);
        assert_eq!(p.num_terms(), 2);
        let q = p.sub(&p);
        assert!(q.is_zero());
    }

    #[test]
    fn evaluation_with_power_tables() {
        let q = MultiPoly::quadric();
        let pt = [es(1), es(2), es(3), es(5)];
        assert_eq!(q.evaluate(&pt), es(39));
        let q3 = q.pow(3);
        assert_eq!(q3.evaluate(&pt), es(39 * 39 * 39));
        assert_eq!(q3.homogeneous_degree(), Some(6));
    }

    #[test]
    fn gradient_of_quadric() {
        let q = MultiPoly::quadric();
        let grads = q.gradient();
        let pt = [es(1), es(0), es(0), es(0)];
        let vals: Vec<ExactScalar> = grads.iter().map(|g| g.evaluate(&pt)).collect();
        assert_eq!(vals, vec![es(2), es(0), es(0), es(0)]);
    }

    #[test]
    fn quadric_is_orthogonally_invariant() {
        let q = MultiPoly::quadric();
        for m in [
            reference_matrices::sigma1(),
            reference_matrices::pi3(),
            reference_matrices::pi5(),
        ] {
            assert_eq!(act(&m, &q), q);
        }
    }

    #[test]
    fn euler_identity_on_homogeneous_parts() {
        let q3 = MultiPoly::quadric().pow(3);
        let grads = q3.gradient();
        let mut acc = MultiPoly::zero();
        for (i, g) in grads.iter().enumerate() {
            acc = acc.add(&MultiPoly::var(i).mul(g));
        }
        assert_eq!(acc, q3.scale(&es(6)));
    }

    #[test]
    fn hessian_of_quadric_is_twice_identity() {
        let q = MultiPoly::quadric();
        let h = q.hessian_at(&[es(7), es(1), es(0), es(2)]);
        assert_eq!(h, Mat4::identity().scale(&es(2)));
        assert_eq!(h.rank(), 4);
    }

    #[test]
    fn action_composes_contravariantly() {
        let a = reference_matrices::pi3();
        let b = reference_matrices::sigma2();
        let p = MultiPoly::var(0).mul(&MultiPoly::var(1)).add(&MultiPoly::quadric());
        // act(m, p) = p(m x): act(a, act(b, p)) = p(b a x)
        let lhs = act(&a, &act(&b, &p));
        let rhs = act(&b.mul(&a), &p);
        assert_eq!(lhs, rhs);
    }
}
