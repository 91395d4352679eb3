//! Binary forms in two parameters (u : v) with exact coefficients: the
//! restrictions of surfaces to lines, with the exact divisibility and gcd
//! machinery the ramification audits need.

use crate::projective::ProjLine;
use crate::poly::MultiPoly;
use crate::scalar::Scalar;

/// Homogeneous form of fixed formal degree `coeffs.len() - 1`; index k
/// holds the coefficient of `u^k v^(d-k)`. Leading coefficients may vanish,
/// the formal degree is part of the data.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> BinaryForm<S> {
    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "formal degree must be defined");
        Self { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![S::zero(); degree + 1],
        }
    }

    pub fn formal_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Multiplicity of u in the form (trailing v-degree from the top).
    fn u_order(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero form")
    }

    /// Multiplicity of v.
    fn v_order(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map(|k| self.formal_degree() - k)
            .expect("nonzero form")
    }

    pub fn derivative_u(&self) -> Self {
        let d = self.formal_degree();
        if d == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..=d)
            .map(|k| {
                let factor = S::from_exact(&crate::scalar::ExactScalar::from_int(k as i64));
                self.coeffs[k].mul_ref(&factor)
            })
            .collect();
        Self { coeffs }
    }

    pub fn derivative_v(&self) -> Self {
        let d = self.formal_degree();
        if d == 0 {
            return Self::zero(0);
        }
        let coeffs = (0..d)
            .map(|k| {
                let factor = S::from_exact(&crate::scalar::ExactScalar::from_int((d - k) as i64));
                self.coeffs[k].mul_ref(&factor)
            })
            .collect();
        Self { coeffs }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = vec![S::zero(); self.formal_degree() + rhs.formal_degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self { coeffs: out }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.formal_degree(), rhs.formal_degree());
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.formal_degree(), rhs.formal_degree());
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.mul_ref(s)).collect(),
        }
    }

    pub fn eval(&self, u: &S, v: &S) -> S {
        let d = self.formal_degree();
        // powers of u ascending, v descending
        let mut u_pows = vec![S::one()];
        let mut v_pows = vec![S::one()];
        for k in 1..=d {
            let nu = u_pows[k - 1].mul_ref(u);
            u_pows.push(nu);
            let nv = v_pows[k - 1].mul_ref(v);
            v_pows.push(nv);
        }
        let mut acc = S::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add_ref(&c.mul_ref(&u_pows[k]).mul_ref(&v_pows[d - k]));
        }
        acc
    }

    /// The Wronskian s_u q_v - s_v q_u of two forms; for degrees (m, k) the
    /// result has formal degree m + k - 2.
    pub fn wronskian(s: &Self, q: &Self) -> Self {
        s.derivative_u()
            .mul(&q.derivative_v())
            .sub(&s.derivative_v().mul(&q.derivative_u()))
    }

    /// Exact division; `None` when the divisor does not divide exactly
    /// (including the v-order bookkeeping for vanishing leads).
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero form");
        if self.is_zero() {
            if divisor.formal_degree() > self.formal_degree() {
                return None;
            }
            return Some(Self::zero(self.formal_degree() - divisor.formal_degree()));
        }
        let (df, dg) = (self.formal_degree(), divisor.formal_degree());
        if dg > df {
            return None;
        }
        let vf = self.v_order();
        let vg = divisor.v_order();
        if vg > vf || vf - vg > df - dg {
            return None;
        }
        // univariate division in u: quotient degree in u is fixed by the
        // v-orders; the top (formal) coefficients of the quotient vanish.
        let qu_top = df - dg - (vf - vg); // u-degree of the quotient's support
        let mut rem: Vec<S> = self.coeffs.clone();
        let mut quot = vec![S::zero(); df - dg + 1];
        let g_lead_idx = dg - vg;
        let g_lead_inv = divisor.coeffs[g_lead_idx].inverse()?;
        for k in (0..=qu_top).rev() {
            let target = k + g_lead_idx;
            if rem[target].is_zero() {
                continue;
            }
            let c = rem[target].mul_ref(&g_lead_inv);
            for (j, g) in divisor.coeffs.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                rem[k + j] = rem[k + j].sub_ref(&c.mul_ref(g));
            }
            quot[k] = c;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Self { coeffs: quot })
        } else {
            None
        }
    }

    /// Largest power of `divisor` dividing `self`, with the cofactor.
    pub fn factor_multiplicity(&self, divisor: &Self) -> (usize, Self) {
        let mut mult = 0;
        let mut current = self.clone();
        while let Some(next) = current.divide_exact(divisor) {
            current = next;
            mult += 1;
            if current.formal_degree() == 0 {
                break;
            }
        }
        (mult, current)
    }

    /// Monic greatest common divisor (degree 0 result means coprime).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let ua = self.u_order();
        let ub = other.u_order();
        let va = self.v_order();
        let vb = other.v_order();
        // strip u^a v^b, run Euclid on the univariate middles
        let mid = |f: &Self, uo: usize, vo: usize| -> Vec<S> {
            f.coeffs[uo..=f.formal_degree() - vo].to_vec()
        };
        let mut a = mid(self, ua, va);
        let mut b = mid(other, ub, vb);
        // univariate Euclid in t = u/v
        while !b.iter().all(|c| c.is_zero()) {
            let r = uni_rem(&a, &b);
            a = b;
            b = r;
        }
        let mut core = a;
        // normalize monic
        let lead_inv = core
            .iter()
            .rev()
            .find(|c| !c.is_zero())
            .and_then(|c| c.inverse())
            .expect("nonzero gcd core");
        while core.last().is_some_and(|c| c.is_zero()) {
            core.pop();
        }
        for c in core.iter_mut() {
            *c = c.mul_ref(&lead_inv);
        }
        let u_shift = ua.min(ub);
        let v_shift = va.min(vb);
        let mut coeffs = vec![S::zero(); u_shift];
        coeffs.extend(core);
        coeffs.extend(std::iter::repeat_with(S::zero).take(v_shift));
        Self { coeffs }
    }

    /// Degree-0 gcd with both partials means no repeated factor.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let g = self.gcd(&self.derivative_u()).gcd(&self.derivative_v());
        g.formal_degree() == 0
    }

    fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.coeffs[self.formal_degree() - self.v_order()].clone();
        self.scale(&lead.inverse().expect("nonzero lead"))
    }
}

/// Remainder of univariate division (dense coefficient vectors, ascending).
fn uni_rem<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let deg = |f: &[S]| f.iter().rposition(|c| !c.is_zero());
    let Some(db) = deg(b) else {
        panic!("division by zero polynomial")
    };
    let mut rem = a.to_vec();
    let lead_inv = b[db].inverse().expect("nonzero lead");
    while let Some(dr) = deg(&rem) {
        if dr < db {
            break;
        }
        let c = rem[dr].mul_ref(&lead_inv);
        let shift = dr - db;
        for (j, bc) in b.iter().enumerate().take(db + 1) {
            rem[shift + j] = rem[shift + j].sub_ref(&c.mul_ref(bc));
        }
        rem[dr] = S::zero();
    }
    rem
}

impl<S: Scalar> std::fmt::Display for BinaryForm<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (degree {})", self.formal_degree());
        }
        let d = self.formal_degree();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            if cs != "1" || k == 0 && d == 0 {
                if cs.contains(' ') || cs.contains('+') {
                    write!(f, "({cs})")?;
                } else {
                    write!(f, "{cs}")?;
                }
                if k > 0 || k < d {
                    write!(f, "*")?;
                }
            }
            match (k, d - k) {
                (0, 0) => {}
                (ku, 0) if ku == 1 => write!(f, "u")?,
                (ku, 0) => write!(f, "u^{ku}")?,
                (0, 1) => write!(f, "v")?,
                (0, kv) => write!(f, "v^{kv}")?,
                (1, 1) => write!(f, "u*v")?,
                (1, kv) => write!(f, "u*v^{kv}")?,
                (ku, 1) => write!(f, "u^{ku}*v")?,
                (ku, kv) => write!(f, "u^{ku}*v^{kv}")?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar> std::fmt::Debug for BinaryForm<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// Restriction of a homogeneous polynomial to a line: substitute
/// `x = u*b0 + v*b1` over the line's canonical basis. The zero form of the
/// right degree comes back when the line lies inside the zero set.
pub fn restrict_to_line<S: Scalar>(p: &MultiPoly<S>, line: &ProjLine<S>) -> BinaryForm<S> {
    let degree = p
        .homogeneous_degree()
        .expect("restriction expects a homogeneous polynomial");
    let [b0, b1] = line.basis();
    // per-coordinate binomial expansions of (b0[i] u + b1[i] v)^k, cached
    let mut factor_powers: [Vec<BinaryForm<S>>; 4] = std::array::from_fn(|i| {
        vec![
            BinaryForm::from_coeffs(vec![S::one()]),
            BinaryForm::from_coeffs(vec![b1[i].clone(), b0[i].clone()]),
        ]
    });
    let power = |cache: &mut Vec<BinaryForm<S>>, k: usize| -> BinaryForm<S> {
        while cache.len() <= k {
            let next = cache.last().unwrap().mul(&cache[1]);
            cache.push(next);
        }
        cache[k].clone()
    };
    let mut acc = BinaryForm::zero(degree);
    for (mono, coeff) in p.terms() {
        let mut term = BinaryForm::from_coeffs(vec![coeff.clone()]);
        for i in 0..4 {
            if mono[i] > 0 {
                term = term.mul(&power(&mut factor_powers[i], mono[i] as usize));
            }
        }
        debug_assert_eq!(term.formal_degree(), degree);
        acc = acc.add(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiPoly;
    use crate::scalar::ExactScalar;

    fn es(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn form(coeffs: &[i64]) -> BinaryForm<ExactScalar> {
        BinaryForm::from_coeffs(coeffs.iter().map(|&c| es(c)).collect())
    }

    #[test]
    fn restrict_quadric_to_coordinate_line() {
        let line = ProjLine::from_int_span([1, 0, 0, 0], [0, 0, 1, 0]).unwrap();
        let q = MultiPoly::quadric();
        let r = restrict_to_line(&q, &line);
        // u^2 + v^2
        assert_eq!(r, form(&[1, 0, 1]));
    }

    #[test]
    fn restriction_of_containing_surface_is_zero() {
        // x0 * x1 vanishes on the line x0 = x1 = 0
        let p = MultiPoly::<ExactScalar>::var(0).mul(&MultiPoly::var(1));
        let line = ProjLine::from_int_span([0, 0, 1, 0], [0, 0, 0, 1]).unwrap();
        let r = restrict_to_line(&p, &line);
        assert!(r.is_zero());
        assert_eq!(r.formal_degree(), 2);
    }

    #[test]
    fn division_and_multiplicity() {
        // (u^2 + v^2) * (u - v)^2
        let q = form(&[1, 0, 1]);
        let lin = form(&[-1, 1]); // u - v: coeff of v is -1, coeff of u is 1
        let prod = q.mul(&lin).mul(&lin);
        let (mult, rest) = prod.factor_multiplicity(&lin);
        assert_eq!(mult, 2);
        assert_eq!(rest, q);
        assert_eq!(prod.divide_exact(&form(&[1, 1])), None);
    }

    #[test]
    fn division_with_vanishing_leads() {
        // v^2 * (u + v) divided by v
        let f = form(&[1, 1, 0, 0]); // (u + v) v^2
        let v = form(&[1, 0]); // v
        let q = f.divide_exact(&v).unwrap();
        assert_eq!(q, form(&[1, 1, 0]));
        // u^2 v / u^2 = v
        let f2 = form(&[0, 0, 1, 0]).mul(&form(&[1])); // u^2 v
        let u2 = form(&[0, 0, 1]);
        assert_eq!(f2.divide_exact(&u2).unwrap(), form(&[1, 0]));
    }

    #[test]
    fn gcd_of_shared_factors() {
        let a = form(&[1, 0, 1]).mul(&form(&[-1, 1])); // (u^2+v^2)(u-v)
        let b = form(&[-1, 1]).mul(&form(&[-1, 1])); // (u-v)^2
        let g = a.gcd(&b);
        assert_eq!(g, form(&[-1, 1]));
        assert_eq!(g.formal_degree(), 1);
        // u v against u^2: gcd = u
        let g2 = form(&[0, 1, 0]).gcd(&form(&[0, 0, 1]));
        assert_eq!(g2.formal_degree(), 1);
        assert_eq!(g2, form(&[0, 1]));
    }

    #[test]
    fn squarefree_detection() {
        assert!(form(&[0, 1]).mul(&form(&[1, 0])).is_squarefree()); // u*v
        assert!(!form(&[0, 1]).mul(&form(&[0, 1])).is_squarefree()); // u^2
        assert!(form(&[1, 0, 1]).is_squarefree()); // u^2 + v^2
        assert!(!form(&[1, 2, 1]).is_squarefree()); // (u + v)^2
    }

    #[test]
    fn wronskian_of_sextic_and_quadric_on_coordinate_line() {
        // s = u^6 + v^6, q = u^2 + v^2:
        // W = 12 u v (u^4 - v^4) = 12 u v (u-v)(u+v)(u^2+v^2)
        let s = form(&[1, 0, 0, 0, 0, 0, 1]);
        let q = form(&[1, 0, 1]);
        let w = BinaryForm::wronskian(&s, &q);
        assert_eq!(w.formal_degree(), 6);
        let expected = form(&[0, 1])
            .mul(&form(&[1, 0]))
            .mul(&form(&[-1, 1]))
            .mul(&form(&[1, 1]))
            .mul(&form(&[1, 0, 1]))
            .scale(&es(12));
        assert_eq!(w, expected);
    }
}
