use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::{isqrt, rational_sqrt, rational_to_f64, Rational, Scalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse exact scalar from {0:?}")]
    Parse(String),
}

/// Element of the real quartic field Q(sqrt2, sqrt5).
///
/// Logically the value is `c1 + c2*sqrt2 + c5*sqrt5 + c10*sqrt10` with
/// rational components (see [`ExactScalar::c1`] and friends). Internally the
/// four components share one denominator, which keeps the group-closure and
/// elimination hot paths off per-component gcd work. The representation is
/// canonical: `den > 0` and `gcd(a, b, c, d, den) = 1`, so structural
/// equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
    den: BigInt,
}

impl ExactScalar {
    fn make(a: BigInt, b: BigInt, c: BigInt, d: BigInt, den: BigInt) -> Self {
        debug_assert!(den.is_positive());
        Self { a, b, c, d, den }.reduced()
    }

    fn reduced(mut self) -> Self {
        if self.den.is_one() {
            return self;
        }
        let mut g = self.a.gcd(&self.b);
        if !g.is_one() {
            g = g.gcd(&self.c);
        }
        if !g.is_one() {
            g = g.gcd(&self.d);
        }
        if !g.is_one() {
            g = g.gcd(&self.den);
        }
        if !g.is_one() {
            self.a /= &g;
            self.b /= &g;
            self.c /= &g;
            self.d /= &g;
            self.den /= &g;
        }
        self
    }

    /// Value from integer basis coefficients: `(a + b*sqrt2 + c*sqrt5 + d*sqrt10) / den`.
    pub fn from_basis(a: i64, b: i64, c: i64, d: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let (sgn, den_abs) = if den < 0 { (-1, -den) } else { (1, den) };
        Self::make(
            BigInt::from(a * sgn),
            BigInt::from(b * sgn),
            BigInt::from(c * sgn),
            BigInt::from(d * sgn),
            BigInt::from(den_abs),
        )
    }

    pub fn zero() -> Self {
        Self {
            a: BigInt::zero(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self {
            a: BigInt::from(n),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self {
            a: r.numer().clone(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::zero(),
            den: r.denom().clone(),
        }
    }

    /// `n/d` as an exact scalar.
    pub fn rational(n: i64, d: i64) -> Self {
        Self::from_basis(n, 0, 0, 0, d)
    }

    pub fn sqrt2() -> Self {
        Self::from_basis(0, 1, 0, 0, 1)
    }

    pub fn sqrt5() -> Self {
        Self::from_basis(0, 0, 1, 0, 1)
    }

    pub fn sqrt10() -> Self {
        Self::from_basis(0, 0, 0, 1, 1)
    }

    /// The golden ratio `(1 + sqrt5) / 2`.
    pub fn tau() -> Self {
        Self::from_basis(1, 0, 1, 0, 2)
    }

    /// Build from the four rational components.
    pub fn from_components(c1: &Rational, c2: &Rational, c5: &Rational, c10: &Rational) -> Self {
        let den = c1
            .denom()
            .lcm(c2.denom())
            .lcm(c5.denom())
            .lcm(c10.denom());
        let scale = |r: &Rational| r.numer() * (&den / r.denom());
        Self::make(scale(c1), scale(c2), scale(c5), scale(c10), den)
    }

    pub fn c1(&self) -> Rational {
        Rational::new(self.a.clone(), self.den.clone())
    }

    pub fn c2(&self) -> Rational {
        Rational::new(self.b.clone(), self.den.clone())
    }

    pub fn c5(&self) -> Rational {
        Rational::new(self.c.clone(), self.den.clone())
    }

    pub fn c10(&self) -> Rational {
        Rational::new(self.d.clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(Rational::new(self.a.clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::make(
                &self.a + &rhs.a,
                &self.b + &rhs.b,
                &self.c + &rhs.c,
                &self.d + &rhs.d,
                self.den.clone(),
            );
        }
        let g = self.den.gcd(&rhs.den);
        let m1 = &rhs.den / &g;
        let m2 = &self.den / &g;
        Self::make(
            &self.a * &m1 + &rhs.a * &m2,
            &self.b * &m1 + &rhs.b * &m2,
            &self.c * &m1 + &rhs.c * &m2,
            &self.d * &m1 + &rhs.d * &m2,
            &self.den * &m1,
        )
    }

    fn sub_impl(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::make(
                &self.a - &rhs.a,
                &self.b - &rhs.b,
                &self.c - &rhs.c,
                &self.d - &rhs.d,
                self.den.clone(),
            );
        }
        let g = self.den.gcd(&rhs.den);
        let m1 = &rhs.den / &g;
        let m2 = &self.den / &g;
        Self::make(
            &self.a * &m1 - &rhs.a * &m2,
            &self.b * &m1 - &rhs.b * &m2,
            &self.c * &m1 - &rhs.c * &m2,
            &self.d * &m1 - &rhs.d * &m2,
            &self.den * &m1,
        )
    }

    // Basis products: r2*r5 = r10, r2*r10 = 2*r5, r5*r10 = 5*r2.
    fn mul_impl(&self, rhs: &Self) -> Self {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&rhs.a, &rhs.b, &rhs.c, &rhs.d);
        let a = a1 * a2 + 2 * (b1 * b2) + 5 * (c1 * c2) + 10 * (d1 * d2);
        let b = a1 * b2 + b1 * a2 + 5 * (c1 * d2 + d1 * c2);
        let c = a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2);
        let d = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2;
        Self::make(a, b, c, d, &self.den * &rhs.den)
    }

    fn neg_impl(&self) -> Self {
        Self {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
            den: self.den.clone(),
        }
    }

    /// Galois conjugate flipping the sign of sqrt2 (and hence sqrt10).
    pub fn conj_sqrt2(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            d: -&self.d,
            den: self.den.clone(),
        }
    }

    /// Galois conjugate flipping the sign of sqrt5 (and hence sqrt10).
    pub fn conj_sqrt5(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: self.b.clone(),
            c: -&self.c,
            d: -&self.d,
            den: self.den.clone(),
        }
    }

    /// Exact inverse, reducing to a rational denominator by multiplying the
    /// three nontrivial Galois conjugates.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let u = self.conj_sqrt2();
        let v = self.conj_sqrt5();
        let w = u.conj_sqrt5();
        let p = u.mul_impl(&v).mul_impl(&w);
        let n = self.mul_impl(&p);
        debug_assert!(
            n.b.is_zero() && n.c.is_zero() && n.d.is_zero(),
            "field norm must be rational"
        );
        // inverse = p * n.den / n.a
        let sgn = if n.a.is_negative() { -1 } else { 1 };
        Ok(Self::make(
            &p.a * &n.den * sgn,
            &p.b * &n.den * sgn,
            &p.c * &n.den * sgn,
            &p.d * &n.den * sgn,
            &p.den * n.a.abs(),
        ))
    }

    /// Sign of the real embedding (sqrt2 = 1.414..., sqrt5 = 2.236...).
    ///
    /// Exact: zero is decided structurally, nonzero signs by descending
    /// through the quadratic subfields (compare squares, which removes one
    /// radical at a time).
    pub fn sign(&self) -> i8 {
        fn sign_q2(u: &BigInt, v: &BigInt) -> i8 {
            let su = sign_of(u);
            let sv = sign_of(v);
            if sv == 0 {
                return su;
            }
            if su == 0 {
                return sv;
            }
            if su == sv {
                return su;
            }
            // Mixed signs: compare u^2 with 2 v^2.
            let t = u * u - 2 * (v * v);
            if su > 0 {
                sign_of(&t)
            } else {
                -sign_of(&t)
            }
        }
        fn sign_of(x: &BigInt) -> i8 {
            match x.sign() {
                num_bigint::Sign::Minus => -1,
                num_bigint::Sign::NoSign => 0,
                num_bigint::Sign::Plus => 1,
            }
        }
        // value*den = alpha + beta*sqrt5 with alpha = a + b*sqrt2, beta = c + d*sqrt2
        let s_alpha = sign_q2(&self.a, &self.b);
        let s_beta = sign_q2(&self.c, &self.d);
        if s_beta == 0 {
            return s_alpha;
        }
        if s_alpha == 0 {
            return s_beta;
        }
        if s_alpha == s_beta {
            return s_alpha;
        }
        // Mixed signs: compare alpha^2 with 5 beta^2 inside Q(sqrt2).
        let u = &self.a * &self.a + 2 * (&self.b * &self.b)
            - 5 * (&self.c * &self.c)
            - 10 * (&self.d * &self.d);
        let v = 2 * (&self.a * &self.b) - 10 * (&self.c * &self.d);
        if s_alpha > 0 {
            sign_q2(&u, &v)
        } else {
            -sign_q2(&u, &v)
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            self.neg_impl()
        } else {
            self.clone()
        }
    }

    /// Exact square root, provided the value lies in one of the quadratic
    /// subfields Q, Q(sqrt2), Q(sqrt5), Q(sqrt10). Values with two or more
    /// irrational components are not handled and yield `None`; the group
    /// eigenvalue computations only ever need the quadratic cases.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.sign() < 0 {
            return None;
        }
        let (c1, c2, c5, c10) = (self.c1(), self.c2(), self.c5(), self.c10());
        let nz2 = !c2.is_zero();
        let nz5 = !c5.is_zero();
        let nz10 = !c10.is_zero();
        let result = match (nz2, nz5, nz10) {
            (false, false, false) => [1i64, 2, 5, 10].iter().enumerate().find_map(|(slot, &m)| {
                rational_sqrt(&(&c1 / Rational::from(BigInt::from(m)))).map(|p| {
                    let zero = Rational::zero;
                    let mut comps = [zero(), zero(), zero(), zero()];
                    comps[slot] = p;
                    Self::from_components(&comps[0], &comps[1], &comps[2], &comps[3])
                })
            }),
            (true, false, false) => Self::sqrt_pair(&c1, &c2, 1, 2)
                .or_else(|| Self::sqrt_pair(&c1, &(&c2 / Rational::from(BigInt::from(5))), 5, 10)),
            (false, true, false) => Self::sqrt_pair(&c1, &c5, 1, 5)
                .or_else(|| Self::sqrt_pair(&c1, &(&c5 / Rational::from(BigInt::from(2))), 2, 10)),
            (false, false, true) => Self::sqrt_pair(&c1, &c10, 1, 10)
                .or_else(|| Self::sqrt_pair(&c1, &c10, 2, 5)),
            _ => None,
        };
        let root = result?.abs();
        debug_assert_eq!(&root.mul_impl(&root), self);
        Some(root)
    }

    /// Solve `(p*sqrt(s) + q*sqrt(t))^2 = self` given the target components:
    /// `s p^2 + t q^2 = a_part` and `2 p q = cross` (cross term already
    /// reduced to the canonical radical). Requires `cross != 0`.
    fn sqrt_pair(a_part: &Rational, cross: &Rational, s: i64, t: i64) -> Option<Self> {
        if cross.is_zero() {
            return None;
        }
        let st = Rational::from(BigInt::from(s * t));
        let disc = a_part * a_part - &st * cross * cross;
        let root = rational_sqrt(&disc)?;
        let two = Rational::from(BigInt::from(2));
        for y in [(a_part + &root) / &two, (a_part - &root) / &two] {
            let p2 = &y / Rational::from(BigInt::from(s));
            if let Some(p) = rational_sqrt(&p2) {
                if p.is_zero() {
                    continue;
                }
                let q = cross / (&two * &p);
                let radical = |m: i64, r: &Rational| match m {
                    1 => Self::from_components(r, &Rational::zero(), &Rational::zero(), &Rational::zero()),
                    2 => Self::from_components(&Rational::zero(), r, &Rational::zero(), &Rational::zero()),
                    5 => Self::from_components(&Rational::zero(), &Rational::zero(), r, &Rational::zero()),
                    10 => Self::from_components(&Rational::zero(), &Rational::zero(), &Rational::zero(), r),
                    _ => unreachable!(),
                };
                let candidate = radical(s, &p).add_impl(&radical(t, &q));
                let sq = candidate.mul_impl(&candidate);
                let target_cross = {
                    let mut x = Self::zero();
                    x = x.add_impl(&radical(s, &Rational::one()).mul_impl(&radical(t, &Rational::one())));
                    x.mul_impl(&Self::from_rational(cross))
                };
                let target = Self::from_rational(a_part).add_impl(&target_cross);
                if sq == target {
                    return Some(candidate);
                }
            }
        }
        None
    }

    /// Correctly rounded conversion to `f64`.
    pub fn to_f64(&self) -> f64 {
        if self.is_rational() {
            return rational_to_f64(&self.c1());
        }
        // Certified enclosure with doubling dyadic precision until both
        // endpoints round to the same float. An irrational value never sits
        // on a rounding boundary, so this terminates.
        let mut bits: u64 = 64;
        loop {
            let scale = BigInt::one() << bits;
            let bound = |m: i64, coeff: &BigInt| -> (BigInt, BigInt) {
                let lo = isqrt(&(BigInt::from(m) * &scale * &scale));
                let hi = &lo + 1;
                if coeff.is_negative() {
                    (coeff * hi, coeff * lo)
                } else {
                    (coeff * lo, coeff * &hi)
                }
            };
            let base = &self.a * &scale;
            let (lo2, hi2) = bound(2, &self.b);
            let (lo5, hi5) = bound(5, &self.c);
            let (lo10, hi10) = bound(10, &self.d);
            let denom = &self.den * &scale;
            let lo = rational_to_f64(&Rational::new(&base + lo2 + lo5 + lo10, denom.clone()));
            let hi = rational_to_f64(&Rational::new(&base + hi2 + hi5 + hi10, denom));
            if lo == hi {
                return lo;
            }
            bits *= 2;
        }
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for ExactScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(&r)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl $trait for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                self.$impl_fn(rhs)
            }
        }
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                self.$impl_fn(&rhs)
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                self.$impl_fn(rhs)
            }
        }
        impl $trait<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                self.$impl_fn(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl Div for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self.mul_impl(&rhs.inverse().expect("division by zero"))
    }
}

impl Div for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        (&self).div(&rhs)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        self.neg_impl()
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        self.neg_impl()
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sub_impl(other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Display for ExactScalar {
    /// Canonical text form: nonzero terms of
    /// `c1 + c2*r2 + c5*r5 + c10*r10` with exact rationals, `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (coeff, radical) in [
            (self.c1(), None),
            (self.c2(), Some("r2")),
            (self.c5(), Some("r5")),
            (self.c10(), Some("r10")),
        ] {
            if coeff.is_zero() {
                continue;
            }
            let mag = coeff.abs();
            if first {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match radical {
                None => write!(f, "{mag}")?,
                Some(r) => {
                    if mag.is_one() {
                        write!(f, "{r}")?;
                    } else {
                        write!(f, "{mag}*{r}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ExactScalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ScalarError::Parse(s.to_string()));
        }
        // Split into signed terms.
        let mut terms: Vec<(i64, &str)> = Vec::new();
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut sign = 1i64;
        let mut i = 0;
        while i < bytes.len() {
            let ch = bytes[i] as char;
            if (ch == '+' || ch == '-') && i > start {
                terms.push((sign, &compact[start..i]));
                sign = if ch == '-' { -1 } else { 1 };
                start = i + 1;
            } else if (ch == '+' || ch == '-') && i == start {
                if ch == '-' {
                    sign = -sign;
                }
                start = i + 1;
            }
            i += 1;
        }
        if start >= compact.len() {
            return Err(ScalarError::Parse(s.to_string()));
        }
        terms.push((sign, &compact[start..]));

        let mut acc = Self::zero();
        for (sgn, term) in terms {
            let (coeff_str, radical) = if let Some(rest) = term.strip_suffix("r10") {
                (rest.strip_suffix('*').unwrap_or(rest), 3)
            } else if let Some(rest) = term.strip_suffix("r5") {
                (rest.strip_suffix('*').unwrap_or(rest), 2)
            } else if let Some(rest) = term.strip_suffix("r2") {
                (rest.strip_suffix('*').unwrap_or(rest), 1)
            } else {
                (term, 0)
            };
            let coeff = if coeff_str.is_empty() {
                Rational::one()
            } else {
                parse_rational(coeff_str).ok_or_else(|| ScalarError::Parse(s.to_string()))?
            };
            let coeff = coeff * Rational::from(BigInt::from(sgn));
            let zero = Rational::zero();
            let part = match radical {
                0 => Self::from_components(&coeff, &zero, &zero, &zero),
                1 => Self::from_components(&zero, &coeff, &zero, &zero),
                2 => Self::from_components(&zero, &zero, &coeff, &zero),
                _ => Self::from_components(&zero, &zero, &zero, &coeff),
            };
            acc = acc.add_impl(&part);
        }
        Ok(acc)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rational::from(n))
        }
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Scalar for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add_impl(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub_impl(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg_impl()
    }
    fn inverse(&self) -> Option<Self> {
        ExactScalar::inverse(self).ok()
    }
    fn from_exact(x: &ExactScalar) -> Self {
        x.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn es(a: i64, b: i64, c: i64, d: i64, den: i64) -> ExactScalar {
        ExactScalar::from_basis(a, b, c, d, den)
    }

    #[test]
    fn tau_squared_is_tau_plus_one() {
        let tau = ExactScalar::tau();
        assert_eq!(&tau * &tau, &tau + &ExactScalar::one());
        assert_eq!(&tau * &tau, es(3, 0, 1, 0, 2));
    }

    #[test]
    fn basis_products() {
        assert_eq!(
            &ExactScalar::sqrt2() * &ExactScalar::sqrt5(),
            ExactScalar::sqrt10()
        );
        assert_eq!(
            &ExactScalar::sqrt2() * &ExactScalar::sqrt10(),
            es(0, 0, 2, 0, 1)
        );
        assert_eq!(
            &ExactScalar::sqrt5() * &ExactScalar::sqrt10(),
            es(0, 5, 0, 0, 1)
        );
    }

    #[test]
    fn inverses() {
        // 1/sqrt2 = sqrt2/2
        assert_eq!(
            ExactScalar::sqrt2().inverse().unwrap(),
            es(0, 1, 0, 0, 2)
        );
        // tau^-1 = tau - 1
        assert_eq!(
            ExactScalar::tau().inverse().unwrap(),
            &ExactScalar::tau() - &ExactScalar::one()
        );
        // (1 + sqrt2)^-1 = sqrt2 - 1
        assert_eq!(es(1, 1, 0, 0, 1).inverse().unwrap(), es(-1, 1, 0, 0, 1));
        // sqrt10^-1 = sqrt10/10
        assert_eq!(
            ExactScalar::sqrt10().inverse().unwrap(),
            es(0, 0, 0, 1, 10)
        );
        assert_eq!(
            ExactScalar::zero().inverse(),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn signs() {
        assert_eq!(ExactScalar::zero().sign(), 0);
        assert_eq!((&ExactScalar::tau() - &ExactScalar::one()).sign(), 1);
        assert_eq!((&ExactScalar::from_int(3) - &ExactScalar::sqrt10()).sign(), -1);
        assert_eq!((&ExactScalar::sqrt10() - &ExactScalar::from_int(3)).sign(), 1);
        // sqrt2 + sqrt5 - sqrt10 ~ 0.488
        assert_eq!(es(0, 1, 1, -1, 1).sign(), 1);
        // 1 + sqrt2 + sqrt5 - 2 sqrt10 ~ -1.674
        assert_eq!(es(1, 1, 1, -2, 1).sign(), -1);
    }

    #[test]
    fn rounded_floats() {
        assert_eq!(ExactScalar::tau().to_f64(), 1.618033988749895);
        assert_eq!(es(0, 1, 0, 0, 2).to_f64(), 0.7071067811865476);
        assert_eq!(es(-22, 0, 0, 0, 243).to_f64(), -22.0 / 243.0);
        assert_eq!(ExactScalar::sqrt10().to_f64(), 10f64.sqrt());
    }

    #[test]
    fn sqrt_in_quadratic_subfields() {
        assert_eq!(es(1, 0, 0, 0, 2).sqrt(), Some(es(0, 1, 0, 0, 2)));
        assert_eq!(es(9, 0, 0, 0, 4).sqrt(), Some(es(3, 0, 0, 0, 2)));
        // 3 + 2 sqrt2 = (1 + sqrt2)^2
        assert_eq!(es(3, 2, 0, 0, 1).sqrt(), Some(es(1, 1, 0, 0, 1)));
        // tau^2
        assert_eq!(es(3, 0, 1, 0, 2).sqrt(), Some(ExactScalar::tau()));
        // (5 - sqrt5)/8 is a square only outside the field
        assert_eq!(es(5, 0, -1, 0, 8).sqrt(), None);
        assert_eq!(es(-1, 0, 0, 0, 1).sqrt(), None);
        // 7 + 2 sqrt10 = (sqrt2 + sqrt5)^2
        assert_eq!(es(7, 0, 0, 2, 1).sqrt(), Some(es(0, 1, 1, 0, 1)));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let samples = [
            ExactScalar::zero(),
            ExactScalar::tau(),
            es(-22, 0, 0, 0, 243),
            es(1, -1, 2, -3, 6),
            es(0, 0, 0, 1, 10),
        ];
        for x in samples {
            let text = x.to_string();
            let back: ExactScalar = text.parse().unwrap();
            assert_eq!(back, x, "round trip through {text:?}");
        }
        assert_eq!(ExactScalar::tau().to_string(), "1/2 + 1/2*r5");
        assert_eq!(es(-1, 0, 0, 0, 4).to_string(), "-1/4");
        let parsed: ExactScalar = "-22/243".parse().unwrap();
        assert_eq!(parsed, es(-22, 0, 0, 0, 243));
    }

    #[test]
    fn ordering_follows_embedding() {
        let mut vals = vec![
            es(3, 0, 0, 0, 2),    // 1.5
            ExactScalar::sqrt2(), // 1.414
            ExactScalar::tau(),   // 1.618
            es(-1, 0, 0, 0, 1),
        ];
        vals.sort();
        let floats: Vec<f64> = vals.iter().map(|v| v.to_f64()).collect();
        for pair in floats.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }
}
