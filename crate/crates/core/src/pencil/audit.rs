//! Completeness audits for the singular-member tables.
//!
//! Along a fix line, the pencil map restricts to (s : q^(n/2)) whose
//! essential ramification is the degree-n Wronskian W = s_u q_v - s_v q_u.
//! Every zero of W must be accounted for by a certified singular point or
//! by the base quadratic factor; a zero-degree remainder proves no singular
//! member was missed on that line. The base locus itself is certified per
//! ruling through the tensor identification of the quadric.

use serde::Serialize;

use super::binform::{restrict_to_line, BinaryForm};
use super::{Pencil, SingularMember};
use crate::fixlines::FixLineClass;
use crate::poly::MultiPoly;
use crate::projective::{ProjLine, ProjPoint};
use crate::scalar::{ComplexScalar, ExactScalar};

/// One accounted linear factor of the Wronskian.
#[derive(Clone, Debug, Serialize)]
pub struct PointFactor {
    pub point: ProjPoint<ExactScalar>,
    pub lambda: ExactScalar,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WronskianAudit {
    pub line: ProjLine<ExactScalar>,
    pub wronskian_degree: usize,
    pub point_factors: Vec<PointFactor>,
    /// Number of base-locus points on the line (degree of gcd(s, q): 0 or 2).
    pub base_point_count: usize,
    /// Power of the base quadratic dividing the Wronskian.
    pub base_factor_power: usize,
    /// Multiplicity of the base quadratic inside the restriction of S_n;
    /// must equal `base_factor_power`.
    pub base_multiplicity_in_s: usize,
    /// Degree left after dividing out every certified factor; 0 proves
    /// completeness.
    pub remainder_degree: usize,
    pub singular_points_on_line: usize,
    /// n if the line avoids the base locus, n - 2 otherwise.
    pub max_allowed_points: usize,
    pub pass: bool,
}

/// Audit one fix line against the certified singular members.
pub fn wronskian_audit(
    pencil: &Pencil,
    line: &ProjLine<ExactScalar>,
    members: &[SingularMember],
) -> WronskianAudit {
    let s = restrict_to_line(&pencil.s, line);
    let q = restrict_to_line(&MultiPoly::quadric(), line);
    let mut w = BinaryForm::wronskian(&s, &q);
    let wronskian_degree = w.formal_degree();

    let mut point_factors = Vec::new();
    let mut all_points_ramify = true;
    for member in members {
        for pt in &member.orbit {
            let Some((u0, v0)) = line.parameter_of(pt) else {
                continue;
            };
            let linear = BinaryForm::from_coeffs(vec![-&u0, v0.clone()]);
            let (multiplicity, rest) = w.factor_multiplicity(&linear);
            if multiplicity == 0 {
                all_points_ramify = false;
            }
            w = rest;
            point_factors.push(PointFactor {
                point: pt.clone(),
                lambda: member.lambda.clone(),
                multiplicity,
            });
        }
    }

    let base_gcd = s.gcd(&q);
    let base_point_count = base_gcd.formal_degree();
    let (base_factor_power, rest) = w.factor_multiplicity(&q);
    w = rest;
    let base_multiplicity_in_s = s.factor_multiplicity(&q).0;

    let singular_points_on_line = point_factors.len();
    let max_allowed_points = if base_point_count > 0 {
        pencil.n - 2
    } else {
        pencil.n
    };
    let remainder_degree = w.formal_degree();
    let pass = remainder_degree == 0
        && !w.is_zero()
        && all_points_ramify
        && base_factor_power == base_multiplicity_in_s
        && singular_points_on_line <= max_allowed_points;
    WronskianAudit {
        line: line.clone(),
        wronskian_degree,
        point_factors,
        base_point_count,
        base_factor_power,
        base_multiplicity_in_s,
        remainder_degree,
        singular_points_on_line,
        max_allowed_points,
        pass,
    }
}

/// Audit one representative line per fix-line family; by the one-orbit
/// property every other line of the family carries the equivalent picture.
pub fn audit_families(
    pencil: &Pencil,
    families: &[FixLineClass],
    members: &[SingularMember],
) -> Vec<WronskianAudit> {
    families
        .iter()
        .map(|family| wronskian_audit(pencil, &family.lines[0], members))
        .collect()
}

/// Bihomogeneous polynomial in ((v1 : v2), (w1 : w2)) over the complexified
/// field; `coeffs[i][j]` holds v1^i v2^(dv-i) w1^j w2^(dw-j).
struct BiPoly {
    coeffs: Vec<Vec<ComplexScalar>>,
}

impl BiPoly {
    fn constant(c: ComplexScalar) -> Self {
        Self {
            coeffs: vec![vec![c]],
        }
    }

    fn deg_v(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn deg_w(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    fn mul(&self, rhs: &Self) -> Self {
        let dv = self.deg_v() + rhs.deg_v();
        let dw = self.deg_w() + rhs.deg_w();
        let mut out = vec![vec![ComplexScalar::zero(); dw + 1]; dv + 1];
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, rrow) in rhs.coeffs.iter().enumerate() {
                    for (l, b) in rrow.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        out[i + k][j + l] = &out[i + k][j + l] + &(a * b);
                    }
                }
            }
        }
        Self { coeffs: out }
    }

    fn add_assign(&mut self, rhs: &Self) {
        assert_eq!(self.deg_v(), rhs.deg_v());
        assert_eq!(self.deg_w(), rhs.deg_w());
        for (row, rrow) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            for (a, b) in row.iter_mut().zip(rrow) {
                *a = &*a + b;
            }
        }
    }

    fn zero(dv: usize, dw: usize) -> Self {
        Self {
            coeffs: vec![vec![ComplexScalar::zero(); dw + 1]; dv + 1],
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_zero())
    }
}

/// The coordinates of a simple tensor v (x) w under the identification of
/// P3 with 2x2 matrices: each x_k is bilinear in (v, w).
fn tensor_coordinates() -> [BiPoly; 4] {
    let half = ComplexScalar::from_real(ExactScalar::rational(1, 2));
    let neg_half = ComplexScalar::from_real(ExactScalar::rational(-1, 2));
    // -i/2 and +i/2
    let half_over_i = ComplexScalar::new(ExactScalar::zero(), ExactScalar::rational(-1, 2));
    let neg_half_over_i = ComplexScalar::new(ExactScalar::zero(), ExactScalar::rational(1, 2));
    let make = |c11: &ComplexScalar, c00: &ComplexScalar, c10: &ComplexScalar, c01: &ComplexScalar| {
        // indices: [v1 power][w1 power]
        BiPoly {
            coeffs: vec![
                vec![c00.clone(), c01.clone()],
                vec![c10.clone(), c11.clone()],
            ],
        }
    };
    let zero = ComplexScalar::zero();
    [
        // x0 = (v1 w1 + v2 w2) / 2
        make(&half, &half, &zero, &zero),
        // x1 = (v1 w1 - v2 w2) / (2i)
        make(&half_over_i, &neg_half_over_i, &zero, &zero),
        // x2 = (v1 w2 - v2 w1) / 2
        make(&zero, &zero, &neg_half, &half),
        // x3 = (v1 w2 + v2 w1) / (2i)
        make(&zero, &zero, &half_over_i, &half_over_i),
    ]
}

/// Substitute the tensor coordinates into a degree-n invariant.
fn tensor_substitution(p: &MultiPoly<ExactScalar>, n: usize) -> BiPoly {
    let xs = tensor_coordinates();
    let mut powers: [Vec<BiPoly>; 4] = std::array::from_fn(|k| {
        vec![
            BiPoly::constant(ComplexScalar::one()),
            BiPoly {
                coeffs: xs[k].coeffs.clone(),
            },
        ]
    });
    let power = |cache: &mut Vec<BiPoly>, k: usize| -> BiPoly {
        while cache.len() <= k {
            let next = cache.last().unwrap().mul(&cache[1]);
            cache.push(next);
        }
        BiPoly {
            coeffs: cache[k].coeffs.clone(),
        }
    };
    let mut acc = BiPoly::zero(n, n);
    for (mono, coeff) in p.terms() {
        let mut term = BiPoly::constant(ComplexScalar::from_real(coeff.clone()));
        for k in 0..4 {
            if mono[k] > 0 {
                term = term.mul(&power(&mut powers[k], mono[k] as usize));
            }
        }
        acc.add_assign(&term);
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct RulingBaseReport {
    /// Degree of the gcd of the coefficient forms: the number of lines of
    /// this ruling inside the base locus.
    pub gcd_degree: usize,
    /// No repeated line (reducedness).
    pub squarefree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseLocusReport {
    pub n: usize,
    pub rulings: [RulingBaseReport; 2],
    pub lines_total: usize,
    pub reduced: bool,
    pub pass: bool,
}

/// Certify that the base locus of the pencil splits into 2n distinct lines,
/// n per ruling of the quadric.
///
/// A ruling line with parameter v consists of the simple tensors v (x) w;
/// the restriction of S_n is a binary form in w whose n+1 coefficients are
/// exact forms in v. Their gcd G(v) cuts out the ruling lines inside S_n:
/// degree n and squarefreeness certify the count and reducedness.
pub fn base_locus(pencil: &Pencil) -> BaseLocusReport {
    let n = pencil.n;
    // sanity: the quadric vanishes identically on simple tensors
    debug_assert!(tensor_substitution(&MultiPoly::quadric(), 2).is_zero());
    let sub = tensor_substitution(&pencil.s, n);
    let mut reports = Vec::with_capacity(2);
    for ruling in 0..2 {
        let forms: Vec<BinaryForm<ComplexScalar>> = (0..=n)
            .map(|j| {
                let coeffs: Vec<ComplexScalar> = (0..=n)
                    .map(|i| {
                        if ruling == 0 {
                            sub.coeffs[i][j].clone()
                        } else {
                            sub.coeffs[j][i].clone()
                        }
                    })
                    .collect();
                BinaryForm::from_coeffs(coeffs)
            })
            .collect();
        let mut gcd: Option<BinaryForm<ComplexScalar>> = None;
        for f in forms {
            if f.is_zero() {
                continue;
            }
            gcd = Some(match gcd {
                None => f,
                Some(g) => g.gcd(&f),
            });
        }
        let gcd = gcd.expect("S_n does not contain the quadric");
        reports.push(RulingBaseReport {
            gcd_degree: gcd.formal_degree(),
            squarefree: gcd.is_squarefree(),
        });
    }
    let rulings: [RulingBaseReport; 2] = [reports[0].clone(), reports[1].clone()];
    let lines_total = rulings[0].gcd_degree + rulings[1].gcd_degree;
    let reduced = rulings[0].squarefree && rulings[1].squarefree;
    let pass = rulings.iter().all(|r| r.gcd_degree == n) && reduced;
    BaseLocusReport {
        n,
        rulings,
        lines_total,
        reduced,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixlines::fix_lines;
    use crate::pencil::singular_orbits;

    #[test]
    fn sigma24_line_audit_for_degree_6() {
        let p6 = Pencil::new(6);
        let members = singular_orbits(&p6).unwrap();
        let line = ProjLine::from_int_span([1, 0, 0, 0], [0, 0, 1, 0]).unwrap();
        let audit = wronskian_audit(&p6, &line, &members);
        assert!(audit.pass, "{audit:?}");
        assert_eq!(audit.wronskian_degree, 6);
        assert_eq!(audit.singular_points_on_line, 4);
        assert_eq!(audit.base_point_count, 2);
        assert_eq!(audit.base_factor_power, 1);
        assert_eq!(audit.max_allowed_points, 4);
        assert!(audit.point_factors.iter().all(|f| f.multiplicity == 1));
        // two points each on the members lambda = -1 and lambda = -1/4
        let mut lambdas: Vec<ExactScalar> =
            audit.point_factors.iter().map(|f| f.lambda.clone()).collect();
        lambdas.sort();
        assert_eq!(
            lambdas,
            vec![
                ExactScalar::from_int(-1),
                ExactScalar::from_int(-1),
                ExactScalar::rational(-1, 4),
                ExactScalar::rational(-1, 4),
            ]
        );
    }

    #[test]
    fn all_degree_6_families_audit_clean() {
        let p6 = Pencil::new(6);
        let members = singular_orbits(&p6).unwrap();
        let families = fix_lines(p6.group);
        for audit in audit_families(&p6, &families, &members) {
            assert!(audit.pass, "{audit:?}");
        }
    }

    #[test]
    fn base_locus_of_degree_6() {
        let p6 = Pencil::new(6);
        let report = base_locus(&p6);
        assert!(report.pass, "{report:?}");
        assert_eq!(report.lines_total, 12);
        assert!(report.reduced);
    }
}
