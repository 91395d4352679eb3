//! The invariant pencils F_n(lambda): S_n + lambda * Q^(n/2) for
//! n = 6, 8, 12: singular members and their node certification, base locus,
//! ramification audits along fix lines, incidence configurations and the
//! counting bounds.

mod audit;
mod binform;

pub use audit::{
    audit_families, base_locus, wronskian_audit, BaseLocusReport, RulingBaseReport, WronskianAudit,
};
pub use binform::{restrict_to_line, BinaryForm};

use serde::Serialize;
use thiserror::Error;

use crate::fixlines::FixLineClass;
use crate::groups::{GroupName, PolyGroup};
use crate::invariants::explicit_invariants;
use crate::poly::MultiPoly;
use crate::projective::ProjPoint;
use crate::scalar::{ComplexScalar, ExactScalar};

#[derive(Debug, Error)]
pub enum PencilError {
    #[error("point lies on the quadric; no pencil member is singular there")]
    PointOnQuadric,
    #[error("seed {seed} is not a singular point of its member: {detail}")]
    SeedNotSingular { seed: String, detail: String },
    #[error("seeds on the member with lambda = {lambda} split into several orbits")]
    OrbitNotFused { lambda: String },
}

/// Projective member (a : b) of the pencil, the surface a*S_n + b*Q^(n/2).
/// Canonical form: a = 1 when a != 0, otherwise (0 : 1), the multiple
/// quadric.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PencilMember {
    a: ExactScalar,
    b: ExactScalar,
}

impl PencilMember {
    pub fn new(a: ExactScalar, b: ExactScalar) -> Option<Self> {
        if a.is_zero() && b.is_zero() {
            return None;
        }
        if a.is_zero() {
            return Some(Self {
                a,
                b: ExactScalar::one(),
            });
        }
        let inv = a.inverse().expect("nonzero");
        Some(Self {
            a: ExactScalar::one(),
            b: &b * &inv,
        })
    }

    pub fn from_lambda(lambda: ExactScalar) -> Self {
        Self {
            a: ExactScalar::one(),
            b: lambda,
        }
    }

    /// The multiple quadric (0 : 1).
    pub fn multiple_quadric() -> Self {
        Self {
            a: ExactScalar::zero(),
            b: ExactScalar::one(),
        }
    }

    pub fn is_multiple_quadric(&self) -> bool {
        self.a.is_zero()
    }

    /// lambda = b/a; `None` for the multiple quadric.
    pub fn lambda(&self) -> Option<&ExactScalar> {
        (!self.is_multiple_quadric()).then_some(&self.b)
    }
}

/// One pencil S_n + lambda * Q^(n/2) with its symmetry group.
pub struct Pencil {
    pub n: usize,
    pub group: &'static PolyGroup,
    pub s: MultiPoly<ExactScalar>,
    pub q_power: MultiPoly<ExactScalar>,
}

impl Pencil {
    pub fn new(n: usize) -> Self {
        let inv = explicit_invariants();
        let group = match n {
            6 => PolyGroup::cached(GroupName::G6),
            8 => PolyGroup::cached(GroupName::G8),
            12 => PolyGroup::cached(GroupName::G12),
            _ => panic!("no pencil of degree {n}"),
        };
        Pencil {
            n,
            group,
            s: inv.s_polynomial(n).clone(),
            q_power: inv.q.pow(n / 2),
        }
    }

    /// Defining polynomial of a member.
    pub fn member_polynomial(&self, member: &PencilMember) -> MultiPoly<ExactScalar> {
        self.s.scale(&member.a).add(&self.q_power.scale(&member.b))
    }

    /// The member through a point: lambda = -S_n(p) / Q^(n/2)(p).
    ///
    /// Real points never lie on the complex quadric, so the error arm is
    /// reachable only through the complex variant.
    pub fn member_through(&self, pt: &ProjPoint<ExactScalar>) -> Result<PencilMember, PencilError> {
        let qv = self.q_power.evaluate(pt.coords());
        if qv.is_zero() {
            return Err(PencilError::PointOnQuadric);
        }
        let sv = self.s.evaluate(pt.coords());
        Ok(PencilMember::from_lambda(-&(&sv * &qv.inverse().expect("nonzero"))))
    }

    /// Complex variant of `member_through`; (a : b) over the complexified
    /// field.
    pub fn member_through_complex(
        &self,
        pt: &ProjPoint<ComplexScalar>,
    ) -> Result<(ComplexScalar, ComplexScalar), PencilError> {
        let qv = self.q_power.to_complex().evaluate(pt.coords());
        if qv.is_zero() {
            return Err(PencilError::PointOnQuadric);
        }
        let sv = self.s.to_complex().evaluate(pt.coords());
        Ok((ComplexScalar::one(), -&(&sv * &qv.inverse().expect("nonzero"))))
    }
}

/// A seed point with the polytope feature it came from.
#[derive(Clone, Debug)]
pub struct Seed {
    pub point: ProjPoint<ExactScalar>,
    pub provenance: &'static str,
}

/// The seed coordinates: vertices and edge midpoints of the relevant
/// regular 4-polytopes (and, for n = 8, the midpoints of segments joining
/// the 24-cell to its reciprocal).
pub fn seed_points(n: usize) -> Vec<Seed> {
    let e = ExactScalar::from_int;
    let r2 = ExactScalar::sqrt2;
    let tau = ExactScalar::tau;
    let pt = |coords: [ExactScalar; 4]| ProjPoint::new(coords).expect("nonzero seed");
    match n {
        6 => vec![
            Seed {
                point: ProjPoint::from_ints([1, 1, 0, 0]),
                provenance: "vertex of {3,4,3}",
            },
            Seed {
                point: ProjPoint::from_ints([1, 0, 0, 0]),
                provenance: "vertex of {3,4,3}'",
            },
            Seed {
                point: ProjPoint::from_ints([1, 1, 1, 1]),
                provenance: "vertex of {3,4,3}'",
            },
            Seed {
                point: ProjPoint::from_ints([2, 1, 1, 0]),
                provenance: "edge midpoint of {3,4,3}",
            },
            Seed {
                point: ProjPoint::from_ints([3, 1, 1, 1]),
                provenance: "edge midpoint of {3,4,3}'",
            },
        ],
        8 => vec![
            Seed {
                point: ProjPoint::from_ints([1, 1, 0, 0]),
                provenance: "vertex of {3,4,3}",
            },
            Seed {
                point: ProjPoint::from_ints([1, 0, 0, 0]),
                provenance: "vertex of {3,4,3}'",
            },
            Seed {
                point: pt([&e(1) + &r2(), e(1), e(0), e(0)]),
                provenance: "midpoint family (1): {3,4,3} to {3,4,3}' segments",
            },
            Seed {
                point: pt([&e(2) + &r2(), &e(2) + &r2(), r2(), r2()]),
                provenance: "midpoint family (2): {3,4,3} to {3,4,3}' segments",
            },
            Seed {
                point: pt([e(1), e(1), r2(), e(0)]),
                provenance: "midpoint family (3): {3,4,3} to {3,4,3}' segments",
            },
            Seed {
                point: pt([&e(2) + &r2(), &e(2) - &r2(), r2(), r2()]),
                provenance: "midpoint family (4): {3,4,3} to {3,4,3}' segments",
            },
            Seed {
                point: ProjPoint::from_ints([2, 1, 1, 0]),
                provenance: "edge midpoint of {3,4,3}",
            },
            Seed {
                point: ProjPoint::from_ints([3, 1, 1, 1]),
                provenance: "edge midpoint of {3,4,3}'",
            },
        ],
        12 => vec![
            Seed {
                point: ProjPoint::from_ints([1, 1, 0, 0]),
                provenance: "vertex of {5,3,3}",
            },
            Seed {
                point: pt([e(0), &tau() * &tau(), e(1), e(0)]),
                provenance: "edge midpoint of {5,3,3}",
            },
            Seed {
                point: pt([e(1), tau(), e(0), e(0)]),
                provenance: "edge midpoint of {3,3,5}",
            },
            Seed {
                point: ProjPoint::from_ints([1, 0, 0, 0]),
                provenance: "vertex of {3,3,5}",
            },
        ],
        _ => panic!("no pencil of degree {n}"),
    }
}

/// A certified singular member: lambda value, full orbit of singular
/// points, Hessian rank and node flag.
#[derive(Clone, Debug)]
pub struct SingularMember {
    pub member: PencilMember,
    pub lambda: ExactScalar,
    pub orbit: Vec<ProjPoint<ExactScalar>>,
    pub representative: ProjPoint<ExactScalar>,
    pub hessian_rank: usize,
    pub all_nodes: bool,
    pub seeds: Vec<&'static str>,
}

impl SingularMember {
    pub fn orbit_size(&self) -> usize {
        self.orbit.len()
    }
}

/// Certification data for one point on one member.
#[derive(Clone, Debug, Serialize)]
pub struct NodeCertificate {
    pub gradient_zero: bool,
    pub hessian_rank: usize,
    pub is_node: bool,
}

/// Exact node test: gradient must vanish and the Hessian must have rank 3.
pub fn certify_node(
    pencil: &Pencil,
    member: &PencilMember,
    pt: &ProjPoint<ExactScalar>,
) -> NodeCertificate {
    let f = pencil.member_polynomial(member);
    let gradient_zero = f
        .gradient()
        .iter()
        .all(|g| g.evaluate(pt.coords()).is_zero());
    let hessian_rank = f.hessian_at(pt.coords()).rank();
    NodeCertificate {
        gradient_zero,
        hessian_rank,
        is_node: gradient_zero && hessian_rank == 3,
    }
}

/// Find the singular members from the seed points: orbit-close each seed,
/// check the gradient vanishes exactly at every orbit point, certify the
/// Hessian rank at the representative (and spot-check three more orbit
/// points). Members are reported in increasing lambda order.
pub fn singular_orbits(pencil: &Pencil) -> Result<Vec<SingularMember>, PencilError> {
    use std::collections::BTreeMap;
    let mut buckets: BTreeMap<ExactScalar, Vec<Seed>> = BTreeMap::new();
    for seed in seed_points(pencil.n) {
        let member = pencil.member_through(&seed.point)?;
        let lambda = member.lambda().expect("seed member is not the quadric").clone();
        buckets.entry(lambda).or_default().push(seed);
    }
    let mut out = Vec::new();
    for (lambda, seeds) in buckets {
        let member = PencilMember::from_lambda(lambda.clone());
        let f = pencil.member_polynomial(&member);
        let gradient = f.gradient();
        let orbit = pencil.group.orbit(&seeds[0].point);
        for seed in &seeds[1..] {
            if orbit.binary_search(&seed.point).is_err() {
                return Err(PencilError::OrbitNotFused {
                    lambda: lambda.to_string(),
                });
            }
        }
        // exact gradient check at every orbit point, not just the seed
        use rayon::prelude::*;
        let offender = orbit
            .par_iter()
            .find_first(|pt| !gradient.iter().all(|g| g.evaluate(pt.coords()).is_zero()));
        if let Some(pt) = offender {
            return Err(PencilError::SeedNotSingular {
                seed: pt.to_string(),
                detail: format!("gradient nonzero on member lambda = {lambda}"),
            });
        }
        let representative = orbit[0].clone();
        let mut ranks = vec![f.hessian_at(representative.coords()).rank()];
        for k in [orbit.len() / 3, 2 * orbit.len() / 3, orbit.len() - 1] {
            ranks.push(f.hessian_at(orbit[k].coords()).rank());
        }
        let hessian_rank = ranks[0];
        let all_nodes = ranks.iter().all(|&r| r == 3);
        out.push(SingularMember {
            member,
            lambda,
            orbit,
            representative,
            hessian_rank,
            all_nodes,
            seeds: seeds.iter().map(|s| s.provenance).collect(),
        });
    }
    Ok(out)
}

/// Incidence configuration of one fix-line family with the singular points
/// of one member: l lines with pi points each, p points on lambda lines
/// each, p*lambda = l*pi.
#[derive(Clone, Debug, Serialize)]
pub struct ConfigurationReport {
    pub family: usize,
    pub lambda: ExactScalar,
    pub points: usize,
    pub lines_per_point: usize,
    pub lines: usize,
    pub points_per_line: usize,
}

/// Exact incidence counts for every (fix-line family, singular member)
/// pair with nonzero incidence. Uniformity across the orbits and the
/// product identity are asserted.
pub fn configurations(
    families: &[FixLineClass],
    members: &[SingularMember],
) -> Vec<ConfigurationReport> {
    let mut out = Vec::new();
    for (fi, family) in families.iter().enumerate() {
        for member in members {
            let mut per_line = Vec::with_capacity(family.lines.len());
            let mut per_point = vec![0usize; member.orbit.len()];
            for line in &family.lines {
                let mut count = 0;
                for (pi, pt) in member.orbit.iter().enumerate() {
                    if line.contains(pt) {
                        count += 1;
                        per_point[pi] += 1;
                    }
                }
                per_line.push(count);
            }
            let total: usize = per_line.iter().sum();
            if total == 0 {
                continue;
            }
            let pi = per_line[0];
            assert!(
                per_line.iter().all(|&c| c == pi),
                "line orbit must have uniform incidence"
            );
            let lam = per_point[0];
            assert!(
                per_point.iter().all(|&c| c == lam),
                "point orbit must have uniform incidence"
            );
            assert_eq!(member.orbit.len() * lam, family.lines.len() * pi);
            out.push(ConfigurationReport {
                family: fi,
                lambda: member.lambda.clone(),
                points: member.orbit.len(),
                lines_per_point: lam,
                lines: family.lines.len(),
                points_per_line: pi,
            });
        }
    }
    out
}

/// The counting bounds: the naive singular-point bound (n/2)(n-1)^2, the
/// generic orbit length (certified by closing an actual generic point),
/// and for n = 12 the node-count context line.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub naive_bound: usize,
    pub generic_orbit: usize,
    pub context: Option<String>,
}

pub fn bound_report(pencil: &Pencil) -> BoundReport {
    let n = pencil.n;
    let generic = ProjPoint::from_ints([1, 2, 3, 5]);
    let orbit = pencil.group.orbit(&generic);
    assert_eq!(
        orbit.len() * 2,
        pencil.group.order(),
        "(1:2:3:5) must be generic"
    );
    BoundReport {
        n,
        naive_bound: n / 2 * (n - 1) * (n - 1),
        generic_orbit: orbit.len(),
        context: (n == 12).then(|| "600 <= mu(12) <= 645".to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn members_through_reference_points() {
        let p6 = Pencil::new(6);
        let lambda_of = |p: &Pencil, pt: ProjPoint<ExactScalar>| {
            p.member_through(&pt).unwrap().lambda().unwrap().clone()
        };
        assert_eq!(
            lambda_of(&p6, ProjPoint::from_ints([1, 0, 0, 0])),
            ExactScalar::from_int(-1)
        );
        assert_eq!(
            lambda_of(&p6, ProjPoint::from_ints([1, 0, 1, 0])),
            ExactScalar::rational(-1, 4)
        );
        let p12 = Pencil::new(12);
        assert_eq!(
            lambda_of(&p12, ProjPoint::from_ints([1, 0, 0, 0])),
            ExactScalar::zero()
        );
    }

    #[test]
    fn quadric_point_is_rejected() {
        let p6 = Pencil::new(6);
        let witness = ProjPoint::new([
            ComplexScalar::new(ExactScalar::zero(), ExactScalar::sqrt2()),
            ComplexScalar::one(),
            ComplexScalar::one(),
            ComplexScalar::zero(),
        ])
        .unwrap();
        assert!(matches!(
            p6.member_through_complex(&witness),
            Err(PencilError::PointOnQuadric)
        ));
    }

    #[test]
    fn seed_lambdas_for_degree_12() {
        let p12 = Pencil::new(12);
        let expected = [
            ("vertex of {5,3,3}", ExactScalar::rational(-3, 32)),
            ("edge midpoint of {5,3,3}", ExactScalar::rational(-22, 243)),
            ("edge midpoint of {3,3,5}", ExactScalar::rational(-2, 25)),
            ("vertex of {3,3,5}", ExactScalar::zero()),
        ];
        for seed in seed_points(12) {
            let lambda = p12
                .member_through(&seed.point)
                .unwrap()
                .lambda()
                .unwrap()
                .clone();
            let want = expected
                .iter()
                .find(|(p, _)| *p == seed.provenance)
                .map(|(_, l)| l.clone())
                .unwrap();
            assert_eq!(lambda, want, "seed {}", seed.provenance);
        }
    }

    #[test]
    fn degree_6_singular_members() {
        let p6 = Pencil::new(6);
        let members = singular_orbits(&p6).unwrap();
        let table: Vec<(ExactScalar, usize)> = members
            .iter()
            .map(|m| (m.lambda.clone(), m.orbit_size()))
            .collect();
        assert_eq!(
            table,
            vec![
                (ExactScalar::from_int(-1), 12),
                (ExactScalar::rational(-2, 3), 48),
                (ExactScalar::rational(-7, 12), 48),
                (ExactScalar::rational(-1, 4), 12),
            ]
        );
        for m in &members {
            assert!(m.all_nodes);
            assert_eq!(m.hessian_rank, 3);
        }
    }

    #[test]
    fn smooth_member_has_no_singular_generic_point() {
        let p6 = Pencil::new(6);
        let member = PencilMember::from_lambda(ExactScalar::one());
        let cert = certify_node(&p6, &member, &ProjPoint::from_ints([1, 2, 3, 5]));
        assert!(!cert.gradient_zero);
        assert!(!cert.is_node);
    }

    #[test]
    fn node_certificates_at_reference_points() {
        let p6 = Pencil::new(6);
        let member = PencilMember::from_lambda(ExactScalar::from_int(-1));
        let cert = certify_node(&p6, &member, &ProjPoint::from_ints([1, 0, 0, 0]));
        assert!(cert.gradient_zero);
        assert_eq!(cert.hessian_rank, 3);
        assert!(cert.is_node);
    }

    #[test]
    fn bounds_for_degree_6() {
        let p6 = Pencil::new(6);
        let report = bound_report(&p6);
        assert_eq!(report.naive_bound, 75);
        assert_eq!(report.generic_orbit, 144);
        assert_eq!(report.context, None);
    }
}
