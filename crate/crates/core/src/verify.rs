//! Cross-checks of every computed object against the reference tables in
//! [`crate::golden`]. The acceptance suite and the CLI `all` subcommand
//! both run through these.

use serde::Serialize;

use crate::fixlines::{fix_lines, line_intersections, line_orbit};
use crate::golden;
use crate::groups::{c_matrix, cprime_matrix, extend_by_matrices, GroupName, PolyGroup};
use crate::groups::reference_matrices;
use crate::invariants::{
    explicit_invariants, in_invariant_space, invariant_dimension, SumConvention,
};
use crate::molien::molien;
use crate::pencil::{
    audit_families, base_locus, bound_report, configurations, singular_orbits, Pencil,
};
use crate::poly::act;
use crate::projective::ProjLine;
use crate::render::{mesh, raster, worst_relative_residual, RenderScene};
use crate::scalar::{ComplexScalar, ExactScalar, Rational};

/// One verification outcome.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn of(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(name: impl Into<String>, got: T, want: T) -> Check {
    let pass = got == want;
    Check {
        name: name.into(),
        pass,
        detail: if pass {
            format!("{got:?}")
        } else {
            format!("got {got:?}, expected {want:?}")
        },
    }
}

/// Group orders and reflection-extension orders.
pub fn verify_orders() -> Vec<Check> {
    let mut checks = Vec::new();
    for (name, order) in golden::GROUP_ORDERS {
        checks.push(expect_eq(
            format!("order of {name}"),
            PolyGroup::cached(name).order(),
            order,
        ));
    }
    for (name, with_cprime, order) in golden::EXTENSION_ORDERS {
        let base = PolyGroup::cached(name);
        let extras = if with_cprime {
            vec![c_matrix(), cprime_matrix()]
        } else {
            vec![c_matrix()]
        };
        let label = if with_cprime {
            format!("order of <{name}, C, C'>")
        } else {
            format!("order of <{name}, C>")
        };
        match extend_by_matrices(base, &extras) {
            Ok(ext) => checks.push(expect_eq(label, ext.order(), order)),
            Err(e) => checks.push(Check::of(label, false, e.to_string())),
        }
    }
    checks
}

/// Every generator's SO(4) matrix must reproduce its reference matrix
/// entry for entry; C and C' must be orthogonal involutions.
pub fn verify_generator_fidelity() -> Vec<Check> {
    let mut checks = Vec::new();
    for name in GroupName::ALL {
        let group = PolyGroup::cached(name);
        for (gen, (ref_name, ref_mat)) in group
            .generators()
            .iter()
            .zip(reference_matrices::for_group(name))
        {
            checks.push(Check::of(
                format!("{name}: matrix of {}", gen.name),
                gen.name == ref_name && gen.element.so4_matrix() == ref_mat,
                "entry-exact against the reference matrix",
            ));
        }
    }
    for (label, m) in [("C", c_matrix()), ("C'", cprime_matrix())] {
        checks.push(Check::of(
            format!("{label} is an orthogonal involution"),
            m.is_orthogonal() && m.mul(&m).is_identity(),
            "",
        ));
    }
    checks
}

/// The four Poincare series through t^14, with odd coefficients zero.
pub fn verify_molien_series() -> Vec<Check> {
    let mut checks = Vec::new();
    for name in GroupName::ALL {
        let series = match molien(PolyGroup::cached(name), 14) {
            Ok(s) => s,
            Err(e) => {
                checks.push(Check::of(format!("molien({name})"), false, e.to_string()));
                continue;
            }
        };
        let coeffs = series.integer_coefficients();
        let even: Vec<u64> = (0..8).map(|k| coeffs[2 * k]).collect();
        checks.push(expect_eq(
            format!("Poincare series of {name} (even degrees 0..14)"),
            even,
            golden::molien_even_coefficients(name).to_vec(),
        ));
        let odd_zero = (0..7).all(|k| coeffs[2 * k + 1] == 0);
        checks.push(Check::of(
            format!("odd coefficients vanish for {name}"),
            odd_zero,
            "",
        ));
    }
    checks
}

/// Invariant dimensions against Molien at every even degree up to 12; the
/// explicit invariants lie in the computed spaces; S8 is fixed by C, C';
/// the witness point separates Q from every S_n.
pub fn verify_invariant_ring() -> Vec<Check> {
    let mut checks = Vec::new();
    for name in GroupName::ALL {
        let group = PolyGroup::cached(name);
        let series = molien(group, 12).expect("integral Molien series");
        for d in (0..=12).step_by(2) {
            let dim = invariant_dimension(group, d);
            let want = series.coefficient(d);
            checks.push(expect_eq(
                format!("dim invariants({name}, degree {d})"),
                Rational::from(num_bigint::BigInt::from(dim as i64)),
                want,
            ));
        }
    }
    let inv = explicit_invariants();
    checks.push(Check::of(
        "summation convention resolved",
        matches!(inv.convention, SumConvention::DistinctMonomials) && !inv.fa_sign_flipped,
        format!(
            "convention {:?}, sign flip {}",
            inv.convention, inv.fa_sign_flipped
        ),
    ));
    for (name, poly, label) in [
        (GroupName::G6, &inv.s6, "S6"),
        (GroupName::G8, &inv.s8, "S8"),
        (GroupName::G12, &inv.s12, "S12"),
    ] {
        checks.push(Check::of(
            format!("{label} lies in the invariant slice of {name}"),
            in_invariant_space(PolyGroup::cached(name), poly),
            "",
        ));
    }
    checks.push(Check::of(
        "S8 fixed by C and C'",
        act(&c_matrix(), &inv.s8) == inv.s8 && act(&cprime_matrix(), &inv.s8) == inv.s8,
        "",
    ));
    // witness point (i sqrt2, 1, 1, 0): on the quadric, off every S_n
    let witness: [ComplexScalar; 4] = [
        ComplexScalar::new(ExactScalar::zero(), ExactScalar::sqrt2()),
        ComplexScalar::one(),
        ComplexScalar::one(),
        ComplexScalar::zero(),
    ];
    let eval = |p: &crate::poly::MultiPoly<ExactScalar>| p.to_complex().evaluate(&witness);
    checks.push(Check::of(
        "witness point: Q = 0, S6, S8, S12 != 0",
        eval(&inv.q).is_zero()
            && !eval(&inv.s6).is_zero()
            && !eval(&inv.s8).is_zero()
            && !eval(&inv.s12).is_zero(),
        "algebraic independence of Q and S_n",
    ));
    checks
}

/// Compare a computed singular-member list against the reference table.
pub fn check_singular_table(n: usize, members: &[crate::pencil::SingularMember]) -> Vec<Check> {
    let mut checks = Vec::new();
    let got: Vec<(ExactScalar, usize)> = members
        .iter()
        .map(|m| (m.lambda.clone(), m.orbit_size()))
        .collect();
    let want: Vec<(ExactScalar, usize)> = golden::singular_table(n)
        .iter()
        .map(|((num, den), orbit)| (ExactScalar::rational(*num, *den), *orbit))
        .collect();
    checks.push(expect_eq(
        format!("singular table of F{n} (lambda, orbit)"),
        got,
        want,
    ));
    for m in members {
        checks.push(Check::of(
            format!("F{n}({}): {} nodes", m.lambda, m.orbit_size()),
            m.hessian_rank == 3 && m.all_nodes,
            format!("Hessian rank {} at representative and spot checks", m.hessian_rank),
        ));
    }
    if n == 12 {
        let six_hundred = members
            .iter()
            .find(|m| m.lambda == ExactScalar::rational(-22, 243))
            .map(|m| m.orbit_size() == 600 && m.all_nodes)
            .unwrap_or(false);
        checks.push(Check::of(
            "F12(-22/243) carries exactly 600 nodes",
            six_hundred,
            golden::MU12_CONTEXT,
        ));
    }
    checks
}

/// Singular-member table of one pencil: lambda values, orbit sizes, exact
/// gradient vanishing (enforced inside `singular_orbits`), Hessian rank 3.
pub fn verify_singular_members(n: usize) -> Vec<Check> {
    let pencil = Pencil::new(n);
    match singular_orbits(&pencil) {
        Ok(members) => check_singular_table(n, &members),
        Err(e) => vec![Check::of(
            format!("singular members of F{n}"),
            false,
            e.to_string(),
        )],
    }
}

/// Fix-line family counts, one-orbit property, reference generators,
/// intersection realness; the G8 mirror pair under C.
pub fn verify_fixlines() -> Vec<Check> {
    let mut checks = Vec::new();
    for name in [GroupName::G6, GroupName::G8, GroupName::G12] {
        let group = PolyGroup::cached(name);
        let families = fix_lines(group);
        let counts: Vec<usize> = families.iter().map(|f| f.line_count()).collect();
        checks.push(expect_eq(
            format!("fix-line families of {name}"),
            counts,
            golden::fixline_counts(name).to_vec(),
        ));
        for family in &families {
            let orbit = line_orbit(&family.lines[0], group);
            checks.push(Check::of(
                format!("{name}: family of {} lines is one orbit", family.line_count()),
                orbit == family.lines,
                "",
            ));
        }
        let all_lines: Vec<ProjLine<ExactScalar>> =
            families.iter().flat_map(|f| f.lines.clone()).collect();
        let (summary, _) = line_intersections(&all_lines);
        checks.push(Check::of(
            format!("{name}: intersection points real and off the quadric"),
            summary.all_real && summary.all_off_quadric,
            format!(
                "{} meeting pairs, {} distinct points",
                summary.meeting_pairs, summary.distinct_points
            ),
        ));
    }
    // reference line generators land in the computed families
    let lines_spanned = reference_fixline_checks();
    checks.extend(lines_spanned);
    // G8: C maps one 36-family onto the other
    let g8 = PolyGroup::cached(GroupName::G8);
    let families = fix_lines(g8);
    let mirrors: Vec<&crate::fixlines::FixLineClass> =
        families.iter().filter(|f| f.line_count() == 36).collect();
    let mirrored = mirrors.len() == 2
        && mirrors[0]
            .lines
            .iter()
            .all(|l| mirrors[1].contains_line(&l.apply(&c_matrix())));
    checks.push(Check::of(
        "G8: C exchanges the two 36-line families",
        mirrored,
        "the paired families are mirror images",
    ));
    checks
}

fn reference_fixline_checks() -> Vec<Check> {
    use crate::groups::{quaternions::*, GroupElement, Quaternion};
    let r2 = ExactScalar::sqrt2;
    let e = ExactScalar::from_int;
    let tau = ExactScalar::tau();
    let line =
        |a: [ExactScalar; 4], b: [ExactScalar; 4]| ProjLine::from_span(a, b).expect("independent");
    // (group, element, printed line)
    let data: Vec<(GroupName, GroupElement, ProjLine<ExactScalar>, &str)> = vec![
        (
            GroupName::G6,
            GroupElement::new(q2(), q2()),
            ProjLine::from_int_span([0, 0, 1, 0], [1, 0, 0, 0]).unwrap(),
            "sigma24 line 1",
        ),
        (
            GroupName::G6,
            GroupElement::new(q2(), q2()),
            ProjLine::from_int_span([0, 0, 0, 1], [0, 1, 0, 0]).unwrap(),
            "sigma24 line 2",
        ),
        (
            GroupName::G6,
            GroupElement::new(p3(), p3()),
            ProjLine::from_int_span([1, 0, 0, 0], [0, 1, -1, 1]).unwrap(),
            "pi3 pi3' line",
        ),
        (
            GroupName::G6,
            GroupElement::new(p3(), p3().mul(&p3())),
            ProjLine::from_int_span([0, 1, 1, 0], [0, -1, 0, 1]).unwrap(),
            "pi3 pi3'^2 line",
        ),
        (
            GroupName::G8,
            GroupElement::new(p3().mul(&p4()), Quaternion::one().mul(&p3()).mul(&p4())),
            ProjLine::from_int_span([1, 0, 0, 0], [0, 1, 0, 1]).unwrap(),
            "pi3 pi4 pi3' pi4' line 1",
        ),
        (
            GroupName::G8,
            GroupElement::new(p3().mul(&p4()), Quaternion::one().mul(&p3()).mul(&p4())),
            ProjLine::from_int_span([0, 1, 0, -1], [0, 0, 1, 0]).unwrap(),
            "pi3 pi4 pi3' pi4' line 2",
        ),
        (
            GroupName::G8,
            GroupElement::new(p3().mul(&p4()), q2()),
            line(
                [e(1), r2(), e(1), e(0)],
                [e(0), e(1), r2(), e(1)],
            ),
            "pi3 pi4 sigma4 line 1",
        ),
        (
            GroupName::G8,
            GroupElement::new(p3().mul(&p4()), q2()),
            line(
                [r2(), e(-1), e(0), e(1)],
                [e(1), -&r2(), e(1), e(0)],
            ),
            "pi3 pi4 sigma4 line 2",
        ),
        (
            GroupName::G12,
            GroupElement::new(p5(), p5()),
            line(
                [e(1), e(0), e(0), e(0)],
                [e(0), e(0), &tau - &e(1), e(1)],
            ),
            "pi5 pi5' line",
        ),
        (
            GroupName::G12,
            GroupElement::new(
                p5().mul(&p5()).mul(&q2()),
                p5().mul(&p5()).mul(&q2()),
            ),
            line(
                [e(1), e(0), e(0), e(0)],
                [e(0), &tau * &tau, e(1), e(0)],
            ),
            "pi5^2 sigma2 pi5'^2 sigma4 line",
        ),
    ];
    let mut checks = Vec::new();
    for (name, element, printed, label) in data {
        let group = PolyGroup::cached(name);
        let families = fix_lines(group);
        let class_of = group.class_of();
        let Some(idx) = group.element_index(&element) else {
            checks.push(Check::of(
                format!("{name}: {label}"),
                false,
                "representative element not in group",
            ));
            continue;
        };
        let target = class_of[idx];
        let family = families
            .iter()
            .find(|f| f.class_reps.iter().any(|&r| class_of[r] == target));
        let pass = family.is_some_and(|f| f.contains_line(&printed));
        checks.push(Check::of(
            format!("{name}: {label} spans a member of its family"),
            pass,
            "",
        ));
    }
    checks
}

/// Compare computed audits and base locus against the completeness
/// contract.
pub fn check_audits(
    n: usize,
    families: &[crate::fixlines::FixLineClass],
    audits: &[crate::pencil::WronskianAudit],
    base: &crate::pencil::BaseLocusReport,
) -> Vec<Check> {
    let mut checks = Vec::new();
    for (family, audit) in families.iter().zip(audits) {
        checks.push(Check::of(
            format!(
                "F{n}: Wronskian audit on the {}-line family",
                family.line_count()
            ),
            audit.pass,
            format!(
                "degree {} = {} point factors + base^{} (remainder {})",
                audit.wronskian_degree,
                audit.singular_points_on_line,
                audit.base_factor_power,
                audit.remainder_degree
            ),
        ));
    }
    checks.push(Check::of(
        format!("F{n}: base locus splits into 2n = {} reduced lines", 2 * n),
        base.pass && base.lines_total == 2 * n,
        format!(
            "per ruling: degrees {:?}, squarefree {:?}",
            [base.rulings[0].gcd_degree, base.rulings[1].gcd_degree],
            [base.rulings[0].squarefree, base.rulings[1].squarefree]
        ),
    ));
    checks
}

/// Wronskian and base-locus audits of one pencil.
pub fn verify_audits(n: usize) -> Vec<Check> {
    let pencil = Pencil::new(n);
    let members = match singular_orbits(&pencil) {
        Ok(m) => m,
        Err(e) => return vec![Check::of(format!("audit F{n}"), false, e.to_string())],
    };
    let families = fix_lines(pencil.group);
    let audits = audit_families(&pencil, &families, &members);
    let base = base_locus(&pencil);
    check_audits(n, &families, &audits, &base)
}

/// Compare computed configurations against the reference table.
pub fn check_configuration_table(
    n: usize,
    configs: &[crate::pencil::ConfigurationReport],
) -> Vec<Check> {
    let mut got: Vec<golden::ConfigRow> = configs
        .iter()
        .map(|c| {
            let lam = c.lambda.to_rational().expect("rational lambda");
            use num_traits::ToPrimitive;
            (
                c.lines,
                (lam.numer().to_i64().unwrap(), lam.denom().to_i64().unwrap()),
                c.points,
                c.lines_per_point,
                c.points_per_line,
            )
        })
        .collect();
    got.sort_unstable();
    let mut want = golden::configuration_table(n);
    want.sort_unstable();
    let mut checks = vec![expect_eq(
        format!("configuration table of F{n}"),
        got,
        want,
    )];
    checks.push(Check::of(
        format!("F{n}: p*lambda = l*pi for every configuration"),
        configs
            .iter()
            .all(|c| c.points * c.lines_per_point == c.lines * c.points_per_line),
        "",
    ));
    checks
}

/// Incidence configurations of one pencil against the reference table.
pub fn verify_configurations(n: usize) -> Vec<Check> {
    let pencil = Pencil::new(n);
    let members = match singular_orbits(&pencil) {
        Ok(m) => m,
        Err(e) => return vec![Check::of(format!("configurations F{n}"), false, e.to_string())],
    };
    let families = fix_lines(pencil.group);
    let configs = configurations(&families, &members);
    check_configuration_table(n, &configs)
}

/// Naive bounds, generic orbit lengths and the mu(12) context line.
pub fn verify_bounds() -> Vec<Check> {
    let mut checks = Vec::new();
    for (n, naive, generic) in golden::BOUNDS {
        let report = bound_report(&Pencil::new(n));
        checks.push(expect_eq(
            format!("naive bound for n = {n}"),
            report.naive_bound,
            naive,
        ));
        checks.push(expect_eq(
            format!("generic orbit for n = {n}"),
            report.generic_orbit,
            generic,
        ));
        if n == 12 {
            checks.push(expect_eq(
                "mu(12) context".to_string(),
                report.context.unwrap_or_default(),
                golden::MU12_CONTEXT.to_string(),
            ));
        }
    }
    checks
}

/// The 600-node surface renders: non-empty mesh within the vertex residual
/// tolerance, and byte-identical outputs across repeated runs under
/// different thread settings.
pub fn verify_render(grid: usize) -> Vec<Check> {
    let mut scene = RenderScene::new(12, ExactScalar::rational(-22, 243));
    scene.grid = grid;
    scene.image_width = 96;
    scene.image_height = 72;
    let m1 = mesh(&scene);
    let worst = worst_relative_residual(&scene, &m1);
    let mut checks = vec![
        Check::of(
            "F12(-22/243) mesh is non-empty",
            !m1.is_empty(),
            format!("{} vertices, {} triangles", m1.vertices.len(), m1.triangles.len()),
        ),
        Check::of(
            "mesh vertex residuals within tolerance",
            worst < 1.0,
            format!("worst relative residual {worst:.3e}"),
        ),
    ];
    // identical scenes under different thread pools must agree byte for byte
    let render_both = |threads: usize| -> (String, Vec<u8>) {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(|| (mesh(&scene).to_obj(), raster(&scene).to_ppm()))
    };
    let (obj1, img1) = render_both(1);
    let (obj2, img2) = render_both(2);
    checks.push(Check::of(
        "bit-identical outputs across thread counts",
        obj1 == obj2 && img1 == img2,
        format!("{} OBJ bytes, {} PPM bytes", obj1.len(), img1.len()),
    ));
    let img = raster(&scene);
    checks.push(Check::of(
        "raster has > 1% non-background pixels",
        img.non_background_fraction(crate::render::BACKGROUND) > 0.01,
        format!(
            "{:.2}% non-background",
            100.0 * img.non_background_fraction(crate::render::BACKGROUND)
        ),
    ));
    checks
}
