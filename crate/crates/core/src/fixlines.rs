//! Fix points and fix lines of the group actions on P3: classification by
//! conjugacy class, orbit structure, pairwise intersections, and the ruling
//! lines of one-sided elements inside the invariant quadric.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::groups::PolyGroup;
use crate::linalg::Mat4;
use crate::projective::{LineMeet, ProjLine, ProjPoint};
use crate::scalar::{ComplexScalar, ExactScalar};

/// A merged family of fix lines: the conjugacy classes listed in
/// `class_reps` share exactly the same line set.
#[derive(Clone, Debug)]
pub struct FixLineClass {
    /// Canonical representative element (index into the group).
    pub rep_element: usize,
    /// Representatives of every merged conjugacy class, sorted.
    pub class_reps: Vec<usize>,
    /// The distinct fix lines, sorted.
    pub lines: Vec<ProjLine<ExactScalar>>,
    /// Lines contributed by +1 eigenspaces across the member elements.
    pub plus_lines: usize,
    /// Lines contributed by -1 eigenspaces.
    pub minus_lines: usize,
}

impl FixLineClass {
    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn contains_line(&self, line: &ProjLine<ExactScalar>) -> bool {
        self.lines.binary_search(line).is_ok()
    }
}

/// Eigenvalue-±1 fix lines of one element's matrix, as (sign, line) pairs.
fn element_fix_lines(m: &Mat4<ExactScalar>) -> Vec<(i8, ProjLine<ExactScalar>)> {
    let id = Mat4::identity();
    let mut out = Vec::new();
    for (sign, shifted) in [(1i8, m.sub(&id)), (-1i8, m.add(&id))] {
        let kernel = shifted.kernel();
        if kernel.len() == 2 {
            let line = ProjLine::from_span(kernel[0].clone(), kernel[1].clone())
                .expect("kernel basis is independent");
            out.push((sign, line));
        }
    }
    out
}

/// All fix-line families of the group: lines collected per conjugacy class
/// from 2-dimensional ±1 eigenspaces, with classes sharing identical line
/// sets merged. Sorted by descending line count, then representative.
pub fn fix_lines(group: &PolyGroup) -> Vec<FixLineClass> {
    let classes = group.conjugacy_classes();
    let matrices = group.matrices();
    struct Partial {
        lines: BTreeSet<ProjLine<ExactScalar>>,
        plus: BTreeSet<ProjLine<ExactScalar>>,
        minus: BTreeSet<ProjLine<ExactScalar>>,
    }
    let mut per_class: Vec<Option<Partial>> = Vec::with_capacity(classes.len());
    for class in classes {
        if group.elements()[class.rep].is_central() {
            per_class.push(None);
            continue;
        }
        let mut partial = Partial {
            lines: BTreeSet::new(),
            plus: BTreeSet::new(),
            minus: BTreeSet::new(),
        };
        for &i in &class.members {
            for (sign, line) in element_fix_lines(&matrices[i]) {
                if sign > 0 {
                    partial.plus.insert(line.clone());
                } else {
                    partial.minus.insert(line.clone());
                }
                partial.lines.insert(line);
            }
        }
        per_class.push((!partial.lines.is_empty()).then_some(partial));
    }

    // merge classes with identical line sets
    let mut merged: HashMap<Vec<ProjLine<ExactScalar>>, (Vec<usize>, usize, usize)> =
        HashMap::new();
    for (ci, partial) in per_class.iter().enumerate() {
        let Some(partial) = partial else { continue };
        let key: Vec<ProjLine<ExactScalar>> = partial.lines.iter().cloned().collect();
        let entry = merged.entry(key).or_insert((Vec::new(), 0, 0));
        entry.0.push(classes[ci].rep);
        entry.1 += partial.plus.len();
        entry.2 += partial.minus.len();
    }
    let mut out: Vec<FixLineClass> = merged
        .into_iter()
        .map(|(lines, (mut class_reps, plus, minus))| {
            class_reps.sort_unstable();
            FixLineClass {
                rep_element: class_reps[0],
                class_reps,
                lines,
                plus_lines: plus,
                minus_lines: minus,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        b.line_count()
            .cmp(&a.line_count())
            .then(a.rep_element.cmp(&b.rep_element))
    });
    out
}

/// Orbit of a line under the group action.
pub fn line_orbit(line: &ProjLine<ExactScalar>, group: &PolyGroup) -> Vec<ProjLine<ExactScalar>> {
    let gens = group.generator_matrices();
    let mut seen = HashSet::new();
    seen.insert(line.clone());
    let mut frontier = vec![line.clone()];
    while let Some(l) = frontier.pop() {
        for m in &gens {
            let img = l.apply(m);
            if seen.insert(img.clone()) {
                frontier.push(img);
            }
        }
    }
    let mut orbit: Vec<_> = seen.into_iter().collect();
    orbit.sort();
    orbit
}

/// The fix line through a point, searched across the given classes.
pub fn covering_line<'a>(
    classes: &'a [FixLineClass],
    pt: &ProjPoint<ExactScalar>,
) -> Option<(usize, &'a ProjLine<ExactScalar>)> {
    for (ci, class) in classes.iter().enumerate() {
        if let Some(line) = class.lines.iter().find(|l| l.contains(pt)) {
            return Some((ci, line));
        }
    }
    None
}

/// Summary of all pairwise intersections among a set of real fix lines.
#[derive(Clone, Debug, Serialize)]
pub struct IntersectionSummary {
    pub lines: usize,
    pub pairs: usize,
    pub meeting_pairs: usize,
    pub distinct_points: usize,
    /// Intersection points are real by construction (exact real
    /// coordinates); recorded for the report.
    pub all_real: bool,
    /// No intersection point lies on the quadric.
    pub all_off_quadric: bool,
}

/// Intersect every pair of the given lines, asserting the intersection
/// points are off the quadric. Returns the summary and the distinct points.
pub fn line_intersections(
    lines: &[ProjLine<ExactScalar>],
) -> (IntersectionSummary, Vec<ProjPoint<ExactScalar>>) {
    let mut points = BTreeSet::new();
    let mut meeting = 0usize;
    let mut all_off_quadric = true;
    let mut pairs = 0usize;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            pairs += 1;
            match lines[i].intersect(&lines[j]).expect("distinct lines") {
                LineMeet::Disjoint => {}
                LineMeet::Point(pt) => {
                    meeting += 1;
                    if pt.quadric_value().is_zero() {
                        all_off_quadric = false;
                    }
                    points.insert(pt);
                }
            }
        }
    }
    let summary = IntersectionSummary {
        lines: lines.len(),
        pairs,
        meeting_pairs: meeting,
        distinct_points: points.len(),
        all_real: true,
        all_off_quadric,
    };
    (summary, points.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RulingSide {
    /// Elements sigma(p, id); their fix lines fill one ruling.
    Left,
    /// Elements sigma(id, q); the other ruling.
    Right,
}

/// A fix line of a one-sided element, living inside the quadric.
#[derive(Clone, Debug)]
pub struct RulingLine {
    pub element: usize,
    pub side: RulingSide,
    pub eigenvalue: ComplexScalar,
    pub line: ProjLine<ComplexScalar>,
}

/// Result of extracting ruling lines for every one-sided element whose
/// eigenvalues lie in the complexified field. Elements with eigenvalues
/// outside the field (orders 6 and 10) are counted in `skipped`; their
/// lines are certified indirectly by the base-locus factor analysis in the
/// pencil module.
#[derive(Clone, Debug)]
pub struct RulingLines {
    pub lines: Vec<RulingLine>,
    pub skipped: usize,
}

pub fn ruling_fix_lines(group: &PolyGroup) -> RulingLines {
    let mut out = Vec::new();
    let mut skipped = 0usize;
    let matrices = group.matrices();
    for (i, g) in group.elements().iter().enumerate() {
        if g.is_central() {
            continue;
        }
        let scalar_part =
            |q: &crate::groups::Quaternion| q.x.is_zero() && q.y.is_zero() && q.z.is_zero();
        let side = if scalar_part(g.q()) {
            RulingSide::Left
        } else if scalar_part(g.p()) {
            RulingSide::Right
        } else {
            continue;
        };
        let w = match side {
            RulingSide::Left => g.p().re().clone(),
            // right-side matrix eigenvalues come from conj(q); same real part
            RulingSide::Right => g.q().re().clone(),
        };
        let s_sqr = &ExactScalar::one() - &(&w * &w);
        let Some(s) = s_sqr.sqrt() else {
            skipped += 1;
            continue;
        };
        let mc = matrices[i].to_complex();
        for eigen_im in [s.clone(), -&s] {
            let alpha = ComplexScalar::new(w.clone(), eigen_im);
            let shifted = mc.sub(&Mat4::identity().scale(&alpha));
            let kernel = shifted.kernel();
            assert_eq!(kernel.len(), 2, "one-sided eigenvalues have multiplicity two");
            let line = ProjLine::from_span(kernel[0].clone(), kernel[1].clone())
                .expect("independent kernel basis");
            debug_assert!(line_in_quadric(&line));
            out.push(RulingLine {
                element: i,
                side,
                eigenvalue: alpha,
                line,
            });
        }
    }
    RulingLines {
        lines: out,
        skipped,
    }
}

/// A line lies in the quadric iff Q vanishes at three points of it.
pub fn line_in_quadric(line: &ProjLine<ComplexScalar>) -> bool {
    let [b0, b1] = line.basis();
    let quad = |v: &[ComplexScalar; 4]| {
        let mut acc = ComplexScalar::zero();
        for c in v {
            acc = &acc + &(c * c);
        }
        acc
    };
    let sum: [ComplexScalar; 4] = std::array::from_fn(|i| &b0[i] + &b1[i]);
    quad(b0).is_zero() && quad(b1).is_zero() && quad(&sum).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{quaternions::*, GroupElement, GroupName, Quaternion};

    fn g6() -> &'static PolyGroup {
        PolyGroup::cached(GroupName::G6)
    }

    #[test]
    fn g6_fix_line_family_sizes() {
        let families = fix_lines(g6());
        let sizes: Vec<usize> = families.iter().map(|f| f.line_count()).collect();
        assert_eq!(sizes, vec![18, 16, 16]);
    }

    #[test]
    fn each_family_is_one_line_orbit() {
        for family in fix_lines(g6()) {
            let orbit = line_orbit(&family.lines[0], g6());
            assert_eq!(orbit, family.lines);
        }
    }

    #[test]
    fn printed_generators_span_member_lines() {
        let group = g6();
        let families = fix_lines(group);
        let find_family = |p: Quaternion, q: Quaternion| -> usize {
            let idx = group
                .element_index(&GroupElement::new(p, q))
                .expect("element of G6");
            let class_of = group.class_of();
            let target = class_of[idx];
            families
                .iter()
                .position(|f| {
                    f.class_reps.iter().any(|&r| class_of[r] == target)
                })
                .expect("class has fix lines")
        };
        let sigma24 = find_family(q2(), q2());
        let l1 = ProjLine::from_int_span([0, 0, 1, 0], [1, 0, 0, 0]).unwrap();
        let l2 = ProjLine::from_int_span([0, 0, 0, 1], [0, 1, 0, 0]).unwrap();
        assert!(families[sigma24].contains_line(&l1));
        assert!(families[sigma24].contains_line(&l2));
        assert_eq!(l1.intersect(&l2), Ok(LineMeet::Disjoint));

        let pi33 = find_family(p3(), p3());
        let l3 = ProjLine::from_int_span([1, 0, 0, 0], [0, 1, -1, 1]).unwrap();
        assert!(families[pi33].contains_line(&l3));

        let pi33_sq = find_family(p3(), p3().mul(&p3()));
        let l4 = ProjLine::from_int_span([0, 1, 1, 0], [0, -1, 0, 1]).unwrap();
        assert!(families[pi33_sq].contains_line(&l4));
        assert_ne!(pi33, pi33_sq);
    }

    #[test]
    fn g6_intersections_are_real_and_off_quadric() {
        let families = fix_lines(g6());
        let all_lines: Vec<_> = families.iter().flat_map(|f| f.lines.clone()).collect();
        let (summary, points) = line_intersections(&all_lines);
        assert!(summary.all_off_quadric);
        assert!(summary.meeting_pairs > 0);
        assert_eq!(summary.distinct_points, points.len());
    }

    #[test]
    fn ruling_lines_of_sigma_elements() {
        let group = g6();
        let rulings = ruling_fix_lines(group);
        assert!(!rulings.lines.is_empty());
        for rl in &rulings.lines {
            assert!(line_in_quadric(&rl.line));
        }
        // lines of sigma1 = sigma(q1, id) and sigma3 = sigma(id, q1):
        // opposite rulings meet in exactly one point
        let sigma1_lines: Vec<_> = rulings
            .lines
            .iter()
            .filter(|rl| {
                rl.side == RulingSide::Left
                    && group.elements()[rl.element] == GroupElement::new(q1(), Quaternion::one())
            })
            .collect();
        let sigma3_lines: Vec<_> = rulings
            .lines
            .iter()
            .filter(|rl| {
                rl.side == RulingSide::Right
                    && group.elements()[rl.element] == GroupElement::new(Quaternion::one(), q1())
            })
            .collect();
        assert_eq!(sigma1_lines.len(), 2);
        assert_eq!(sigma3_lines.len(), 2);
        for a in &sigma1_lines {
            for b in &sigma3_lines {
                match a.line.intersect(&b.line).unwrap() {
                    LineMeet::Point(_) => {}
                    LineMeet::Disjoint => panic!("opposite rulings must meet"),
                }
            }
        }
        // same ruling: the two sigma1 lines are disjoint
        assert_eq!(
            sigma1_lines[0].line.intersect(&sigma1_lines[1].line),
            Ok(LineMeet::Disjoint)
        );
    }
}
