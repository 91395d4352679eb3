//! The bi-polyhedral groups H, G6, G8, G12 in SO(4), built from pairs of
//! unit quaternions, together with conjugacy classes, orbits, stabilizers
//! and the reflection-group extensions by the O(4) matrices C, C'.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{charpoly, Mat4, UniPoly};
use crate::projective::ProjPoint;
use crate::scalar::ExactScalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("extension generator is not orthogonal")]
    NonOrthogonal,
    #[error("matrix closure exceeded {0} cosets; generators do not define a small finite group")]
    ClosureTooLarge(usize),
}

/// Quaternion with exact coefficients over the basis (1, i, j, k).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quaternion {
    pub w: ExactScalar,
    pub x: ExactScalar,
    pub y: ExactScalar,
    pub z: ExactScalar,
}

impl Quaternion {
    pub fn new(w: ExactScalar, x: ExactScalar, y: ExactScalar, z: ExactScalar) -> Self {
        Self { w, x, y, z }
    }

    pub fn one() -> Self {
        Self::new(
            ExactScalar::one(),
            ExactScalar::zero(),
            ExactScalar::zero(),
            ExactScalar::zero(),
        )
    }

    pub fn from_basis(parts: [(i64, i64, i64, i64, i64); 4]) -> Self {
        let s = |p: (i64, i64, i64, i64, i64)| ExactScalar::from_basis(p.0, p.1, p.2, p.3, p.4);
        Self::new(s(parts[0]), s(parts[1]), s(parts[2]), s(parts[3]))
    }

    pub fn mul(&self, r: &Self) -> Self {
        let (a, b, c, d) = (&self.w, &self.x, &self.y, &self.z);
        let (e, f, g, h) = (&r.w, &r.x, &r.y, &r.z);
        Self::new(
            &(&(a * e) - &(b * f)) - &(&(c * g) + &(d * h)),
            &(&(a * f) + &(b * e)) + &(&(c * h) - &(d * g)),
            &(&(a * g) - &(b * h)) + &(&(c * e) + &(d * f)),
            &(&(a * h) + &(b * g)) - &(&(c * f) - &(d * e)),
        )
    }

    pub fn conj(&self) -> Self {
        Self::new(self.w.clone(), -&self.x, -&self.y, -&self.z)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.w, -&self.x, -&self.y, -&self.z)
    }

    pub fn norm_sqr(&self) -> ExactScalar {
        &(&(&self.w * &self.w) + &(&self.x * &self.x))
            + &(&(&self.y * &self.y) + &(&self.z * &self.z))
    }

    pub fn is_unit(&self) -> bool {
        self.norm_sqr().is_one()
    }

    /// Real part; the trace of the corresponding SU(2) matrix is twice this.
    pub fn re(&self) -> &ExactScalar {
        &self.w
    }

    fn first_nonzero_sign(&self) -> i8 {
        for c in [&self.w, &self.x, &self.y, &self.z] {
            let s = c.sign();
            if s != 0 {
                return s;
            }
        }
        0
    }

    /// Components in order (w, x, y, z).
    pub fn components(&self) -> [&ExactScalar; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.w, self.x, self.y, self.z)
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The quaternion generators of the binary polyhedral groups, transcribed
/// from their SU(2) matrices via the dictionary
/// `w + xi + yj + zk <-> [[w + xi, y + zi], [-y + zi, w - xi]]`.
/// The dictionary is validated by the generator-fidelity tests: the induced
/// SO(4) matrices must reproduce the reference matrices entry for entry.
pub mod quaternions {
    use super::Quaternion;

    /// i
    pub fn q1() -> Quaternion {
        Quaternion::from_basis([(0, 0, 0, 0, 1), (1, 0, 0, 0, 1), (0, 0, 0, 0, 1), (0, 0, 0, 0, 1)])
    }

    /// j
    pub fn q2() -> Quaternion {
        Quaternion::from_basis([(0, 0, 0, 0, 1), (0, 0, 0, 0, 1), (1, 0, 0, 0, 1), (0, 0, 0, 0, 1)])
    }

    /// k
    pub fn q3() -> Quaternion {
        Quaternion::from_basis([(0, 0, 0, 0, 1), (0, 0, 0, 0, 1), (0, 0, 0, 0, 1), (1, 0, 0, 0, 1)])
    }

    /// (1 + i - j + k) / 2, of order 6
    pub fn p3() -> Quaternion {
        Quaternion::from_basis([(1, 0, 0, 0, 2), (1, 0, 0, 0, 2), (-1, 0, 0, 0, 2), (1, 0, 0, 0, 2)])
    }

    /// (1 + i) / sqrt2, of order 8
    pub fn p4() -> Quaternion {
        Quaternion::from_basis([(0, 1, 0, 0, 2), (0, 1, 0, 0, 2), (0, 0, 0, 0, 1), (0, 0, 0, 0, 1)])
    }

    /// (tau + (tau - 1) j + k) / 2, of order 10
    pub fn p5() -> Quaternion {
        Quaternion::from_basis([(1, 0, 1, 0, 4), (0, 0, 0, 0, 1), (-1, 0, 1, 0, 4), (1, 0, 0, 0, 2)])
    }
}

/// Element of a bi-polyhedral group: a pair of unit quaternions modulo the
/// simultaneous sign flip, stored with the first nonzero coefficient of `p`
/// positive. The element acts on R4 = quaternions by `v -> p * v * conj(q)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    p: Quaternion,
    q: Quaternion,
}

impl GroupElement {
    pub fn new(p: Quaternion, q: Quaternion) -> Self {
        debug_assert!(p.is_unit() && q.is_unit());
        if p.first_nonzero_sign() < 0 {
            Self {
                p: p.neg(),
                q: q.neg(),
            }
        } else {
            Self { p, q }
        }
    }

    pub fn identity() -> Self {
        Self::new(Quaternion::one(), Quaternion::one())
    }

    pub fn minus_identity() -> Self {
        Self::new(Quaternion::one().neg(), Quaternion::one())
    }

    pub fn p(&self) -> &Quaternion {
        &self.p
    }

    pub fn q(&self) -> &Quaternion {
        &self.q
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.p.mul(&rhs.p), self.q.mul(&rhs.q))
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.p.conj(), self.q.conj())
    }

    /// True for plus or minus the identity matrix.
    pub fn is_central(&self) -> bool {
        let scalar_part = |q: &Quaternion| q.x.is_zero() && q.y.is_zero() && q.z.is_zero();
        scalar_part(&self.p) && scalar_part(&self.q)
    }

    /// The SO(4) matrix of `v -> p * v * conj(q)` on the basis (1, i, j, k).
    pub fn so4_matrix(&self) -> Mat4<ExactScalar> {
        let qc = self.q.conj();
        // e_c * conj(q) by signed component shuffles, then one product by p.
        let left_i = |v: &Quaternion| Quaternion::new(-&v.x, v.w.clone(), -&v.z, v.y.clone());
        let left_j = |v: &Quaternion| Quaternion::new(-&v.y, v.z.clone(), v.w.clone(), -&v.x);
        let left_k = |v: &Quaternion| Quaternion::new(-&v.z, -&v.y, v.x.clone(), v.w.clone());
        let cols = [
            self.p.mul(&qc),
            self.p.mul(&left_i(&qc)),
            self.p.mul(&left_j(&qc)),
            self.p.mul(&left_k(&qc)),
        ];
        Mat4::from_fn(|r, c| cols[c].components()[r].clone())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[p = {}, q = {}]", self.p, self.q)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupName {
    H,
    G6,
    G8,
    G12,
}

impl GroupName {
    pub const ALL: [GroupName; 4] = [GroupName::H, GroupName::G6, GroupName::G8, GroupName::G12];

    pub fn as_str(self) -> &'static str {
        match self {
            GroupName::H => "h",
            GroupName::G6 => "g6",
            GroupName::G8 => "g8",
            GroupName::G12 => "g12",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h" => Some(GroupName::H),
            "g6" => Some(GroupName::G6),
            "g8" => Some(GroupName::G8),
            "g12" => Some(GroupName::G12),
            _ => None,
        }
    }

    /// Degree n of the first nontrivial invariant (the pencil degree);
    /// `None` for H.
    pub fn pencil_degree(self) -> Option<usize> {
        match self {
            GroupName::H => None,
            GroupName::G6 => Some(6),
            GroupName::G8 => Some(8),
            GroupName::G12 => Some(12),
        }
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// A conjugacy class under the group's own conjugation action.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// Index of the canonical (minimal) representative.
    pub rep: usize,
    /// Sorted member indices.
    pub members: Vec<usize>,
}

/// A GL(4, C) class: elements grouped by characteristic polynomial
/// (finite-order matrices with equal charpoly are GL(4, C)-conjugate).
#[derive(Clone, Debug)]
pub struct Gl4Class {
    pub rep: usize,
    pub charpoly: UniPoly<ExactScalar>,
    pub size: usize,
}

/// Named generator with its quaternion pair.
pub struct Generator {
    pub name: &'static str,
    pub element: GroupElement,
}

pub struct PolyGroup {
    name: GroupName,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    generators: Vec<Generator>,
    matrices: OnceLock<Vec<Mat4<ExactScalar>>>,
    matrix_index: OnceLock<HashMap<Mat4<ExactScalar>, usize>>,
    classes: OnceLock<Vec<ConjugacyClass>>,
    gl4: OnceLock<Vec<Gl4Class>>,
}

impl PolyGroup {
    /// Build the group as the closure of its generator list under
    /// multiplication (breadth-first, hash-set dedup on canonical forms).
    pub fn build(name: GroupName) -> Self {
        use quaternions::*;
        let one = Quaternion::one;
        let left = |q: Quaternion| GroupElement::new(q, one());
        let right = |q: Quaternion| GroupElement::new(one(), q);
        let generators: Vec<Generator> = match name {
            GroupName::H => vec![
                Generator { name: "sigma1", element: left(q1()) },
                Generator { name: "sigma2", element: left(q2()) },
                Generator { name: "sigma3", element: right(q1()) },
                Generator { name: "sigma4", element: right(q2()) },
            ],
            GroupName::G6 => vec![
                Generator { name: "sigma1", element: left(q1()) },
                Generator { name: "sigma2", element: left(q2()) },
                Generator { name: "sigma3", element: right(q1()) },
                Generator { name: "sigma4", element: right(q2()) },
                Generator { name: "pi3", element: left(p3()) },
                Generator { name: "pi3'", element: right(p3()) },
            ],
            GroupName::G8 => vec![
                Generator { name: "sigma2", element: left(q2()) },
                Generator { name: "sigma4", element: right(q2()) },
                Generator { name: "pi3", element: left(p3()) },
                Generator { name: "pi3'", element: right(p3()) },
                Generator { name: "pi4", element: left(p4()) },
                Generator { name: "pi4'", element: right(p4()) },
            ],
            GroupName::G12 => vec![
                Generator { name: "sigma1", element: left(q1()) },
                Generator { name: "sigma2", element: left(q2()) },
                Generator { name: "sigma3", element: right(q1()) },
                Generator { name: "sigma4", element: right(q2()) },
                Generator { name: "pi5", element: left(p5()) },
                Generator { name: "pi5'", element: right(p5()) },
            ],
        };

        let mut elements = vec![GroupElement::identity()];
        let mut index = HashMap::new();
        index.insert(GroupElement::identity(), 0usize);
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            let g = elements[i].clone();
            for gen in &generators {
                let h = g.mul(&gen.element);
                if !index.contains_key(&h) {
                    let k = elements.len();
                    index.insert(h.clone(), k);
                    elements.push(h);
                    frontier.push(k);
                }
            }
        }
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        Self {
            name,
            elements,
            index,
            generators,
            matrices: OnceLock::new(),
            matrix_index: OnceLock::new(),
            classes: OnceLock::new(),
            gl4: OnceLock::new(),
        }
    }

    /// Shared instance, built once per process.
    pub fn cached(name: GroupName) -> &'static PolyGroup {
        static CACHE: [OnceLock<PolyGroup>; 4] = [
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
        ];
        let slot = match name {
            GroupName::H => 0,
            GroupName::G6 => 1,
            GroupName::G8 => 2,
            GroupName::G12 => 3,
        };
        CACHE[slot].get_or_init(|| PolyGroup::build(name))
    }

    pub fn name(&self) -> GroupName {
        self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn element_index(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    /// SO(4) matrices of all elements, in element order (cached).
    pub fn matrices(&self) -> &[Mat4<ExactScalar>] {
        use rayon::prelude::*;
        self.matrices
            .get_or_init(|| self.elements.par_iter().map(|g| g.so4_matrix()).collect())
    }

    pub fn matrix_index(&self) -> &HashMap<Mat4<ExactScalar>, usize> {
        self.matrix_index.get_or_init(|| {
            self.matrices()
                .iter()
                .enumerate()
                .map(|(i, m)| (m.clone(), i))
                .collect()
        })
    }

    pub fn generator_matrices(&self) -> Vec<Mat4<ExactScalar>> {
        self.generators.iter().map(|g| g.element.so4_matrix()).collect()
    }

    /// True conjugacy classes by conjugation closure, sorted by canonical
    /// representative.
    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        self.classes.get_or_init(|| {
            let inverses: Vec<GroupElement> =
                self.generators.iter().map(|g| g.element.inverse()).collect();
            let mut class_of = vec![usize::MAX; self.order()];
            let mut classes = Vec::new();
            for start in 0..self.order() {
                if class_of[start] != usize::MAX {
                    continue;
                }
                let class_id = classes.len();
                let mut members = vec![start];
                class_of[start] = class_id;
                let mut frontier = vec![start];
                while let Some(i) = frontier.pop() {
                    for (gen, gen_inv) in self.generators.iter().zip(&inverses) {
                        let conj = gen.element.mul(&self.elements[i]).mul(gen_inv);
                        let j = self.index[&conj];
                        if class_of[j] == usize::MAX {
                            class_of[j] = class_id;
                            members.push(j);
                            frontier.push(j);
                        }
                    }
                }
                members.sort_unstable();
                classes.push(ConjugacyClass { rep: members[0], members });
            }
            classes
        })
    }

    /// Class index of each element, aligned with `conjugacy_classes`.
    pub fn class_of(&self) -> Vec<usize> {
        let classes = self.conjugacy_classes();
        let mut out = vec![0usize; self.order()];
        for (ci, class) in classes.iter().enumerate() {
            for &m in &class.members {
                out[m] = ci;
            }
        }
        out
    }

    /// GL(4, C) classes: group elements by characteristic polynomial.
    pub fn gl4_classes(&self) -> &[Gl4Class] {
        self.gl4.get_or_init(|| {
            let mats = self.matrices();
            let mut by_poly: HashMap<UniPoly<ExactScalar>, (usize, usize)> = HashMap::new();
            for (i, m) in mats.iter().enumerate() {
                let p = charpoly(m);
                by_poly
                    .entry(p)
                    .and_modify(|(rep, size)| {
                        *size += 1;
                        if i < *rep {
                            *rep = i;
                        }
                    })
                    .or_insert((i, 1));
            }
            let mut classes: Vec<Gl4Class> = by_poly
                .into_iter()
                .map(|(charpoly, (rep, size))| Gl4Class { rep, charpoly, size })
                .collect();
            classes.sort_by_key(|c| c.rep);
            classes
        })
    }

    /// Orbit of a canonical projective point, sorted.
    pub fn orbit(&self, pt: &ProjPoint<ExactScalar>) -> Vec<ProjPoint<ExactScalar>> {
        let gens = self.generator_matrices();
        let mut seen = std::collections::HashSet::new();
        seen.insert(pt.clone());
        let mut frontier = vec![pt.clone()];
        while let Some(p) = frontier.pop() {
            for m in &gens {
                let img = p.apply(m);
                if seen.insert(img.clone()) {
                    frontier.push(img);
                }
            }
        }
        let mut orbit: Vec<_> = seen.into_iter().collect();
        orbit.sort();
        orbit
    }

    /// Elements fixing the point projectively.
    pub fn stabilizer(&self, pt: &ProjPoint<ExactScalar>) -> Vec<usize> {
        self.matrices()
            .iter()
            .enumerate()
            .filter(|(_, m)| pt.apply(m) == *pt)
            .map(|(i, _)| i)
            .collect()
    }
}

/// The reflection C: (x0, x1, x2, x3) -> (x0, -x1, -x2, -x3), conjugating
/// sigma(p, q) to sigma(q, p).
pub fn c_matrix() -> Mat4<ExactScalar> {
    Mat4::from_i64([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])
}

/// The coordinate swap C': x2 <-> x3.
pub fn cprime_matrix() -> Mat4<ExactScalar> {
    Mat4::from_i64([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
}

/// Reference SO(4) matrices of the ten generators, entry for entry.
/// `so4_matrix` of the corresponding quaternion pair must reproduce each of
/// these exactly; the `group` report and the acceptance suite check this.
pub mod reference_matrices {
    use super::Mat4;
    use crate::scalar::ExactScalar;

    pub fn sigma1() -> Mat4<ExactScalar> {
        Mat4::from_i64([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    }

    pub fn sigma2() -> Mat4<ExactScalar> {
        Mat4::from_i64([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]])
    }

    pub fn sigma3() -> Mat4<ExactScalar> {
        Mat4::from_i64([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    }

    pub fn sigma4() -> Mat4<ExactScalar> {
        Mat4::from_i64([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
    }

    fn halves(signs: [[i64; 4]; 4]) -> Mat4<ExactScalar> {
        Mat4::from_fn(|r, c| ExactScalar::rational(signs[r][c], 2))
    }

    pub fn pi3() -> Mat4<ExactScalar> {
        halves([[1, -1, 1, -1], [1, 1, -1, -1], [-1, 1, 1, -1], [1, 1, 1, 1]])
    }

    pub fn pi3_prime() -> Mat4<ExactScalar> {
        halves([[1, 1, -1, 1], [-1, 1, -1, -1], [1, 1, 1, -1], [-1, 1, 1, 1]])
    }

    fn inv_sqrt2(signs: [[i64; 4]; 4]) -> Mat4<ExactScalar> {
        Mat4::from_fn(|r, c| ExactScalar::from_basis(0, signs[r][c], 0, 0, 2))
    }

    pub fn pi4() -> Mat4<ExactScalar> {
        inv_sqrt2([[1, -1, 0, 0], [1, 1, 0, 0], [0, 0, 1, -1], [0, 0, 1, 1]])
    }

    pub fn pi4_prime() -> Mat4<ExactScalar> {
        inv_sqrt2([[1, 1, 0, 0], [-1, 1, 0, 0], [0, 0, 1, -1], [0, 0, 1, 1]])
    }

    // entries: 0, +-1/2, +-tau/2, +-(tau-1)/2 encoded over (1, sqrt5)/4
    fn tau_entries(codes: [[i64; 4]; 4]) -> Mat4<ExactScalar> {
        Mat4::from_fn(|r, c| match codes[r][c] {
            0 => ExactScalar::zero(),
            1 => ExactScalar::rational(1, 2),
            -1 => ExactScalar::rational(-1, 2),
            2 => ExactScalar::from_basis(1, 0, 1, 0, 4), // tau/2
            -2 => ExactScalar::from_basis(-1, 0, -1, 0, 4),
            3 => ExactScalar::from_basis(-1, 0, 1, 0, 4), // (tau-1)/2
            -3 => ExactScalar::from_basis(1, 0, -1, 0, 4),
            other => panic!("bad code {other}"),
        })
    }

    pub fn pi5() -> Mat4<ExactScalar> {
        tau_entries([[2, 0, -3, -1], [0, 2, -1, 3], [3, 1, 2, 0], [1, -3, 0, 2]])
    }

    pub fn pi5_prime() -> Mat4<ExactScalar> {
        tau_entries([[2, 0, 3, 1], [0, 2, -1, 3], [-3, 1, 2, 0], [-1, -3, 0, 2]])
    }

    /// Generator names paired with reference matrices, for each group.
    pub fn for_group(name: super::GroupName) -> Vec<(&'static str, Mat4<ExactScalar>)> {
        let all: Vec<(&'static str, Mat4<ExactScalar>)> = vec![
            ("sigma1", sigma1()),
            ("sigma2", sigma2()),
            ("sigma3", sigma3()),
            ("sigma4", sigma4()),
            ("pi3", pi3()),
            ("pi3'", pi3_prime()),
            ("pi4", pi4()),
            ("pi4'", pi4_prime()),
            ("pi5", pi5()),
            ("pi5'", pi5_prime()),
        ];
        let wanted: &[&str] = match name {
            super::GroupName::H => &["sigma1", "sigma2", "sigma3", "sigma4"],
            super::GroupName::G6 => &["sigma1", "sigma2", "sigma3", "sigma4", "pi3", "pi3'"],
            super::GroupName::G8 => &["sigma2", "sigma4", "pi3", "pi3'", "pi4", "pi4'"],
            super::GroupName::G12 => &["sigma1", "sigma2", "sigma3", "sigma4", "pi5", "pi5'"],
        };
        all.into_iter().filter(|(n, _)| wanted.contains(n)).collect()
    }
}

/// A finite matrix group obtained by extending a quaternion-pair group with
/// raw orthogonal matrices; stored as the base group plus left-coset
/// representatives.
pub struct MatrixGroup<'a> {
    base: &'a PolyGroup,
    reps: Vec<Mat4<ExactScalar>>,
}

impl<'a> MatrixGroup<'a> {
    pub fn order(&self) -> usize {
        self.base.order() * self.reps.len()
    }

    pub fn coset_count(&self) -> usize {
        self.reps.len()
    }

    pub fn contains(&self, m: &Mat4<ExactScalar>) -> bool {
        let base_index = self.base.matrix_index();
        self.reps
            .iter()
            .any(|r| base_index.contains_key(&r.transpose().mul(m)))
    }

    /// Materialize every element matrix (coset representatives times the
    /// base group).
    pub fn elements(&self) -> Vec<Mat4<ExactScalar>> {
        let mut out = Vec::with_capacity(self.order());
        for r in &self.reps {
            for m in self.base.matrices() {
                out.push(r.mul(m));
            }
        }
        out
    }
}

/// Closure of `base` together with extra orthogonal matrices, computed by
/// breadth-first search on left cosets of `base` (membership via the exact
/// matrix table of the base group).
pub fn extend_by_matrices<'a>(
    base: &'a PolyGroup,
    extras: &[Mat4<ExactScalar>],
) -> Result<MatrixGroup<'a>, GroupError> {
    const MAX_COSETS: usize = 4096;
    for m in extras {
        if !m.is_orthogonal() {
            return Err(GroupError::NonOrthogonal);
        }
    }
    let base_index = base.matrix_index();
    let mut gens: Vec<Mat4<ExactScalar>> = extras.to_vec();
    gens.extend(base.generator_matrices());

    let mut reps: Vec<Mat4<ExactScalar>> = vec![Mat4::identity()];
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        let r = reps[i].clone();
        for s in &gens {
            let candidate = s.mul(&r);
            let known = reps
                .iter()
                .any(|r2| base_index.contains_key(&r2.transpose().mul(&candidate)));
            if !known {
                reps.push(candidate);
                frontier.push(reps.len() - 1);
                if reps.len() > MAX_COSETS {
                    return Err(GroupError::ClosureTooLarge(MAX_COSETS));
                }
            }
        }
    }
    Ok(MatrixGroup { base, reps })
}

#[cfg(test)]
mod tests {
    use super::quaternions::*;
    use super::*;

    #[test]
    fn generator_relations() {
        for q in [q1(), q2(), q3()] {
            assert!(q.is_unit());
            assert_eq!(q.mul(&q), Quaternion::one().neg());
        }
        let pow = |q: &Quaternion, n: usize| {
            let mut acc = Quaternion::one();
            for _ in 0..n {
                acc = acc.mul(q);
            }
            acc
        };
        assert_eq!(pow(&p3(), 3), Quaternion::one().neg());
        assert_eq!(pow(&p4(), 4), Quaternion::one().neg());
        assert_eq!(pow(&p5(), 5), Quaternion::one().neg());
        assert!(p3().is_unit() && p4().is_unit() && p5().is_unit());
    }

    #[test]
    fn canonical_sign_identifies_pairs() {
        let g = GroupElement::new(q1(), q2());
        let h = GroupElement::new(q1().neg(), q2().neg());
        assert_eq!(g, h);
        let k = GroupElement::new(q1().neg(), q2());
        assert_ne!(g, k);
    }

    #[test]
    fn so4_matrices_are_special_orthogonal() {
        for gen in [
            GroupElement::new(q1(), Quaternion::one()),
            GroupElement::new(Quaternion::one(), q2()),
            GroupElement::new(p3(), Quaternion::one()),
            GroupElement::new(p5(), Quaternion::one()),
        ] {
            let m = gen.so4_matrix();
            assert!(m.is_orthogonal());
            assert_eq!(m.det(), ExactScalar::one());
        }
        assert!(GroupElement::identity().so4_matrix().is_identity());
    }

    #[test]
    fn group_orders() {
        assert_eq!(PolyGroup::cached(GroupName::H).order(), 32);
        assert_eq!(PolyGroup::cached(GroupName::G6).order(), 288);
        assert_eq!(PolyGroup::cached(GroupName::G8).order(), 1152);
    }

    #[test]
    fn quaternion_dictionary_reproduces_reference_matrices() {
        // Fixes the SU(2) <-> quaternion convention: each generator pair
        // must map to its reference matrix entry for entry.
        for name in GroupName::ALL {
            let group = PolyGroup::cached(name);
            let refs = reference_matrices::for_group(name);
            assert_eq!(group.generators().len(), refs.len());
            for (gen, (ref_name, ref_mat)) in group.generators().iter().zip(&refs) {
                assert_eq!(&gen.name, ref_name);
                assert_eq!(
                    gen.element.so4_matrix(),
                    *ref_mat,
                    "generator {} of {name}",
                    gen.name
                );
            }
        }
    }

    #[test]
    fn h_gl4_class_sizes() {
        let h = PolyGroup::cached(GroupName::H);
        let mut sizes: Vec<usize> = h.gl4_classes().iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 12, 18]);
    }

    #[test]
    fn g6_classes_partition_the_group() {
        let g6 = PolyGroup::cached(GroupName::G6);
        let total: usize = g6.conjugacy_classes().iter().map(|c| c.members.len()).sum();
        assert_eq!(total, 288);
        let total_gl4: usize = g6.gl4_classes().iter().map(|c| c.size).sum();
        assert_eq!(total_gl4, 288);
    }

    #[test]
    fn conjugation_swap_identity() {
        // C * sigma(p, q) * C = sigma(q, p)
        let c = c_matrix();
        for (p, q) in [(q1(), q2()), (p3(), q3()), (p5(), p3())] {
            let lhs = c
                .mul(&GroupElement::new(p.clone(), q.clone()).so4_matrix())
                .mul(&c);
            let rhs = GroupElement::new(q, p).so4_matrix();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn reflection_extensions_of_g6() {
        let g6 = PolyGroup::cached(GroupName::G6);
        let ext_c = extend_by_matrices(g6, &[c_matrix()]).unwrap();
        assert_eq!(ext_c.order(), 576);
        let ext_cc = extend_by_matrices(g6, &[c_matrix(), cprime_matrix()]).unwrap();
        assert_eq!(ext_cc.order(), 1152);
        assert!(ext_cc.contains(&cprime_matrix().mul(&c_matrix())));
        assert!(!ext_c.contains(&cprime_matrix()));
        let skew = Mat4::from_i64([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert_eq!(
            extend_by_matrices(g6, &[skew]).err(),
            Some(GroupError::NonOrthogonal)
        );
    }

    #[test]
    fn orbit_of_h_vertex() {
        let g6 = PolyGroup::cached(GroupName::G6);
        let pt = ProjPoint::from_ints([1, 1, 1, 1]);
        let orbit = g6.orbit(&pt);
        let stab = g6.stabilizer(&pt);
        assert_eq!(orbit.len() * stab.len(), g6.order());
        assert_eq!(orbit.len(), 12);
        assert!(orbit.contains(&ProjPoint::from_ints([1, 0, 0, 0])));
    }
}
