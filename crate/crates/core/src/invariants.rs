//! Invariant polynomials of the bi-polyhedral groups: bases of the
//! invariant slices by exact linear algebra, and the explicit generators
//! Q, S6, S8 and S12 = f_s + 33*sqrt5*f_a.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::groups::{GroupName, PolyGroup};
use crate::linalg::Mat4;
use crate::poly::{act, LinearAction, Monomial, MultiPoly};
use crate::scalar::ExactScalar;

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("no summation convention yields invariant polynomials: {0}")]
    ConventionUnresolved(String),
}

/// How the symmetric sums are expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SumConvention {
    /// Each distinct monomial of the index orbit appears with coefficient 1.
    DistinctMonomials,
    /// Every ordered tuple of distinct indices contributes, so symmetric
    /// patterns pick up multiplicities.
    OrderedTuples,
}

/// All monomials of total degree `d`, in deterministic order.
pub fn monomials_of_degree(d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a0 in 0..=d {
        for a1 in 0..=d - a0 {
            for a2 in 0..=d - a0 - a1 {
                let a3 = d - a0 - a1 - a2;
                out.push([a0 as u8, a1 as u8, a2 as u8, a3 as u8]);
            }
        }
    }
    out
}

/// Monomials of degree `d` whose exponents all share one parity. The group
/// of double sign changes (contained in H, hence in every group here) kills
/// everything else, which cuts the solver columns well below the full
/// monomial count.
pub fn parity_uniform_monomials(d: usize) -> Vec<Monomial> {
    monomials_of_degree(d)
        .into_iter()
        .filter(|m| {
            let all_even = m.iter().all(|&e| e % 2 == 0);
            let all_odd = m.iter().all(|&e| e % 2 == 1);
            all_even || all_odd
        })
        .collect()
}

fn double_sign_flips() -> [Mat4<ExactScalar>; 3] {
    [
        Mat4::from_i64([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]),
        Mat4::from_i64([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]),
        Mat4::from_i64([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]),
    ]
}

/// Sparse row-echelon accumulator over ExactScalar, keyed by leading column.
struct SparseRref {
    /// lead column -> normalized row (sorted, lead coefficient 1)
    rows: BTreeMap<usize, Vec<(usize, ExactScalar)>>,
}

impl SparseRref {
    fn new() -> Self {
        Self {
            rows: BTreeMap::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn sub_scaled(
        row: &[(usize, ExactScalar)],
        factor: &ExactScalar,
        other: &[(usize, ExactScalar)],
    ) -> Vec<(usize, ExactScalar)> {
        // row - factor * other, both sorted by column
        let mut out = Vec::with_capacity(row.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < row.len() || j < other.len() {
            match (row.get(i), other.get(j)) {
                (Some((ca, va)), Some((cb, vb))) => match ca.cmp(cb) {
                    std::cmp::Ordering::Less => {
                        out.push((*ca, va.clone()));
                        i += 1;
                    }
                    std::cmp::Ordering::Greater => {
                        out.push((*cb, -&(factor * vb)));
                        j += 1;
                    }
                    std::cmp::Ordering::Equal => {
                        let v = va - &(factor * vb);
                        if !v.is_zero() {
                            out.push((*ca, v));
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (Some((ca, va)), None) => {
                    out.push((*ca, va.clone()));
                    i += 1;
                }
                (None, Some((cb, vb))) => {
                    out.push((*cb, -&(factor * vb)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        out
    }

    /// Reduce a row against the accumulated basis; absorb the remainder.
    /// The stored rows stay fully reduced: each pivot column appears in
    /// exactly one row.
    fn insert(&mut self, mut row: Vec<(usize, ExactScalar)>) {
        loop {
            let Some((lead, coeff)) = row.first().cloned() else {
                return;
            };
            if let Some(pivot) = self.rows.get(&lead) {
                row = Self::sub_scaled(&row, &coeff, pivot);
            } else {
                let inv = coeff.inverse().expect("nonzero lead");
                for (_, v) in row.iter_mut() {
                    *v = &*v * &inv;
                }
                // clear the remaining pivot columns from the new row; pivot
                // rows hold no other pivot columns, so one pass suffices
                let hits: Vec<(usize, ExactScalar)> = row
                    .iter()
                    .skip(1)
                    .filter(|(c, _)| self.rows.contains_key(c))
                    .map(|(c, v)| (*c, v.clone()))
                    .collect();
                for (col, factor) in hits {
                    row = Self::sub_scaled(&row, &factor, &self.rows[&col]);
                }
                // clear the new pivot column from the existing rows
                let mut updates = Vec::new();
                for (&l, existing) in &self.rows {
                    if let Ok(pos) = existing.binary_search_by_key(&lead, |e| e.0) {
                        let factor = existing[pos].1.clone();
                        updates.push((l, Self::sub_scaled(existing, &factor, &row)));
                    }
                }
                for (l, new_row) in updates {
                    self.rows.insert(l, new_row);
                }
                self.rows.insert(lead, row);
                return;
            }
        }
    }

    /// Canonical kernel basis of the accumulated row space, over `ncols`
    /// columns: one vector per free column.
    fn kernel(&self, ncols: usize) -> Vec<Vec<(usize, ExactScalar)>> {
        let mut out = Vec::new();
        for free in 0..ncols {
            if self.rows.contains_key(&free) {
                continue;
            }
            let mut v = vec![(free, ExactScalar::one())];
            for (&lead, row) in &self.rows {
                if let Ok(pos) = row.binary_search_by_key(&free, |e| e.0) {
                    v.push((lead, -&row[pos].1));
                }
            }
            v.sort_by_key(|e| e.0);
            out.push(v);
        }
        out
    }

    /// Whether a vector lies in the span of the accumulated rows.
    fn contains_in_rowspace(&self, mut row: Vec<(usize, ExactScalar)>) -> bool {
        loop {
            let Some((lead, coeff)) = row.first().cloned() else {
                return true;
            };
            match self.rows.get(&lead) {
                Some(pivot) => row = Self::sub_scaled(&row, &coeff, pivot),
                None => return false,
            }
        }
    }
}

#[doc(hidden)]
pub fn debug_dump_rref(group: &PolyGroup, d: usize) {
    let columns = solver_columns(group, d);
    let rref = constraint_rref(group, &columns);
    for (lead, row) in &rref.rows {
        let entries: Vec<String> = row.iter().map(|(c, v)| format!("{c}:{v}")).collect();
        eprintln!("pivot {lead}: {}", entries.join(", "));
    }
}

/// Basis of the space of degree-`d` invariants of `group`, as the exact
/// null space of the stacked `act(gen) - id` constraints over the degree-`d`
/// monomial space.
pub fn invariant_basis(group: &PolyGroup, d: usize) -> Vec<MultiPoly<ExactScalar>> {
    let columns = solver_columns(group, d);
    if columns.is_empty() {
        return Vec::new();
    }
    let rref = constraint_rref(group, &columns);
    rref.kernel(columns.len())
        .into_iter()
        .map(|v| {
            let mut p = MultiPoly::zero();
            for (col, coeff) in v {
                p.add_term(columns[col], coeff);
            }
            p
        })
        .collect()
}

/// Dimension of the degree-`d` invariant slice (same solve as
/// `invariant_basis`, reported as a count).
pub fn invariant_dimension(group: &PolyGroup, d: usize) -> usize {
    let columns = solver_columns(group, d);
    if columns.is_empty() {
        return 0;
    }
    let rref = constraint_rref(group, &columns);
    columns.len() - rref.rank()
}

/// Membership of `p` in the invariant slice of its degree.
pub fn in_invariant_space(group: &PolyGroup, p: &MultiPoly<ExactScalar>) -> bool {
    let Some(d) = p.homogeneous_degree() else {
        return false;
    };
    let basis = invariant_basis(group, d);
    let mut span = SparseRref::new();
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    let key = |m: &Monomial, index: &mut BTreeMap<Monomial, usize>| {
        let next = index.len();
        *index.entry(*m).or_insert(next)
    };
    for b in &basis {
        let row: Vec<(usize, ExactScalar)> = b
            .terms()
            .map(|(m, c)| (key(m, &mut index), c.clone()))
            .collect();
        let mut sorted = row;
        sorted.sort_by_key(|e| e.0);
        span.insert(sorted);
    }
    let mut row: Vec<(usize, ExactScalar)> = Vec::new();
    for (m, c) in p.terms() {
        if !index.contains_key(m) {
            return false;
        }
        row.push((index[m], c.clone()));
    }
    row.sort_by_key(|e| e.0);
    span.contains_in_rowspace(row)
}

fn solver_columns(group: &PolyGroup, d: usize) -> Vec<Monomial> {
    let flips_in_group = double_sign_flips()
        .iter()
        .all(|m| group.matrix_index().contains_key(m));
    if flips_in_group {
        parity_uniform_monomials(d)
    } else {
        monomials_of_degree(d)
    }
}

fn constraint_rref(group: &PolyGroup, columns: &[Monomial]) -> SparseRref {
    let mut rref = SparseRref::new();
    for gen in group.generators() {
        let mut action = LinearAction::new(&gen.element.so4_matrix());
        // rows of (act(g) - id) on the column space, transposed: one row per
        // output monomial
        let mut rows: BTreeMap<Monomial, Vec<(usize, ExactScalar)>> = BTreeMap::new();
        for (j, mono) in columns.iter().enumerate() {
            let mut image = action.monomial_image(mono);
            image.add_term(*mono, -ExactScalar::one());
            for (m, c) in image.terms() {
                rows.entry(*m).or_default().push((j, c.clone()));
            }
        }
        for (_, mut row) in rows {
            row.sort_by_key(|e| e.0);
            rref.insert(row);
        }
    }
    rref
}

/// Symmetric sum in the squared variables y_i = x_i^2: the orbit of the
/// exponent pattern over injective index assignments.
fn symmetric_sum_y(pattern: &[u8], convention: SumConvention) -> MultiPoly<ExactScalar> {
    let mut p = MultiPoly::zero();
    let mut seen = std::collections::HashSet::new();
    let mut indices = [0usize; 4];
    assign(pattern, 0, &mut [false; 4], &mut indices, &mut |idx| {
        let mut mono = [0u8; 4];
        for (slot, &e) in pattern.iter().enumerate() {
            mono[idx[slot]] = 2 * e;
        }
        match convention {
            SumConvention::DistinctMonomials => {
                if seen.insert(mono) {
                    p.add_term(mono, ExactScalar::one());
                }
            }
            SumConvention::OrderedTuples => p.add_term(mono, ExactScalar::one()),
        }
    });
    p
}

fn assign(
    pattern: &[u8],
    slot: usize,
    used: &mut [bool; 4],
    indices: &mut [usize; 4],
    emit: &mut impl FnMut(&[usize; 4]),
) {
    if slot == pattern.len() {
        emit(indices);
        return;
    }
    for i in 0..4 {
        if !used[i] {
            used[i] = true;
            indices[slot] = i;
            assign(pattern, slot + 1, used, indices, emit);
            used[i] = false;
        }
    }
}

fn s6_for(convention: SumConvention) -> MultiPoly<ExactScalar> {
    symmetric_sum_y(&[3], convention)
        .add(&symmetric_sum_y(&[1, 1, 1], convention).scale(&ExactScalar::from_int(15)))
}

fn s8_for(convention: SumConvention) -> MultiPoly<ExactScalar> {
    symmetric_sum_y(&[4], convention)
        .add(&symmetric_sum_y(&[2, 2], convention).scale(&ExactScalar::from_int(14)))
        .add(&symmetric_sum_y(&[1, 1, 1, 1], convention).scale(&ExactScalar::from_int(168)))
}

fn f_s_for(convention: SumConvention) -> MultiPoly<ExactScalar> {
    let c = ExactScalar::from_int;
    let s = |pat: &[u8]| symmetric_sum_y(pat, convention);
    s(&[5, 1])
        .scale(&c(2))
        .add(&s(&[4, 2]).scale(&c(-6)))
        .add(&s(&[4, 1, 1]).scale(&c(-12)))
        .add(&s(&[3, 3]).scale(&c(14)))
        .add(&s(&[3, 2, 1]).scale(&c(9)))
        .add(&s(&[3, 1, 1, 1]).scale(&c(348)))
        .add(&s(&[2, 2, 2]).scale(&c(30)))
        .add(&s(&[2, 2, 1, 1]).scale(&c(-270)))
}

/// The alternating degree-12 part: explicit 24-term expression in y_i.
fn f_a() -> MultiPoly<ExactScalar> {
    // cube index, sign, and the cyclic (j, k) pairs of y_j^2 y_k - y_j y_k^2
    let blocks: [(usize, i64, [(usize, usize); 3]); 4] = [
        (0, 1, [(1, 2), (2, 3), (3, 1)]),
        (1, -1, [(2, 3), (3, 0), (0, 2)]),
        (2, 1, [(0, 1), (1, 3), (3, 0)]),
        (3, -1, [(0, 1), (1, 2), (2, 0)]),
    ];
    let mut p = MultiPoly::zero();
    for (i, sign, pairs) in blocks {
        for (j, k) in pairs {
            let mut plus = [0u8; 4];
            plus[i] += 6;
            plus[j] += 4;
            plus[k] += 2;
            p.add_term(plus, ExactScalar::from_int(sign));
            let mut minus = [0u8; 4];
            minus[i] += 6;
            minus[j] += 2;
            minus[k] += 4;
            p.add_term(minus, ExactScalar::from_int(-sign));
        }
    }
    p
}

/// The explicit invariants with the summation convention resolved against
/// the group action itself.
pub struct ExplicitInvariants {
    pub q: MultiPoly<ExactScalar>,
    pub s6: MultiPoly<ExactScalar>,
    pub s8: MultiPoly<ExactScalar>,
    pub f_s: MultiPoly<ExactScalar>,
    pub f_a: MultiPoly<ExactScalar>,
    pub s12: MultiPoly<ExactScalar>,
    pub convention: SumConvention,
    pub fa_sign_flipped: bool,
}

impl ExplicitInvariants {
    pub fn s_polynomial(&self, n: usize) -> &MultiPoly<ExactScalar> {
        match n {
            6 => &self.s6,
            8 => &self.s8,
            12 => &self.s12,
            _ => panic!("no explicit invariant of degree {n}"),
        }
    }
}

/// Whether `p` is fixed by every generator of `group`.
pub fn is_invariant(group: &PolyGroup, p: &MultiPoly<ExactScalar>) -> bool {
    group
        .generators()
        .iter()
        .all(|g| act(&g.element.so4_matrix(), p) == *p)
}

fn build_invariants() -> Result<ExplicitInvariants, InvariantError> {
    let g6 = PolyGroup::cached(GroupName::G6);
    let g8 = PolyGroup::cached(GroupName::G8);
    let g12 = PolyGroup::cached(GroupName::G12);
    let coeff33 = ExactScalar::from_basis(0, 0, 33, 0, 1);
    let mut failures = Vec::new();
    for convention in [SumConvention::DistinctMonomials, SumConvention::OrderedTuples] {
        let s6 = s6_for(convention);
        let s8 = s8_for(convention);
        let f_s = f_s_for(convention);
        let f_a = f_a();
        if !is_invariant(g6, &s6) {
            failures.push(format!("{convention:?}: S6 not G6-invariant"));
            continue;
        }
        if !is_invariant(g8, &s8) {
            failures.push(format!("{convention:?}: S8 not G8-invariant"));
            continue;
        }
        for flipped in [false, true] {
            let fa_term = if flipped {
                f_a.scale(&coeff33).neg()
            } else {
                f_a.scale(&coeff33)
            };
            let s12 = f_s.add(&fa_term);
            if is_invariant(g12, &s12) {
                return Ok(ExplicitInvariants {
                    q: MultiPoly::quadric(),
                    s6,
                    s8,
                    f_s,
                    f_a,
                    s12,
                    convention,
                    fa_sign_flipped: flipped,
                });
            }
            failures.push(format!("{convention:?}, flipped={flipped}: S12 not G12-invariant"));
        }
    }
    Err(InvariantError::ConventionUnresolved(failures.join("; ")))
}

/// Cached explicit invariants; panics only if no convention choice passes
/// the invariance oracle (a data or convention bug, not a recoverable state).
pub fn explicit_invariants() -> &'static ExplicitInvariants {
    static CACHE: OnceLock<ExplicitInvariants> = OnceLock::new();
    CACHE.get_or_init(|| build_invariants().expect("summation convention resolution"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{c_matrix, cprime_matrix};
    use crate::scalar::ComplexScalar;

    #[test]
    fn column_compression_counts() {
        assert_eq!(monomials_of_degree(12).len(), 455);
        assert_eq!(parity_uniform_monomials(12).len(), 119);
        assert_eq!(parity_uniform_monomials(6).len(), 24);
        assert!(parity_uniform_monomials(7).is_empty());
    }

    #[test]
    fn convention_resolves_to_distinct_monomials() {
        let inv = explicit_invariants();
        assert_eq!(inv.convention, SumConvention::DistinctMonomials);
        assert!(!inv.fa_sign_flipped);
        assert_eq!(inv.s6.num_terms(), 8);
        assert_eq!(inv.s8.num_terms(), 11);
        assert_eq!(inv.s12.homogeneous_degree(), Some(12));
    }

    #[test]
    fn low_degree_dimensions() {
        let g6 = PolyGroup::cached(GroupName::G6);
        assert_eq!(invariant_dimension(g6, 2), 1);
        assert_eq!(invariant_dimension(g6, 4), 1);
        assert_eq!(invariant_dimension(g6, 6), 2);
        let basis2 = invariant_basis(g6, 2);
        assert!(in_invariant_space(g6, &MultiPoly::quadric()));
        assert_eq!(basis2.len(), 1);
    }

    #[test]
    fn printed_invariants_lie_in_computed_spaces() {
        let inv = explicit_invariants();
        let g6 = PolyGroup::cached(GroupName::G6);
        let g8 = PolyGroup::cached(GroupName::G8);
        assert!(in_invariant_space(g6, &inv.s6));
        assert!(in_invariant_space(g8, &inv.s8));
        let q3 = inv.q.pow(3);
        assert!(in_invariant_space(g6, &q3));
    }

    #[test]
    fn s8_is_fixed_by_both_reflections() {
        let inv = explicit_invariants();
        assert_eq!(act(&c_matrix(), &inv.s8), inv.s8);
        assert_eq!(act(&cprime_matrix(), &inv.s8), inv.s8);
    }

    #[test]
    fn f_a_is_anti_symmetric() {
        let inv = explicit_invariants();
        // odd permutation x2 <-> x3 negates f_a
        assert_eq!(act(&cprime_matrix(), &inv.f_a), inv.f_a.neg());
    }

    #[test]
    fn witness_point_separates_q_and_s() {
        // (i*sqrt2, 1, 1, 0): on the quadric, off every S_n
        let inv = explicit_invariants();
        let pt: [ComplexScalar; 4] = [
            ComplexScalar::new(ExactScalar::zero(), ExactScalar::sqrt2()),
            ComplexScalar::one(),
            ComplexScalar::one(),
            ComplexScalar::zero(),
        ];
        let eval = |p: &MultiPoly<ExactScalar>| p.to_complex().evaluate(&pt);
        assert!(eval(&inv.q).is_zero());
        let minus = |n: i64| ComplexScalar::from_real(ExactScalar::from_int(n));
        assert_eq!(eval(&inv.s6), minus(-36));
        assert_eq!(eval(&inv.s8), minus(144));
        assert_eq!(eval(&inv.s12), minus(-726));
    }
}
