//! Reference values the toolkit certifies against: group orders, Poincare
//! series, singular-member tables, fix-line counts, incidence
//! configurations and counting bounds.

use crate::groups::GroupName;

pub const GROUP_ORDERS: [(GroupName, usize); 4] = [
    (GroupName::H, 32),
    (GroupName::G6, 288),
    (GroupName::G8, 1152),
    (GroupName::G12, 7200),
];

/// (base group, with C', order) for the extensions by C (and C').
pub const EXTENSION_ORDERS: [(GroupName, bool, usize); 3] = [
    (GroupName::G6, false, 576),
    (GroupName::G6, true, 1152),
    (GroupName::G12, false, 14400),
];

/// Poincare series coefficients at even degrees 0, 2, ..., 14.
pub fn molien_even_coefficients(name: GroupName) -> [u64; 8] {
    match name {
        GroupName::H => [1, 1, 5, 6, 15, 19, 35, 44],
        GroupName::G6 => [1, 1, 1, 2, 3, 3, 7, 8],
        GroupName::G8 => [1, 1, 1, 1, 2, 2, 3, 3],
        GroupName::G12 => [1, 1, 1, 1, 1, 1, 2, 2],
    }
}

/// lambda (as numerator, denominator) and orbit size of each singular
/// member, in increasing lambda order.
pub fn singular_table(n: usize) -> [((i64, i64), usize); 4] {
    match n {
        6 => [((-1, 1), 12), ((-2, 3), 48), ((-7, 12), 48), ((-1, 4), 12)],
        8 => [((-1, 1), 24), ((-3, 4), 72), ((-9, 16), 144), ((-5, 9), 96)],
        12 => [((-3, 32), 300), ((-22, 243), 600), ((-2, 25), 360), ((0, 1), 60)],
        _ => panic!("no pencil of degree {n}"),
    }
}

/// Distinct fix-line counts per family, descending. For G8 the two
/// 36-line families are mirror images of each other under C.
pub fn fixline_counts(name: GroupName) -> &'static [usize] {
    match name {
        GroupName::H => panic!("no reference fix-line table for H"),
        GroupName::G6 => &[18, 16, 16],
        GroupName::G8 => &[72, 36, 36, 32, 18],
        GroupName::G12 => &[450, 200, 72],
    }
}

/// One incidence configuration row:
/// (family line count, lambda, points, lines per point, points per line).
pub type ConfigRow = (usize, (i64, i64), usize, usize, usize);

pub fn configuration_table(n: usize) -> Vec<ConfigRow> {
    match n {
        6 => vec![
            (18, (-1, 1), 12, 3, 2),
            (18, (-1, 4), 12, 3, 2),
            (16, (-1, 1), 12, 4, 3),
            (16, (-2, 3), 48, 1, 3),
            (16, (-7, 12), 48, 1, 3),
            (16, (-1, 4), 12, 4, 3),
        ],
        8 => vec![
            (18, (-1, 1), 24, 3, 4),
            (18, (-3, 4), 72, 1, 4),
            (32, (-1, 1), 24, 4, 3),
            (32, (-5, 9), 96, 1, 3),
            // the mirror pair of 36-line families carries identical rows
            (36, (-3, 4), 72, 2, 4),
            (36, (-9, 16), 144, 1, 4),
            (36, (-3, 4), 72, 2, 4),
            (36, (-9, 16), 144, 1, 4),
            (72, (-1, 1), 24, 6, 2),
            (72, (-9, 16), 144, 1, 2),
            (72, (-5, 9), 96, 3, 4),
        ],
        12 => vec![
            (450, (-3, 32), 300, 3, 2),
            (450, (-22, 243), 600, 3, 4),
            (450, (-2, 25), 360, 5, 4),
            (450, (0, 1), 60, 15, 2),
            (200, (-3, 32), 300, 4, 6),
            (200, (-22, 243), 600, 1, 3),
            (200, (0, 1), 60, 10, 3),
            (72, (-2, 25), 360, 1, 5),
            (72, (0, 1), 60, 6, 5),
        ],
        _ => panic!("no pencil of degree {n}"),
    }
}

/// (n, naive singular bound (n/2)(n-1)^2, generic orbit length).
pub const BOUNDS: [(usize, usize, usize); 3] = [(6, 75, 144), (8, 196, 576), (12, 726, 3600)];

pub const MU12_CONTEXT: &str = "600 <= mu(12) <= 645";
