//! Exact-arithmetic toolkit for the bi-polyhedral groups H, G6, G8, G12
//! acting on P3 and their invariant pencils of surfaces.
//!
//! The crate certifies, end to end and in exact arithmetic over
//! Q(sqrt2, sqrt5), the singular members of the three pencils
//! `S_n + lambda * Q^(n/2)` (n = 6, 8, 12), their node counts and incidence
//! configurations — including the degree-12 surface with 600 nodes.

pub mod fixlines;
pub mod golden;
pub mod groups;
pub mod invariants;
pub mod linalg;
pub mod molien;
pub mod pencil;
pub mod poly;
pub mod projective;
pub mod render;
pub mod scalar;
pub mod verify;

pub use scalar::{ComplexScalar, ExactScalar, Rational, Scalar};
