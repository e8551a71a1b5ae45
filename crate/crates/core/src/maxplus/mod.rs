//! The max-plus semiring over `Q ∪ {-inf, +inf}` and matrices over it.
//!
//! `oplus` is maximum with neutral `-inf`; `otimes` is addition with neutral
//! `0`. `-inf` absorbs `otimes`: `a ⊗ -inf = -inf` for every `a`, including
//! `+inf`. All arithmetic is exact (arbitrary-precision rationals), so sign
//! tests on path weights are reliable.

mod closure;
mod matrix;
mod scalar;

pub use closure::{kleene_star, StarResult};
pub use matrix::TropicalMatrix;
pub use scalar::ExtendedRational;

pub(crate) use closure::{scale_finite_entries, ScaledWeight};
