//! Combinatorics and geometry of SL(2,C) representations of the free group
//! on two generators.
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! * [`fraction`], [`word`], [`farey`]: Farey arithmetic on `Q ∪ {∞}`, the
//!   standard primitive words `w_{p/q}`, mod-2 types and palindromic
//!   representatives with respect to the three basic generator pairs.
//! * [`markoff`], [`tree`], [`bq`], [`growth`]: Markoff maps on the Farey
//!   tree, edge orientations, a certified semi-decision procedure for the
//!   Bowditch BQ-conditions and growth/arrow diagnostics.
//! * [`geometry`]: matrices in SL(2,C), points and oriented lines of the
//!   upper half-space, line matrices, complex distances, right-angled
//!   hexagons, broken geodesics and half-space nesting.
//! * [`analysis`]: finite-depth verifiers for primitive stability, the
//!   bounded intersection property, angle decay and palindromic chains.
#![no_std]
// `!(x > y)` is used on purpose so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod analysis;
pub mod bq;
mod error;
pub mod farey;
pub mod fraction;
pub mod geometry;
pub mod growth;
pub mod markoff;
pub mod tree;
pub mod word;

pub use error::{Error, Result};
pub use fraction::Fraction;
pub use markoff::MarkoffTriple;
pub use word::Word;

/// Complex double used for every trace and boundary point.
pub type C64 = num_complex::Complex64;
