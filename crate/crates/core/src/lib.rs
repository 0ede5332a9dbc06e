// SPDX-License-Identifier: Apache-2.0

//! Geometric covering, min-coordinate diameter, repetition encoding and
//! grammar pattern counting over exact integer and rational arithmetic.
//!
//! The covering solver is generic over a [`Scalar`] for lengths and costs;
//! the aliases below fix the common choices.

pub mod cover;
pub mod diameter;
pub mod encoder;
pub mod error;
pub mod grammar;
pub mod pointset;
pub mod rangesearch;
pub mod scalar;

pub use error::{Error, Result};
pub use pointset::{compute_mbr, normalize_pointset, IndexBox, PointSet, Subset};
pub use scalar::Scalar;

/// Fixed-width exact rational.
pub type Rational = num_rational::Rational64;
/// Arbitrary-precision rational.
pub type BigRational = num_rational::BigRational;

pub type RationalCover<'a> = cover::CoverProblem<'a, Rational>;
pub type BigRationalCover<'a> = cover::CoverProblem<'a, BigRational>;
pub type FloatCover<'a> = cover::CoverProblem<'a, f64>;
