// SPDX-License-Identifier: Apache-2.0

//! Field types usable for rectangle lengths, bounds and costs.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Num;

/// An ordered field that can embed integer coordinates.
///
/// Exact rationals are the intended instantiation. `f64` is provided for
/// experiments where every quantity is a small integer and therefore exact.
pub trait Scalar: Num + Clone + PartialOrd + Debug + Display + Send + Sync + 'static {
    fn from_int(v: i64) -> Self;

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Scalar for Rational64 {
    #[inline]
    fn from_int(v: i64) -> Self {
        Rational64::from_integer(v)
    }
}

impl Scalar for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Scalar for f64 {
    #[inline]
    fn from_int(v: i64) -> Self {
        v as f64
    }
}
