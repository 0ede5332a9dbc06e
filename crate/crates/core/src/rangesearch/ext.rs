// SPDX-License-Identifier: Apache-2.0

use std::fmt;

/// An integer extended with explicit infinities.
///
/// Variant order gives `NegInf < Finite(_) < PosInf`, so the derived `Ord`
/// is the natural one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    NegInf,
    Finite(i64),
    PosInf,
}

impl Ext {
    #[inline]
    pub fn finite(self) -> Option<i64> {
        match self {
            Ext::Finite(v) => Some(v),
            _ => None,
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        matches!(self, Ext::Finite(_))
    }
}

impl From<i64> for Ext {
    fn from(v: i64) -> Self {
        Ext::Finite(v)
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => f.write_str("-inf"),
            Ext::Finite(v) => write!(f, "{v}"),
            Ext::PosInf => f.write_str("+inf"),
        }
    }
}

/// Closed integer interval; `i64::MIN` / `i64::MAX` act as unbounded ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub const ALL: Interval = Interval {
        lo: i64::MIN,
        hi: i64::MAX,
    };

    #[inline]
    pub fn closed(lo: i64, hi: i64) -> Self {
        Interval { lo, hi }
    }

    #[inline]
    pub fn at_least(lo: i64) -> Self {
        Interval { lo, hi: i64::MAX }
    }

    #[inline]
    pub fn at_most(hi: i64) -> Self {
        Interval { lo: i64::MIN, hi }
    }

    #[inline]
    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }
}
