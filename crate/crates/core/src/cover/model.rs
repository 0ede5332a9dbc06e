// SPDX-License-Identifier: Apache-2.0

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::scalar::Scalar;

/// A non-negative cost, or `Infinite` for an infeasible placement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cost<S> {
    Finite(S),
    Infinite,
}

impl<S: Scalar> Cost<S> {
    pub fn zero() -> Self {
        Cost::Finite(S::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cost::Finite(_))
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            Cost::Finite(v) => Some(v),
            Cost::Infinite => None,
        }
    }

    /// Strict improvement test used by the optimizer.
    #[inline]
    pub fn lt(&self, other: &Cost<S>) -> bool {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => a < b,
            (Cost::Finite(_), Cost::Infinite) => true,
            _ => false,
        }
    }
}

impl<S: Scalar> PartialOrd for Cost<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => a.partial_cmp(b),
            (Cost::Finite(_), Cost::Infinite) => Some(Ordering::Less),
            (Cost::Infinite, Cost::Finite(_)) => Some(Ordering::Greater),
            (Cost::Infinite, Cost::Infinite) => Some(Ordering::Equal),
        }
    }
}

impl<S: fmt::Display> fmt::Display for Cost<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(v) => write!(f, "{v}"),
            Cost::Infinite => f.write_str("inf"),
        }
    }
}

/// Dimension grouping, per-dimension scale factors and per-group length
/// bounds. Side length in dimension `i` is `f(i) * l(g(i))`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupConfig<S> {
    groups: Vec<usize>,
    group_count: usize,
    factors: Vec<S>,
    unit: Vec<bool>,
    lmin: Vec<S>,
    lmax: Vec<Option<S>>,
}

impl<S: Scalar> GroupConfig<S> {
    /// `groups[i]` is the 0-based group of dimension `i`; `lmax` of `None`
    /// means unbounded.
    pub fn new(groups: Vec<usize>, factors: Vec<S>, lmin: Vec<S>, lmax: Vec<Option<S>>) -> Result<Self> {
        let d = groups.len();
        if d == 0 {
            return Err(Error::InvalidConfig("no dimensions".into()));
        }
        if factors.len() != d {
            return Err(Error::InvalidConfig(format!(
                "{} factors for {d} dimensions",
                factors.len()
            )));
        }
        let e = lmin.len();
        if lmax.len() != e {
            return Err(Error::InvalidConfig(format!(
                "{e} lower bounds but {} upper bounds",
                lmax.len()
            )));
        }
        if let Some(&g) = groups.iter().find(|&&g| g >= e) {
            return Err(Error::InvalidConfig(format!(
                "group {} referenced but only {e} groups configured",
                g + 1
            )));
        }
        if let Some(f) = factors.iter().find(|f| **f <= S::zero()) {
            return Err(Error::InvalidConfig(format!("factor {f} is not positive")));
        }
        for (j, lo) in lmin.iter().enumerate() {
            if *lo < S::zero() {
                return Err(Error::InvalidConfig(format!("lmin of group {} is negative", j + 1)));
            }
            if let Some(hi) = &lmax[j] {
                if hi < lo {
                    return Err(Error::InvalidConfig(format!(
                        "group {}: lmin {lo} exceeds lmax {hi}",
                        j + 1
                    )));
                }
            }
        }
        let unit = factors.iter().map(|f| f.is_one()).collect();
        Ok(GroupConfig {
            groups,
            group_count: e,
            factors,
            unit,
            lmin,
            lmax,
        })
    }

    /// Every dimension in its own group, unit factors, no length bounds.
    pub fn separate(d: usize) -> Self {
        Self::new(
            (0..d).collect(),
            vec![S::one(); d],
            vec![S::zero(); d],
            vec![None; d],
        )
        .expect("default configuration is valid")
    }

    pub fn dim(&self) -> usize {
        self.groups.len()
    }

    pub fn group_count(&self) -> usize {
        self.group_count
    }

    #[inline]
    pub fn group_of(&self, i: usize) -> usize {
        self.groups[i]
    }

    pub fn groups(&self) -> &[usize] {
        &self.groups
    }

    #[inline]
    pub fn factor(&self, i: usize) -> &S {
        &self.factors[i]
    }

    #[inline]
    pub fn lmin(&self, j: usize) -> &S {
        &self.lmin[j]
    }

    #[inline]
    pub fn lmax(&self, j: usize) -> Option<&S> {
        self.lmax[j].as_ref()
    }

    #[inline]
    pub(crate) fn within_max(&self, j: usize, l: &S) -> bool {
        self.lmax[j].as_ref().is_none_or(|hi| l <= hi)
    }

    /// `f(i) * l`.
    #[inline]
    pub(crate) fn side(&self, i: usize, l: &S) -> S {
        if self.unit[i] {
            l.clone()
        } else {
            self.factors[i].clone() * l.clone()
        }
    }

    /// `v / f(i)`.
    #[inline]
    pub(crate) fn unscale(&self, i: usize, v: S) -> S {
        if self.unit[i] {
            v
        } else {
            v / self.factors[i].clone()
        }
    }
}

/// A placed hyper-rectangle with its chosen per-group lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct GeoRect<S> {
    pub xmin: Vec<S>,
    pub xmax: Vec<S>,
    pub lengths: Vec<S>,
}

impl<S: Scalar> GeoRect<S> {
    pub fn dim(&self) -> usize {
        self.xmin.len()
    }

    pub fn sides(&self) -> Vec<S> {
        self.xmin
            .iter()
            .zip(&self.xmax)
            .map(|(a, b)| b.clone() - a.clone())
            .collect()
    }

    /// Closed containment of an integer point.
    pub fn contains(&self, p: &[i64]) -> bool {
        p.iter().enumerate().all(|(i, &x)| {
            let x = S::from_int(x);
            self.xmin[i] <= x && x <= self.xmax[i]
        })
    }

    /// Checks the length equations and bounds against `cfg`.
    pub fn satisfies(&self, cfg: &GroupConfig<S>) -> bool {
        if self.lengths.len() != cfg.group_count() || self.dim() != cfg.dim() {
            return false;
        }
        let bounds = self.lengths.iter().enumerate().all(|(j, l)| {
            l >= cfg.lmin(j) && cfg.lmax(j).is_none_or(|hi| l <= hi)
        });
        bounds
            && (0..self.dim()).all(|i| {
                self.xmax[i].clone() - self.xmin[i].clone()
                    == cfg.factor(i).clone() * self.lengths[cfg.group_of(i)].clone()
            })
    }
}

/// Points covered by a rectangle, for cost models that inspect them.
#[derive(Debug, Clone, Copy)]
pub struct Covered<'a> {
    pub points: &'a PointSet,
    pub ids: &'a [usize],
}

/// Cost of one rectangle. Receives only side lengths, so it cannot depend on
/// the rectangle's position. Must be non-negative and non-decreasing in each
/// side length.
pub trait CostModel<S> {
    /// When `false`, `cost` is always called with `covered = None`.
    fn depends_on_points(&self) -> bool {
        false
    }

    fn cost(&self, sides: &[S], covered: Option<Covered<'_>>) -> Cost<S>;
}

/// Product of side lengths.
#[derive(Debug, Clone, Copy, Default)]
pub struct Volume;

impl<S: Scalar> CostModel<S> for Volume {
    #[inline]
    fn cost(&self, sides: &[S], _: Option<Covered<'_>>) -> Cost<S> {
        Cost::Finite(volume_of(sides))
    }
}

#[inline]
pub(crate) fn volume_of<S: Scalar>(sides: &[S]) -> S {
    if sides.iter().any(|s| s.is_zero()) {
        return S::zero();
    }
    sides.iter().fold(S::one(), |acc, s| acc * s.clone())
}

/// Exact volume of a placed rectangle.
pub fn volume_cost<S: Scalar>(rect: &GeoRect<S>) -> S {
    volume_of(&rect.sides())
}

/// Commutative aggregation of rectangle costs with an identity element.
pub trait AggModel<S> {
    fn identity(&self) -> Cost<S>;
    fn combine(&self, a: &Cost<S>, b: &Cost<S>) -> Cost<S>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Sum;

impl<S: Scalar> AggModel<S> for Sum {
    fn identity(&self) -> Cost<S> {
        Cost::zero()
    }

    #[inline]
    fn combine(&self, a: &Cost<S>, b: &Cost<S>) -> Cost<S> {
        match (a, b) {
            (Cost::Finite(x), Cost::Finite(y)) => Cost::Finite(x.clone() + y.clone()),
            _ => Cost::Infinite,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Max;

impl<S: Scalar> AggModel<S> for Max {
    fn identity(&self) -> Cost<S> {
        Cost::zero()
    }

    #[inline]
    fn combine(&self, a: &Cost<S>, b: &Cost<S>) -> Cost<S> {
        match (a, b) {
            (Cost::Finite(x), Cost::Finite(y)) => {
                Cost::Finite(if y > x { y.clone() } else { x.clone() })
            }
            _ => Cost::Infinite,
        }
    }
}
