// SPDX-License-Identifier: Apache-2.0

//! Diameter under `dist(p, q) = min_i |p_i - q_i|`.
//!
//! `feasible(D)` holds when some pair is strictly farther than `D` apart,
//! so the diameter is the least `D` for which it fails.

mod count;
mod exist;
mod sweep;

use std::fmt;
use std::str::FromStr;

pub use sweep::{sweep_events, DepartedExtrema, EventKind, SweepEvent};

use crate::error::{Error, Result};
use crate::pointset::PointSet;

pub fn minvar_distance(p: &[i64], q: &[i64]) -> Result<i64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            row: 1,
            expected: p.len(),
            found: q.len(),
        });
    }
    Ok(dist(p, q))
}

#[inline]
fn dist(p: &[i64], q: &[i64]) -> i64 {
    p.iter().zip(q).map(|(a, b)| (a - b).abs()).min().unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiamResult {
    pub value: i64,
    pub witness: Option<(usize, usize)>,
}

fn require_pair(ps: &PointSet) -> Result<()> {
    if ps.len() < 2 {
        Err(Error::NoPair)
    } else {
        Ok(())
    }
}

fn require_dist(dist: i64) -> Result<()> {
    if dist < 0 {
        return Err(Error::ValueOutOfRange {
            value: dist,
            lo: 0,
            hi: i64::MAX,
        });
    }
    Ok(())
}

/// All pairs; the first maximal pair in `(i, j)` order is the witness.
pub fn diameter_bruteforce(ps: &PointSet) -> Result<DiamResult> {
    require_pair(ps)?;
    let mut best = DiamResult {
        value: -1,
        witness: None,
    };
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            let v = dist(ps.point(i), ps.point(j));
            if v > best.value {
                best = DiamResult {
                    value: v,
                    witness: Some((i, j)),
                };
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Static,
    Sweep,
}

/// `np[i]`: number of points within distance `dist` of point `i`,
/// including `i`.
pub fn np_counts(ps: &PointSet, dist: i64, method: CountMethod) -> Result<Vec<usize>> {
    require_dist(dist)?;
    Ok(match method {
        CountMethod::Static => count::np_static(ps, dist),
        CountMethod::Sweep => count::np_sweep(ps, dist),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    CountStatic,
    CountSweep,
    Exist,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::CountStatic, Method::CountSweep, Method::Exist];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::CountStatic => "count-rtree",
            Method::CountSweep => "count-sweep",
            Method::Exist => "exist",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "count-rtree" | "count-static" => Ok(Method::CountStatic),
            "count-sweep" => Ok(Method::CountSweep),
            "exist" => Ok(Method::Exist),
            _ => Err(Error::InvalidConfig(format!("unknown diameter method '{s}'"))),
        }
    }
}

/// True when some pair is more than `dist` apart.
pub fn feasible(ps: &PointSet, dist: i64, method: Method) -> Result<bool> {
    require_pair(ps)?;
    require_dist(dist)?;
    Ok(feasible_unchecked(ps, dist, method))
}

fn feasible_unchecked(ps: &PointSet, dist: i64, method: Method) -> bool {
    let r = ps.len();
    match method {
        Method::CountStatic => count::np_static(ps, dist).into_iter().any(|c| c < r),
        Method::CountSweep => count::np_sweep(ps, dist).into_iter().any(|c| c < r),
        Method::Exist => exist::far_pair(ps, dist).is_some(),
    }
}

/// A pair strictly farther than `dist` apart, in ascending id order.
pub fn far_pair(ps: &PointSet, dist: i64) -> Result<Option<(usize, usize)>> {
    require_pair(ps)?;
    require_dist(dist)?;
    Ok(exist::far_pair(ps, dist).map(|(a, b)| (a.min(b), a.max(b))))
}

/// Binary search for the least infeasible distance over
/// `[0, max per-dimension spread]`. With `witness`, one more existence
/// sweep at `value - 1` recovers a pair attaining the value.
pub fn diameter_search(ps: &PointSet, method: Method, witness: bool) -> Result<DiamResult> {
    require_pair(ps)?;
    let spread = (0..ps.dim())
        .map(|i| {
            let xp = ps.xp(i);
            xp[xp.len() - 1] - xp[0]
        })
        .max()
        .unwrap_or(0);
    // feasible(spread) is always false.
    let (mut lo, mut hi) = (0i64, spread);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if feasible_unchecked(ps, mid, method) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let witness = if witness && lo > 0 {
        far_pair(ps, lo - 1)?
    } else {
        None
    };
    Ok(DiamResult { value: lo, witness })
}
