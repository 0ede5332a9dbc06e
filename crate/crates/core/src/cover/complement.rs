// SPDX-License-Identifier: Apache-2.0

//! Points left uncovered by a rectangle, and their bounding box.
//!
//! Everything runs in rank space. For integer coordinates,
//! `xc < xmin` holds exactly when `rank < lo` where `lo` is the first rank
//! whose value is `>= xmin`, and `xc > xmax` exactly when `rank > hi` for
//! the last rank whose value is `<= xmax`.

use super::model::GeoRect;
use crate::error::Result;
use crate::pointset::{mbr_of_ids, IndexBox, PointSet, Subset};
use crate::rangesearch::{build_presorted, membership, Ext, HalfspaceIndex, Interval, KeySpace, PosLookup, RangeTree, Side};
use crate::scalar::Scalar;

/// Rank interval of a rectangle per dimension. `lo > hi` in some dimension
/// means no coordinate value of that dimension falls inside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankWindow {
    pub lo: Vec<usize>,
    pub hi: Vec<usize>,
}

impl RankWindow {
    pub fn of_rect<S: Scalar>(ps: &PointSet, rect: &GeoRect<S>) -> Self {
        let d = ps.dim();
        let mut lo = Vec::with_capacity(d);
        let mut hi = Vec::with_capacity(d);
        for i in 0..d {
            let xp = ps.xp(i);
            lo.push(xp.partition_point(|&x| S::from_int(x) < rect.xmin[i]) + 1);
            hi.push(xp.partition_point(|&x| S::from_int(x) <= rect.xmax[i]));
        }
        RankWindow { lo, hi }
    }

    #[inline]
    pub fn contains(&self, ranks: &[usize]) -> bool {
        ranks
            .iter()
            .enumerate()
            .all(|(i, &k)| self.lo[i] <= k && k <= self.hi[i])
    }

    fn is_void(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(a, b)| a > b)
    }
}

/// Rank-space range tree over a subset, for reporting the `3^d - 1` outer
/// regions of a rectangle.
#[derive(Debug, Clone)]
pub struct RegionIndex {
    tree: RangeTree,
    ids: Vec<usize>,
}

impl RegionIndex {
    pub fn build(ps: &PointSet, s: &Subset) -> Self {
        Self::from_ids(ps, s.ids())
    }

    pub(crate) fn from_ids(ps: &PointSet, ids: &[usize]) -> Self {
        let d = ps.dim();
        let mut coords = Vec::with_capacity(ids.len() * d);
        for &p in ids {
            coords.extend(ps.ranks(p).iter().map(|&k| k as i64));
        }
        RegionIndex {
            tree: RangeTree::from_flat(d, coords, vec![0; ids.len()], true),
            ids: ids.to_vec(),
        }
    }

    /// Ids outside the window, appended to `out` in ascending order.
    pub(crate) fn outside(&self, w: &RankWindow, out: &mut Vec<usize>) {
        out.clear();
        if w.is_void() {
            out.extend_from_slice(&self.ids);
            return;
        }
        let d = w.lo.len();
        let mut regions = 1usize;
        for _ in 0..d {
            regions *= 3;
        }
        let middle = (regions - 1) / 2;
        let mut boxq = vec![Interval::ALL; d];
        for code in 0..regions {
            if code == middle {
                continue;
            }
            let mut c = code;
            for i in 0..d {
                let (lo, hi) = (w.lo[i] as i64, w.hi[i] as i64);
                boxq[i] = match c % 3 {
                    0 => Interval::at_most(lo - 1),
                    1 => Interval::closed(lo, hi),
                    _ => Interval::at_least(hi + 1),
                };
                c /= 3;
            }
            self.tree.report_into(&boxq, out);
        }
        for v in out.iter_mut() {
            *v = self.ids[*v];
        }
        out.sort_unstable();
    }
}

/// The `d^2` structures `DS_{j,k}` over a subset, with optional precomputed
/// split positions for every rank bound.
#[derive(Debug, Clone)]
pub struct HalfspaceSet {
    d: usize,
    index: Vec<HalfspaceIndex>,
    below: Vec<Option<PosLookup>>,
    above: Vec<Option<PosLookup>>,
}

impl HalfspaceSet {
    pub fn build(ps: &PointSet, s: &Subset, lookups: bool) -> Result<Self> {
        if s.is_empty() {
            return Err(crate::Error::EmptySubset);
        }
        Ok(Self::from_member(ps, &membership(ps, s), lookups))
    }

    pub(crate) fn from_ids(ps: &PointSet, ids: &[usize], lookups: bool) -> Self {
        let mut member = vec![false; ps.len()];
        for &p in ids {
            member[p] = true;
        }
        Self::from_member(ps, &member, lookups)
    }

    fn from_member(ps: &PointSet, member: &[bool], lookups: bool) -> Self {
        let d = ps.dim();
        let mut index = Vec::with_capacity(d * d);
        for j in 0..d {
            for k in 0..d {
                index.push(build_presorted(ps, member, j, k, KeySpace::Ranks));
            }
        }
        let mut below = Vec::with_capacity(d);
        let mut above = Vec::with_capacity(d);
        for j in 0..d {
            if lookups {
                // Every rank bound that a rectangle in this dimension can produce.
                let cands: Vec<i64> = (0..=ps.distinct(j) as i64 + 1).collect();
                let h = &index[j * d];
                below.push(Some(PosLookup::build(h, &cands, Side::Below).expect("sorted")));
                above.push(Some(PosLookup::build(h, &cands, Side::Above).expect("sorted")));
            } else {
                below.push(None);
                above.push(None);
            }
        }
        HalfspaceSet {
            d,
            index,
            below,
            above,
        }
    }

    pub fn get(&self, j: usize, k: usize) -> &HalfspaceIndex {
        &self.index[j * self.d + k]
    }

    #[inline]
    fn split(&self, j: usize, side: Side, bound: usize) -> usize {
        let lookup = match side {
            Side::Below => &self.below[j],
            Side::Above => &self.above[j],
        };
        let bound = bound as i64;
        lookup
            .as_ref()
            .and_then(|l| l.get(bound))
            .unwrap_or_else(|| self.index[j * self.d].position(side, bound))
    }

    /// Bounding box of the indexed points outside the window, from `2d`
    /// half-space queries per weight dimension. `None` when every query hits
    /// a sentinel, i.e. nothing is outside.
    pub(crate) fn outside_mbr(&self, w: &RankWindow, below: &mut [usize], above: &mut [usize]) -> Option<IndexBox> {
        let d = self.d;
        for j in 0..d {
            below[j] = self.split(j, Side::Below, w.lo[j]);
            above[j] = self.split(j, Side::Above, w.hi[j]);
        }
        let mut lo = Vec::with_capacity(d);
        let mut hi = Vec::with_capacity(d);
        for k in 0..d {
            let mut mn = Ext::PosInf;
            let mut mx = Ext::NegInf;
            for j in 0..d {
                let h = &self.index[j * d + k];
                let (a, b) = h.extrema_at(Side::Below, below[j]);
                let (c, e) = h.extrema_at(Side::Above, above[j]);
                mn = mn.min(a).min(c);
                mx = mx.max(b).max(e);
            }
            match (mn, mx) {
                (Ext::Finite(a), Ext::Finite(b)) => {
                    lo.push(a as usize);
                    hi.push(b as usize);
                }
                _ => return None,
            }
        }
        Some(IndexBox { lo, hi })
    }
}

pub enum ComplementStrategy<'a> {
    Scan,
    Regions(&'a RegionIndex),
}

pub enum MbrStrategy<'a> {
    Scan,
    Halfspace(&'a HalfspaceSet),
}

pub(crate) fn scan_outside(ps: &PointSet, ids: &[usize], w: &RankWindow, out: &mut Vec<usize>) {
    out.clear();
    out.extend(ids.iter().copied().filter(|&p| !w.contains(ps.ranks(p))));
}

/// Members of `s` outside the closed rectangle.
pub fn complement_of_rect<S: Scalar>(
    ps: &PointSet,
    s: &Subset,
    rect: &GeoRect<S>,
    strategy: ComplementStrategy<'_>,
) -> Subset {
    let w = RankWindow::of_rect(ps, rect);
    let mut out = Vec::new();
    match strategy {
        ComplementStrategy::Scan => scan_outside(ps, s.ids(), &w, &mut out),
        ComplementStrategy::Regions(rt) => rt.outside(&w, &mut out),
    }
    Subset::from_sorted_unchecked(out)
}

/// Bounding box of the members of `s` outside the rectangle; `None` when
/// the rectangle covers all of `s`.
pub fn complement_mbr<S: Scalar>(
    ps: &PointSet,
    s: &Subset,
    rect: &GeoRect<S>,
    strategy: MbrStrategy<'_>,
) -> Option<IndexBox> {
    let w = RankWindow::of_rect(ps, rect);
    match strategy {
        MbrStrategy::Scan => {
            let mut out = Vec::new();
            scan_outside(ps, s.ids(), &w, &mut out);
            mbr_of_ids(ps, &out)
        }
        MbrStrategy::Halfspace(hs) => {
            let d = ps.dim();
            hs.outside_mbr(&w, &mut vec![0; d], &mut vec![0; d])
        }
    }
}
