// SPDX-License-Identifier: Apache-2.0

//! Half-space weight extrema over one sorted coordinate.
//!
//! A [`HalfspaceIndex`] answers "min/max weight among the points whose key is
//! strictly below (above) a bound" with one binary search and a read of a
//! prefix (suffix) array. Position 0 and `r' + 1` are the implicit `-inf` and
//! `+inf` sentinel points.

use std::collections::HashMap;

use super::ext::Ext;
use crate::error::{Error, Result};
use crate::pointset::{PointSet, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Keys strictly below the bound.
    Below,
    /// Keys strictly above the bound.
    Above,
}

/// Which per-point value serves as the sort key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeySpace {
    Coords,
    Ranks,
}

#[derive(Debug, Clone)]
pub struct HalfspaceIndex {
    keys: Vec<i64>,
    order: Vec<usize>,
    pmin: Vec<Ext>,
    pmax: Vec<Ext>,
    smin: Vec<Ext>,
    smax: Vec<Ext>,
}

impl HalfspaceIndex {
    /// Builds from `(key, weight, id)` triples in any order.
    pub fn from_entries(mut entries: Vec<(i64, i64, usize)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySubset);
        }
        entries.sort_by_key(|&(k, _, id)| (k, id));
        Ok(Self::from_sorted(entries))
    }

    fn from_sorted(entries: Vec<(i64, i64, usize)>) -> Self {
        let n = entries.len();
        let mut pmin = vec![Ext::PosInf; n + 2];
        let mut pmax = vec![Ext::NegInf; n + 2];
        let mut smin = vec![Ext::PosInf; n + 2];
        let mut smax = vec![Ext::NegInf; n + 2];
        for i in 1..=n {
            let w = Ext::Finite(entries[i - 1].1);
            pmin[i] = pmin[i - 1].min(w);
            pmax[i] = pmax[i - 1].max(w);
        }
        for i in (1..=n).rev() {
            let w = Ext::Finite(entries[i - 1].1);
            smin[i] = smin[i + 1].min(w);
            smax[i] = smax[i + 1].max(w);
        }
        HalfspaceIndex {
            keys: entries.iter().map(|e| e.0).collect(),
            order: entries.iter().map(|e| e.2).collect(),
            pmin,
            pmax,
            smin,
            smax,
        }
    }

    /// Number of indexed points `r'`.
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Sorted keys, positions `1..=r'` (index 0 of the slice is position 1).
    pub fn keys(&self) -> &[i64] {
        &self.keys
    }

    /// Point ids in key order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn prefix_min(&self) -> &[Ext] {
        &self.pmin
    }

    pub fn prefix_max(&self) -> &[Ext] {
        &self.pmax
    }

    pub fn suffix_min(&self) -> &[Ext] {
        &self.smin
    }

    pub fn suffix_max(&self) -> &[Ext] {
        &self.smax
    }

    /// Split position for `bound`: for `Below` the largest `pos` in `0..=r'`
    /// with `key(pos) < bound`; for `Above` the smallest `pos` in `1..=r'+1`
    /// with `key(pos) > bound`.
    #[inline]
    pub fn position(&self, side: Side, bound: i64) -> usize {
        match side {
            Side::Below => self.keys.partition_point(|&k| k < bound),
            Side::Above => self.keys.partition_point(|&k| k <= bound) + 1,
        }
    }

    /// Weight extrema of the strict half-space at a known split position.
    #[inline]
    pub fn extrema_at(&self, side: Side, pos: usize) -> (Ext, Ext) {
        match side {
            Side::Below => (self.pmin[pos], self.pmax[pos]),
            Side::Above => (self.smin[pos], self.smax[pos]),
        }
    }

    /// `(min, max)` weight of the points strictly on `side` of `bound`;
    /// `(PosInf, NegInf)` when that side is empty.
    pub fn extrema(&self, side: Side, bound: i64, lookup: Option<&PosLookup>) -> (Ext, Ext) {
        debug_assert!(lookup.is_none_or(|l| l.side == side));
        let pos = lookup
            .and_then(|l| l.get(bound))
            .unwrap_or_else(|| self.position(side, bound));
        self.extrema_at(side, pos)
    }
}

/// Builds `DS_{j,k}`: points of `s` sorted along dimension `j`, weighted by
/// their rank in dimension `k`. Uses the point set's presorted axis order.
pub fn build_halfspace_index(
    ps: &PointSet,
    s: &Subset,
    j: usize,
    k: usize,
    keys: KeySpace,
) -> Result<HalfspaceIndex> {
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(bad) = s.iter().find(|&p| p >= ps.len()) {
        return Err(Error::InvalidPointId(bad));
    }
    Ok(build_presorted(ps, &membership(ps, s), j, k, keys))
}

pub(crate) fn membership(ps: &PointSet, s: &Subset) -> Vec<bool> {
    let mut member = vec![false; ps.len()];
    for p in s.iter() {
        member[p] = true;
    }
    member
}

pub(crate) fn build_presorted(
    ps: &PointSet,
    member: &[bool],
    j: usize,
    k: usize,
    keys: KeySpace,
) -> HalfspaceIndex {
    let entries = ps
        .axis_order(j)
        .iter()
        .filter(|&&p| member[p])
        .map(|&p| {
            let key = match keys {
                KeySpace::Coords => ps.coord(p, j),
                KeySpace::Ranks => ps.rank(p, j) as i64,
            };
            (key, ps.rank(p, k) as i64, p)
        })
        .collect();
    HalfspaceIndex::from_sorted(entries)
}

/// Precomputed split positions for a known set of bound values.
#[derive(Debug, Clone)]
pub struct PosLookup {
    side: Side,
    table: Table,
}

/// A contiguous run of candidates is stored as a plain array.
#[derive(Debug, Clone)]
enum Table {
    Dense { base: i64, pos: Vec<usize> },
    Hashed(HashMap<i64, usize>),
}

impl PosLookup {
    /// One merge pass over `candidates` (ascending) against the sorted keys.
    pub fn build(h: &HalfspaceIndex, candidates: &[i64], side: Side) -> Result<Self> {
        if candidates.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::UnsortedCandidates);
        }
        let keys = &h.keys;
        let n = keys.len();
        let mut found = Vec::with_capacity(candidates.len());
        match side {
            Side::Below => {
                let mut pos = 0;
                for &v in candidates {
                    while pos < n && keys[pos] < v {
                        pos += 1;
                    }
                    found.push(pos);
                }
            }
            Side::Above => {
                let mut pos = n + 1;
                for &v in candidates.iter().rev() {
                    while pos > 1 && keys[pos - 2] > v {
                        pos -= 1;
                    }
                    found.push(pos);
                }
                found.reverse();
            }
        }
        let contiguous = candidates.windows(2).all(|w| w[1] == w[0] + 1);
        let table = match candidates.first() {
            Some(&base) if contiguous => Table::Dense { base, pos: found },
            _ => Table::Hashed(candidates.iter().copied().zip(found).collect()),
        };
        Ok(PosLookup { side, table })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    #[inline]
    pub fn get(&self, bound: i64) -> Option<usize> {
        match &self.table {
            Table::Dense { base, pos } => {
                let off = bound.checked_sub(*base)?;
                usize::try_from(off).ok().and_then(|o| pos.get(o).copied())
            }
            Table::Hashed(map) => map.get(&bound).copied(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> HalfspaceIndex {
        HalfspaceIndex::from_entries(vec![(1, 10, 0), (3, 7, 1), (5, 9, 2)]).unwrap()
    }

    #[test]
    fn prefix_arrays() {
        let h = sample();
        let f = Ext::Finite;
        assert_eq!(h.prefix_min()[..4], [Ext::PosInf, f(10), f(7), f(7)]);
        assert_eq!(h.prefix_max()[..4], [Ext::NegInf, f(10), f(10), f(10)]);
        assert_eq!(h.suffix_min()[4], Ext::PosInf);
        assert_eq!(h.suffix_max()[4], Ext::NegInf);
    }

    #[test]
    fn single_point() {
        let h = HalfspaceIndex::from_entries(vec![(4, 2, 0)]).unwrap();
        assert_eq!(h.prefix_min()[1], Ext::Finite(2));
        assert_eq!(h.suffix_min()[1], Ext::Finite(2));
        assert!(matches!(
            HalfspaceIndex::from_entries(vec![]),
            Err(Error::EmptySubset)
        ));
    }

    #[test]
    fn strict_sides() {
        let h = sample();
        assert_eq!(
            h.extrema(Side::Below, 4, None),
            (Ext::Finite(7), Ext::Finite(10))
        );
        assert_eq!(h.extrema(Side::Below, 1, None), (Ext::PosInf, Ext::NegInf));
        assert_eq!(h.extrema(Side::Above, 5, None), (Ext::PosInf, Ext::NegInf));
        assert_eq!(
            h.extrema(Side::Above, 1, None),
            (Ext::Finite(7), Ext::Finite(9))
        );
    }

    #[test]
    fn lookup_positions() {
        let h = sample();
        let below = PosLookup::build(&h, &[0, 2, 4, 6], Side::Below).unwrap();
        let got: Vec<_> = [0, 2, 4, 6].iter().map(|&v| below.get(v).unwrap()).collect();
        assert_eq!(got, [0, 1, 2, 3]);
        let above = PosLookup::build(&h, &[0, 2, 4, 6], Side::Above).unwrap();
        for v in [0, 2, 4, 6] {
            assert_eq!(above.get(v), Some(h.position(Side::Above, v)));
        }
        let dense = PosLookup::build(&h, &[0, 1, 2, 3, 4, 5, 6], Side::Above).unwrap();
        for v in -1..=7 {
            let expect = (0..=6).contains(&v).then(|| h.position(Side::Above, v));
            assert_eq!(dense.get(v), expect);
        }
        let low = PosLookup::build(&h, &[-5, -1, 0], Side::Below).unwrap();
        assert!([-5, -1, 0].iter().all(|&v| low.get(v) == Some(0)));
        assert!(matches!(
            PosLookup::build(&h, &[2, 1], Side::Below),
            Err(Error::UnsortedCandidates)
        ));
    }

    #[test]
    fn duplicate_keys_keep_monotone_prefixes() {
        let h = HalfspaceIndex::from_entries(vec![(2, 5, 0), (2, 1, 1), (2, 8, 2), (3, 0, 3)]).unwrap();
        assert!(h.prefix_min()[..=4].windows(2).all(|w| w[1] <= w[0]));
        assert!(h.prefix_max()[1..=4].windows(2).all(|w| w[1] >= w[0]));
        assert_eq!(h.extrema(Side::Below, 3, None), (Ext::Finite(1), Ext::Finite(8)));
    }
}
