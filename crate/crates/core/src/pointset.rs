// SPDX-License-Identifier: Apache-2.0

//! Integer point sets with per-dimension coordinate ranking.
//!
//! Ranks are 1-based: rank `k` in dimension `i` names `xp(i)[k - 1]`, the
//! `k`-th smallest distinct coordinate. Positions `0` and `m(i) + 1` are left
//! free for the sentinels used by the half-space structures.

use crate::error::{Error, Result};

/// Largest supported coordinate magnitude.
pub const COORD_LIMIT: i64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    d: usize,
    coords: Vec<i64>,
    ranks: Vec<usize>,
    xp: Vec<Vec<i64>>,
    order: Vec<Vec<usize>>,
}

impl PointSet {
    #[inline]
    pub fn dim(&self) -> usize {
        self.d
    }

    /// Number of rows (`r`), duplicates included.
    #[inline]
    pub fn len(&self) -> usize {
        self.coords.len() / self.d
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn point(&self, p: usize) -> &[i64] {
        &self.coords[p * self.d..(p + 1) * self.d]
    }

    #[inline]
    pub fn coord(&self, p: usize, i: usize) -> i64 {
        self.coords[p * self.d + i]
    }

    /// Ranks of point `p` in every dimension.
    #[inline]
    pub fn ranks(&self, p: usize) -> &[usize] {
        &self.ranks[p * self.d..(p + 1) * self.d]
    }

    #[inline]
    pub fn rank(&self, p: usize, i: usize) -> usize {
        self.ranks[p * self.d + i]
    }

    /// Sorted distinct coordinates of dimension `i`.
    #[inline]
    pub fn xp(&self, i: usize) -> &[i64] {
        &self.xp[i]
    }

    /// Coordinate value carried by `rank` (1-based) in dimension `i`.
    #[inline]
    pub fn value_at(&self, i: usize, rank: usize) -> i64 {
        self.xp[i][rank - 1]
    }

    /// Distinct-value count `m(i)`.
    #[inline]
    pub fn distinct(&self, i: usize) -> usize {
        self.xp[i].len()
    }

    /// `n = max_i m(i)`.
    pub fn max_distinct(&self) -> usize {
        self.xp.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Point ids in non-decreasing order of dimension `i` (stable in id).
    #[inline]
    pub fn axis_order(&self, i: usize) -> &[usize] {
        &self.order[i]
    }

    /// Rank of an arbitrary integer value in dimension `i`: the number of
    /// distinct coordinates strictly below `v`, plus one.
    pub fn lower_rank(&self, i: usize, v: i64) -> usize {
        self.xp[i].partition_point(|&x| x < v) + 1
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> + '_ {
        self.coords.chunks_exact(self.d)
    }
}

/// Builds a [`PointSet`], sorting every dimension once and deriving ranks.
pub fn normalize_pointset<R: AsRef<[i64]>>(d: usize, rows: &[R]) -> Result<PointSet> {
    if d == 0 {
        return Err(Error::InvalidConfig("dimension must be at least 1".into()));
    }
    let r = rows.len();
    let mut coords = Vec::with_capacity(r * d);
    for (row_no, row) in rows.iter().enumerate() {
        let row = row.as_ref();
        if row.len() != d {
            return Err(Error::DimensionMismatch {
                row: row_no,
                expected: d,
                found: row.len(),
            });
        }
        for &v in row {
            if v.unsigned_abs() > COORD_LIMIT as u64 {
                return Err(Error::CoordOutOfRange { value: v });
            }
        }
        coords.extend_from_slice(row);
    }

    let mut ranks = vec![0usize; r * d];
    let mut xp = Vec::with_capacity(d);
    let mut order = Vec::with_capacity(d);
    let mut keys = vec![0i64; r];
    for i in 0..d {
        for p in 0..r {
            keys[p] = coords[p * d + i];
        }
        let sorted = sort_keys(&keys);
        let mut values: Vec<i64> = Vec::new();
        for &p in &sorted {
            let v = keys[p];
            if values.last() != Some(&v) {
                values.push(v);
            }
            ranks[p * d + i] = values.len();
        }
        xp.push(values);
        order.push(sorted);
    }
    Ok(PointSet {
        d,
        coords,
        ranks,
        xp,
        order,
    })
}

/// Stable ordering of `keys`, using counting sort when the value range is
/// at most four times the key count.
pub fn sort_keys(keys: &[i64]) -> Vec<usize> {
    let (Some(&lo), Some(&hi)) = (keys.iter().min(), keys.iter().max()) else {
        return Vec::new();
    };
    let span = (hi as i128 - lo as i128) as u128;
    if span <= 4 * keys.len() as u128 {
        countsort_keys(keys, lo, hi).expect("range derived from the keys")
    } else {
        let mut ids: Vec<usize> = (0..keys.len()).collect();
        ids.sort_by_key(|&p| keys[p]);
        ids
    }
}

/// Stable counting sort of key positions. Every key must lie in `[lo, hi]`.
pub fn countsort_keys(keys: &[i64], lo: i64, hi: i64) -> Result<Vec<usize>> {
    if let Some(&v) = keys.iter().find(|&&v| v < lo || v > hi) {
        return Err(Error::ValueOutOfRange { value: v, lo, hi });
    }
    if keys.is_empty() {
        return Ok(Vec::new());
    }
    let buckets = (hi - lo) as usize + 1;
    let mut start = vec![0usize; buckets + 1];
    for &v in keys {
        start[(v - lo) as usize + 1] += 1;
    }
    for b in 0..buckets {
        start[b + 1] += start[b];
    }
    let mut out = vec![0usize; keys.len()];
    for (p, &v) in keys.iter().enumerate() {
        let slot = &mut start[(v - lo) as usize];
        out[*slot] = p;
        *slot += 1;
    }
    Ok(out)
}

/// Counting sort of rows along one dimension.
pub fn countsort_dimension<R: AsRef<[i64]>>(
    rows: &[R],
    dim: usize,
    lo: i64,
    hi: i64,
) -> Result<Vec<usize>> {
    let mut keys = Vec::with_capacity(rows.len());
    for (row_no, row) in rows.iter().enumerate() {
        let row = row.as_ref();
        match row.get(dim) {
            Some(&v) => keys.push(v),
            None => {
                return Err(Error::DimensionMismatch {
                    row: row_no,
                    expected: dim + 1,
                    found: row.len(),
                })
            }
        }
    }
    countsort_keys(&keys, lo, hi)
}

/// A set of point ids, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Subset(Vec<usize>);

impl Subset {
    pub fn all(r: usize) -> Self {
        Subset((0..r).collect())
    }

    pub fn empty() -> Self {
        Subset(Vec::new())
    }

    /// Validates ids against `ps`; duplicates are rejected.
    pub fn from_ids(ps: &PointSet, ids: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = ids.into_iter().collect();
        if let Some(&bad) = v.iter().find(|&&p| p >= ps.len()) {
            return Err(Error::InvalidPointId(bad));
        }
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidPointId(w[0]));
        }
        Ok(Subset(v))
    }

    /// Wraps ids already known to be valid, unique and sorted.
    pub(crate) fn from_sorted_unchecked(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Subset(v)
    }

    #[inline]
    pub fn ids(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.binary_search(&p).is_ok()
    }
}

/// Axis-aligned box in rank space, `lo[i] <= hi[i]`, both 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexBox {
    pub lo: Vec<usize>,
    pub hi: Vec<usize>,
}

impl IndexBox {
    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains_ranks(&self, ranks: &[usize]) -> bool {
        ranks
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(&k, (&a, &b))| a <= k && k <= b)
    }
}

/// Minimum bounding box of `s` in rank space; `None` for the empty subset.
pub fn compute_mbr(ps: &PointSet, s: &Subset) -> Result<Option<IndexBox>> {
    if let Some(bad) = s.iter().find(|&p| p >= ps.len()) {
        return Err(Error::InvalidPointId(bad));
    }
    Ok(mbr_of_ids(ps, s.ids()))
}

pub(crate) fn mbr_of_ids(ps: &PointSet, ids: &[usize]) -> Option<IndexBox> {
    let (&first, rest) = ids.split_first()?;
    let mut lo = ps.ranks(first).to_vec();
    let mut hi = lo.clone();
    for &p in rest {
        for (i, &k) in ps.ranks(p).iter().enumerate() {
            if k < lo[i] {
                lo[i] = k;
            } else if k > hi[i] {
                hi[i] = k;
            }
        }
    }
    Some(IndexBox { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_one_dimension_with_duplicates() {
        let ps = normalize_pointset(1, &[[5], [3], [5]]).unwrap();
        assert_eq!(ps.xp(0), &[3, 5]);
        assert_eq!(ps.distinct(0), 2);
        assert_eq!((0..3).map(|p| ps.rank(p, 0)).collect::<Vec<_>>(), [2, 1, 2]);
    }

    #[test]
    fn normalizes_two_dimensions() {
        let ps = normalize_pointset(2, &[[0, 0], [4, 2]]).unwrap();
        assert_eq!(ps.xp(0), &[0, 4]);
        assert_eq!(ps.xp(1), &[0, 2]);
        assert_eq!(ps.max_distinct(), 2);
    }

    #[test]
    fn empty_input() {
        let rows: [[i64; 3]; 0] = [];
        let ps = normalize_pointset(3, &rows).unwrap();
        assert_eq!(ps.len(), 0);
        assert_eq!((0..3).map(|i| ps.distinct(i)).collect::<Vec<_>>(), [0, 0, 0]);
        assert_eq!(ps.max_distinct(), 0);
    }

    #[test]
    fn rejects_bad_rows() {
        let rows: Vec<Vec<i64>> = vec![vec![1, 2], vec![3]];
        assert_eq!(
            normalize_pointset(2, &rows),
            Err(Error::DimensionMismatch {
                row: 1,
                expected: 2,
                found: 1
            })
        );
        let big = COORD_LIMIT + 1;
        assert_eq!(
            normalize_pointset(1, &[[big]]),
            Err(Error::CoordOutOfRange { value: big })
        );
        assert!(normalize_pointset(1, &[[-COORD_LIMIT]]).is_ok());
    }

    #[test]
    fn countsort_is_stable() {
        let rows = [[2], [0], [2], [1]];
        assert_eq!(countsort_dimension(&rows, 0, 0, 2).unwrap(), [1, 3, 0, 2]);
        assert_eq!(countsort_dimension(&[[7]], 0, 0, 9).unwrap(), [0]);
        assert_eq!(
            countsort_dimension(&rows, 0, 0, 1),
            Err(Error::ValueOutOfRange {
                value: 2,
                lo: 0,
                hi: 1
            })
        );
    }

    #[test]
    fn mbr_cases() {
        let ps = normalize_pointset(2, &[[0, 0], [4, 2]]).unwrap();
        let b = compute_mbr(&ps, &Subset::all(2)).unwrap().unwrap();
        assert_eq!((b.lo, b.hi), (vec![1, 1], vec![2, 2]));
        let s0 = Subset::from_ids(&ps, [0]).unwrap();
        let b = compute_mbr(&ps, &s0).unwrap().unwrap();
        assert_eq!((b.lo, b.hi), (vec![1, 1], vec![1, 1]));
        assert_eq!(compute_mbr(&ps, &Subset::empty()).unwrap(), None);
        assert_eq!(
            Subset::from_ids(&ps, [0, 5]),
            Err(Error::InvalidPointId(5))
        );
    }
}
