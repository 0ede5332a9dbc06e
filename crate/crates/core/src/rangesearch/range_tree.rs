// SPDX-License-Identifier: Apache-2.0

//! Static multi-level orthogonal range tree with per-point presence flags.
//!
//! The first `d' - 1` levels are balanced binary trees keyed on one
//! coordinate, each node owning an associated structure on the remaining
//! coordinates. The last level is a segment tree over points sorted by the
//! final coordinate, aggregating active count and weight extrema. Points are
//! ordered by `(coordinate, id)` at every level, which makes duplicate
//! coordinates unambiguous when a single point is toggled.

use super::ext::{Ext, Interval};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Agg {
    count: usize,
    wmin: Ext,
    wmax: Ext,
}

impl Agg {
    const EMPTY: Agg = Agg {
        count: 0,
        wmin: Ext::PosInf,
        wmax: Ext::NegInf,
    };

    #[inline]
    fn single(w: i64) -> Agg {
        Agg {
            count: 1,
            wmin: Ext::Finite(w),
            wmax: Ext::Finite(w),
        }
    }

    #[inline]
    fn merge(self, o: Agg) -> Agg {
        Agg {
            count: self.count + o.count,
            wmin: self.wmin.min(o.wmin),
            wmax: self.wmax.max(o.wmax),
        }
    }
}

/// What a box query should return.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryKind {
    Count,
    Report,
    WeightMin,
    WeightMax,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryAnswer {
    Count(usize),
    Report(Vec<usize>),
    Weight(Ext),
}

struct Data<'a> {
    dims: usize,
    coords: &'a [i64],
}

impl Data<'_> {
    #[inline]
    fn key(&self, id: usize, dim: usize) -> (i64, usize) {
        (self.coords[id * self.dims + dim], id)
    }
}

#[derive(Debug, Clone)]
struct SegLevel {
    keys: Vec<(i64, usize)>,
    size: usize,
    seg: Vec<Agg>,
}

impl SegLevel {
    fn build(data: &Data<'_>, dim: usize, ids: &[usize], weights: &[i64], active: &[bool]) -> Self {
        let mut keys: Vec<(i64, usize)> = ids.iter().map(|&p| data.key(p, dim)).collect();
        keys.sort_unstable();
        let size = keys.len().next_power_of_two().max(1);
        let mut seg = vec![Agg::EMPTY; 2 * size];
        for (pos, &(_, id)) in keys.iter().enumerate() {
            if active[id] {
                seg[size + pos] = Agg::single(weights[id]);
            }
        }
        for v in (1..size).rev() {
            seg[v] = seg[2 * v].merge(seg[2 * v + 1]);
        }
        SegLevel { keys, size, seg }
    }

    fn reset(&mut self, weights: &[i64], active: bool) {
        for (pos, &(_, id)) in self.keys.iter().enumerate() {
            self.seg[self.size + pos] = if active {
                Agg::single(weights[id])
            } else {
                Agg::EMPTY
            };
        }
        for v in (1..self.size).rev() {
            self.seg[v] = self.seg[2 * v].merge(self.seg[2 * v + 1]);
        }
    }

    fn toggle(&mut self, key: (i64, usize), agg: Agg) {
        let pos = self
            .keys
            .binary_search(&key)
            .expect("point belongs to every structure on its path");
        let mut v = self.size + pos;
        self.seg[v] = agg;
        v /= 2;
        while v >= 1 {
            self.seg[v] = self.seg[2 * v].merge(self.seg[2 * v + 1]);
            v /= 2;
        }
    }

    #[inline]
    fn span(&self, iv: Interval) -> (usize, usize) {
        let l = self.keys.partition_point(|&(c, _)| c < iv.lo);
        let r = self.keys.partition_point(|&(c, _)| c <= iv.hi);
        (l, r.max(l))
    }

    fn fold(&self, iv: Interval) -> Agg {
        let (l, r) = self.span(iv);
        let (mut l, mut r) = (l + self.size, r + self.size);
        let mut acc = Agg::EMPTY;
        while l < r {
            if l & 1 == 1 {
                acc = acc.merge(self.seg[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                acc = acc.merge(self.seg[r]);
            }
            l /= 2;
            r /= 2;
        }
        acc
    }

    fn report(&self, iv: Interval, out: &mut Vec<usize>) {
        let (l, r) = self.span(iv);
        let (mut l, mut r) = (l + self.size, r + self.size);
        while l < r {
            if l & 1 == 1 {
                self.collect(l, out);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                self.collect(r, out);
            }
            l /= 2;
            r /= 2;
        }
    }

    fn collect(&self, v: usize, out: &mut Vec<usize>) {
        if self.seg[v].count == 0 {
            return;
        }
        if v >= self.size {
            out.push(self.keys[v - self.size].1);
        } else {
            self.collect(2 * v, out);
            self.collect(2 * v + 1, out);
        }
    }
}

#[derive(Debug, Clone)]
struct Node {
    min: i64,
    max: i64,
    split: (i64, usize),
    assoc: Level,
    children: Option<Box<(Node, Node)>>,
}

#[derive(Debug, Clone)]
enum Level {
    Seg(SegLevel),
    Tree(Option<Box<Node>>),
}

impl Level {
    fn build(data: &Data<'_>, dim: usize, ids: &mut [usize], weights: &[i64], active: &[bool]) -> Self {
        if dim + 1 == data.dims {
            return Level::Seg(SegLevel::build(data, dim, ids, weights, active));
        }
        if ids.is_empty() {
            return Level::Tree(None);
        }
        ids.sort_unstable_by_key(|&p| data.key(p, dim));
        Level::Tree(Some(Box::new(Node::build(data, dim, ids, weights, active))))
    }

    fn reset(&mut self, weights: &[i64], active: bool) {
        match self {
            Level::Seg(s) => s.reset(weights, active),
            Level::Tree(Some(n)) => n.reset(weights, active),
            Level::Tree(None) => {}
        }
    }

    fn toggle(&mut self, data: &Data<'_>, dim: usize, id: usize, agg: Agg) {
        match self {
            Level::Seg(s) => s.toggle(data.key(id, dim), agg),
            Level::Tree(Some(n)) => n.toggle(data, dim, id, agg),
            Level::Tree(None) => unreachable!("toggle on an empty level"),
        }
    }

    fn fold(&self, boxq: &[Interval], dim: usize) -> Agg {
        match self {
            Level::Seg(s) => s.fold(boxq[dim]),
            Level::Tree(Some(n)) => n.fold(boxq, dim),
            Level::Tree(None) => Agg::EMPTY,
        }
    }

    fn report(&self, boxq: &[Interval], dim: usize, out: &mut Vec<usize>) {
        match self {
            Level::Seg(s) => s.report(boxq[dim], out),
            Level::Tree(Some(n)) => n.report(boxq, dim, out),
            Level::Tree(None) => {}
        }
    }
}

impl Node {
    /// `ids` arrive sorted by `(coord[dim], id)`.
    fn build(data: &Data<'_>, dim: usize, ids: &mut [usize], weights: &[i64], active: &[bool]) -> Self {
        let min = data.key(ids[0], dim).0;
        let max = data.key(ids[ids.len() - 1], dim).0;
        let mid = ids.len() / 2;
        let split = data.key(ids[mid.max(1) - 1], dim);
        let children = if ids.len() > 1 {
            let (l, r) = ids.split_at_mut(mid);
            Some(Box::new((
                Node::build(data, dim, l, weights, active),
                Node::build(data, dim, r, weights, active),
            )))
        } else {
            None
        };
        // The associated structure re-sorts its own copy.
        let mut own = ids.to_vec();
        let assoc = Level::build(data, dim + 1, &mut own, weights, active);
        Node {
            min,
            max,
            split,
            assoc,
            children,
        }
    }

    fn reset(&mut self, weights: &[i64], active: bool) {
        self.assoc.reset(weights, active);
        if let Some(ch) = self.children.as_mut() {
            ch.0.reset(weights, active);
            ch.1.reset(weights, active);
        }
    }

    fn toggle(&mut self, data: &Data<'_>, dim: usize, id: usize, agg: Agg) {
        self.assoc.toggle(data, dim + 1, id, agg);
        if let Some(ch) = self.children.as_mut() {
            if data.key(id, dim) <= self.split {
                ch.0.toggle(data, dim, id, agg);
            } else {
                ch.1.toggle(data, dim, id, agg);
            }
        }
    }

    fn fold(&self, boxq: &[Interval], dim: usize) -> Agg {
        let iv = boxq[dim];
        if iv.hi < self.min || iv.lo > self.max {
            return Agg::EMPTY;
        }
        if iv.lo <= self.min && self.max <= iv.hi {
            return self.assoc.fold(boxq, dim + 1);
        }
        match self.children.as_ref() {
            Some(ch) => ch.0.fold(boxq, dim).merge(ch.1.fold(boxq, dim)),
            None => Agg::EMPTY,
        }
    }

    fn report(&self, boxq: &[Interval], dim: usize, out: &mut Vec<usize>) {
        let iv = boxq[dim];
        if iv.hi < self.min || iv.lo > self.max {
            return;
        }
        if iv.lo <= self.min && self.max <= iv.hi {
            return self.assoc.report(boxq, dim + 1, out);
        }
        if let Some(ch) = self.children.as_ref() {
            ch.0.report(boxq, dim, out);
            ch.1.report(boxq, dim, out);
        }
    }
}

/// Orthogonal range tree over a fixed point multiset.
#[derive(Debug, Clone)]
pub struct RangeTree {
    dims: usize,
    coords: Vec<i64>,
    weights: Vec<i64>,
    active: Vec<bool>,
    active_count: usize,
    root: Level,
}

impl RangeTree {
    /// Builds the tree with every point active.
    pub fn build<R: AsRef<[i64]>>(dims: usize, points: &[R], weights: &[i64]) -> Result<Self> {
        Self::build_with_state(dims, points, weights, true)
    }

    pub fn build_with_state<R: AsRef<[i64]>>(
        dims: usize,
        points: &[R],
        weights: &[i64],
        active: bool,
    ) -> Result<Self> {
        if dims == 0 {
            return Err(Error::InvalidConfig("range tree needs at least one dimension".into()));
        }
        if weights.len() != points.len() {
            return Err(Error::InvalidConfig(format!(
                "{} weights for {} points",
                weights.len(),
                points.len()
            )));
        }
        let mut coords = Vec::with_capacity(points.len() * dims);
        for (row, p) in points.iter().enumerate() {
            let p = p.as_ref();
            if p.len() != dims {
                return Err(Error::DimensionMismatch {
                    row,
                    expected: dims,
                    found: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        Ok(Self::from_flat(dims, coords, weights.to_vec(), active))
    }

    /// `coords` is row-major with `dims` entries per point.
    pub(crate) fn from_flat(dims: usize, coords: Vec<i64>, weights: Vec<i64>, active: bool) -> Self {
        let n = weights.len();
        debug_assert_eq!(coords.len(), n * dims);
        let flags = vec![active; n];
        let mut ids: Vec<usize> = (0..n).collect();
        let root = {
            let data = Data {
                dims,
                coords: &coords,
            };
            Level::build(&data, 0, &mut ids, &weights, &flags)
        };
        RangeTree {
            dims,
            coords,
            weights,
            active: flags,
            active_count: if active { n } else { 0 },
            root,
        }
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn active_count(&self) -> usize {
        self.active_count
    }

    pub fn is_active(&self, id: usize) -> bool {
        self.active[id]
    }

    pub fn point(&self, id: usize) -> &[i64] {
        &self.coords[id * self.dims..(id + 1) * self.dims]
    }

    /// Sets the presence flag of one point. Idempotent per flag value.
    pub fn set_active(&mut self, id: usize, active: bool) -> Result<()> {
        if id >= self.len() {
            return Err(Error::UnknownPoint(id));
        }
        if self.active[id] == active {
            return Ok(());
        }
        self.active[id] = active;
        if active {
            self.active_count += 1;
        } else {
            self.active_count -= 1;
        }
        let agg = if active {
            Agg::single(self.weights[id])
        } else {
            Agg::EMPTY
        };
        let data = Data {
            dims: self.dims,
            coords: &self.coords,
        };
        self.root.toggle(&data, 0, id, agg);
        Ok(())
    }

    /// Sets every presence flag at once.
    pub fn reset(&mut self, active: bool) {
        self.active.iter_mut().for_each(|a| *a = active);
        self.active_count = if active { self.len() } else { 0 };
        self.root.reset(&self.weights, active);
    }

    fn check(&self, boxq: &[Interval]) {
        assert_eq!(boxq.len(), self.dims, "query box dimensionality");
    }

    pub fn count(&self, boxq: &[Interval]) -> usize {
        self.check(boxq);
        if boxq.iter().all(|iv| *iv == Interval::ALL) {
            return self.active_count;
        }
        self.root.fold(boxq, 0).count
    }

    /// Active ids inside the closed box, in no particular order.
    pub fn report(&self, boxq: &[Interval]) -> Vec<usize> {
        let mut out = Vec::new();
        self.report_into(boxq, &mut out);
        out
    }

    pub fn report_into(&self, boxq: &[Interval], out: &mut Vec<usize>) {
        self.check(boxq);
        if boxq.iter().any(Interval::is_empty) {
            return;
        }
        self.root.report(boxq, 0, out);
    }

    /// Smallest active weight in the box, `PosInf` when none.
    pub fn weight_min(&self, boxq: &[Interval]) -> Ext {
        self.check(boxq);
        self.root.fold(boxq, 0).wmin
    }

    /// Largest active weight in the box, `NegInf` when none.
    pub fn weight_max(&self, boxq: &[Interval]) -> Ext {
        self.check(boxq);
        self.root.fold(boxq, 0).wmax
    }

    pub fn query(&self, boxq: &[Interval], kind: QueryKind) -> QueryAnswer {
        match kind {
            QueryKind::Count => QueryAnswer::Count(self.count(boxq)),
            QueryKind::Report => {
                let mut ids = self.report(boxq);
                ids.sort_unstable();
                QueryAnswer::Report(ids)
            }
            QueryKind::WeightMin => QueryAnswer::Weight(self.weight_min(boxq)),
            QueryKind::WeightMax => QueryAnswer::Weight(self.weight_max(boxq)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RangeTree {
        RangeTree::build(2, &[[1, 1], [2, 3], [5, 4]], &[7, 9, 8]).unwrap()
    }

    #[test]
    fn counts_boxes() {
        let t = sample();
        assert_eq!(t.count(&[Interval::closed(1, 2), Interval::closed(1, 3)]), 2);
        assert_eq!(t.count(&[Interval::ALL, Interval::ALL]), 3);
        assert_eq!(
            t.weight_min(&[Interval::closed(5, 5), Interval::closed(4, 4)]),
            Ext::Finite(8)
        );
    }

    #[test]
    fn reports_and_sentinels() {
        let t = sample();
        assert_eq!(
            t.query(&[Interval::closed(2, 5), Interval::ALL], QueryKind::Report),
            QueryAnswer::Report(vec![1, 2])
        );
        let none = [Interval::closed(10, 20), Interval::ALL];
        assert_eq!(t.weight_min(&none), Ext::PosInf);
        assert_eq!(t.weight_max(&none), Ext::NegInf);
        assert_eq!(t.count(&[Interval::closed(3, 2), Interval::ALL]), 0);
    }

    #[test]
    fn toggling() {
        let mut t = sample();
        let all = [Interval::ALL, Interval::ALL];
        t.set_active(1, false).unwrap();
        assert_eq!(t.count(&all), 2);
        assert_eq!(t.count(&[Interval::closed(0, 9), Interval::closed(0, 9)]), 2);
        t.set_active(1, false).unwrap();
        assert_eq!(t.count(&[Interval::closed(0, 9), Interval::closed(0, 9)]), 2);
        t.set_active(1, true).unwrap();
        assert_eq!(t.count(&[Interval::closed(0, 9), Interval::closed(0, 9)]), 3);
        for id in 0..3 {
            t.set_active(id, false).unwrap();
        }
        assert_eq!(t.count(&all), 0);
        assert_eq!(t.weight_max(&all), Ext::NegInf);
        assert_eq!(t.set_active(3, true), Err(Error::UnknownPoint(3)));
    }

    #[test]
    fn empty_tree() {
        let pts: [[i64; 3]; 0] = [];
        let t = RangeTree::build(3, &pts, &[]).unwrap();
        assert_eq!(t.count(&[Interval::ALL; 3]), 0);
        assert!(t.report(&[Interval::ALL; 3]).is_empty());
        assert_eq!(t.weight_min(&[Interval::closed(0, 1); 3]), Ext::PosInf);
    }

    #[test]
    fn duplicate_coordinates_toggle_independently() {
        let pts = [[3, 3], [3, 3], [3, 3], [1, 2]];
        let mut t = RangeTree::build(2, &pts, &[1, 2, 3, 4]).unwrap();
        let q = [Interval::closed(3, 3), Interval::closed(3, 3)];
        t.set_active(1, false).unwrap();
        assert_eq!(t.count(&q), 2);
        assert_eq!(t.weight_max(&q), Ext::Finite(3));
        t.set_active(2, false).unwrap();
        assert_eq!(t.weight_max(&q), Ext::Finite(1));
    }
}
