// SPDX-License-Identifier: Apache-2.0

//! Placement enumeration for the next rectangle.
//!
//! Both generators report candidates through a reusable [`Probe`] holding
//! the anchor ranks, per-group lengths, per-dimension side lengths, and the
//! highest rank reached inside the current bounding box. Rectangles are
//! only materialized on request.

use super::model::{GeoRect, GroupConfig};
use crate::pointset::{IndexBox, PointSet};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub(crate) struct Probe<S> {
    /// Rank of `xmin` in every dimension.
    pub anchor: Vec<usize>,
    /// Highest rank `k <= mbr.hi` with `xp(k) <= xmax`.
    pub reach: Vec<usize>,
    pub lengths: Vec<S>,
    pub sides: Vec<S>,
}

impl<S: Scalar> Probe<S> {
    fn new(d: usize, cfg: &GroupConfig<S>) -> Self {
        Probe {
            anchor: vec![0; d],
            reach: vec![0; d],
            lengths: (0..cfg.group_count()).map(|j| cfg.lmin(j).clone()).collect(),
            sides: vec![S::zero(); d],
        }
    }

    pub fn to_rect(&self, ps: &PointSet) -> GeoRect<S> {
        let xmin: Vec<S> = self
            .anchor
            .iter()
            .enumerate()
            .map(|(i, &a)| S::from_int(ps.value_at(i, a)))
            .collect();
        let xmax = xmin
            .iter()
            .zip(&self.sides)
            .map(|(x, s)| x.clone() + s.clone())
            .collect();
        GeoRect {
            xmin,
            xmax,
            lengths: self.lengths.clone(),
        }
    }
}

#[inline]
fn offset<S: Scalar>(ps: &PointSet, i: usize, from: usize, to: usize) -> S {
    S::from_int(ps.value_at(i, to) - ps.value_at(i, from))
}

/// Extends `k` while the next coordinate stays within `side` of the anchor.
#[inline]
fn extend_reach<S: Scalar>(ps: &PointSet, i: usize, anchor: usize, mut k: usize, hi: usize, side: &S) -> usize {
    while k < hi && offset::<S>(ps, i, anchor, k + 1) <= *side {
        k += 1;
    }
    k
}

fn dims_by_group<S: Scalar>(cfg: &GroupConfig<S>) -> Vec<Vec<usize>> {
    let mut by = vec![Vec::new(); cfg.group_count()];
    for i in 0..cfg.dim() {
        by[cfg.group_of(i)].push(i);
    }
    by
}

/// Advances a mixed-radix counter, last digit fastest. Returns `false` on
/// wrap-around.
#[inline]
fn advance(digits: &mut [usize], lo: &[usize], hi: &[usize]) -> bool {
    for t in (0..digits.len()).rev() {
        if digits[t] < hi[t] {
            digits[t] += 1;
            return true;
        }
        digits[t] = lo[t];
    }
    false
}

/// Every anchor tuple inside `mbr` combined with every admissible length
/// tuple. Lengths of group `j` are `max(lmin(j), (xp(i,a) - xp(i,c_i)) / f(i))`
/// over member dimensions `i` and ranks `c_i <= a <= mbr.hi[i]`, kept when
/// within `lmax(j)`.
pub(crate) fn for_each_naive<S: Scalar>(
    ps: &PointSet,
    cfg: &GroupConfig<S>,
    mbr: &IndexBox,
    visit: &mut dyn FnMut(&Probe<S>),
) {
    let d = ps.dim();
    let e = cfg.group_count();
    let members = dims_by_group(cfg);
    let mut probe = Probe::new(d, cfg);
    let mut anchor = mbr.lo.clone();
    let mut lens: Vec<Vec<S>> = vec![Vec::new(); e];
    let mut side_tab: Vec<Vec<S>> = vec![Vec::new(); d];
    let mut reach_tab: Vec<Vec<usize>> = vec![Vec::new(); d];
    let zeros = vec![0usize; e];
    let mut last = vec![0usize; e];
    let mut pick = vec![0usize; e];

    loop {
        for j in 0..e {
            let v = &mut lens[j];
            v.clear();
            let lmin = cfg.lmin(j);
            if members[j].is_empty() {
                v.push(lmin.clone());
                continue;
            }
            for &i in &members[j] {
                for a in anchor[i]..=mbr.hi[i] {
                    let l = cfg.unscale(i, offset(ps, i, anchor[i], a)).max_of(lmin.clone());
                    if cfg.within_max(j, &l) {
                        v.push(l);
                    }
                }
            }
            v.sort_by(|x, y| x.partial_cmp(y).expect("lengths are comparable"));
            v.dedup();
        }
        // The zero offset always survives the lmax filter, so lens[j] is
        // never empty.
        for i in 0..d {
            let g = cfg.group_of(i);
            side_tab[i].clear();
            reach_tab[i].clear();
            let mut k = anchor[i];
            for l in &lens[g] {
                let side = cfg.side(i, l);
                k = extend_reach(ps, i, anchor[i], k, mbr.hi[i], &side);
                side_tab[i].push(side);
                reach_tab[i].push(k);
            }
        }
        for j in 0..e {
            last[j] = lens[j].len() - 1;
        }
        pick.iter_mut().for_each(|p| *p = 0);
        probe.anchor.copy_from_slice(&anchor);
        loop {
            for j in 0..e {
                probe.lengths[j] = lens[j][pick[j]].clone();
            }
            for i in 0..d {
                let t = pick[cfg.group_of(i)];
                probe.sides[i] = side_tab[i][t].clone();
                probe.reach[i] = reach_tab[i][t];
            }
            visit(&probe);
            if !advance(&mut pick, &zeros, &last) {
                break;
            }
        }
        if !advance(&mut anchor, &mbr.lo, &mbr.hi) {
            break;
        }
    }
}

/// `ceil(2d / kh)`, capped at `2d`.
pub fn pinned_count(d: usize, kh: usize) -> usize {
    (2 * d).div_ceil(kh.max(1)).min(2 * d)
}

/// Lexicographic `q`-subsets of `0..n`.
pub(crate) fn combinations(n: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if q > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..q).collect();
    loop {
        out.push(cur.clone());
        let mut t = q;
        loop {
            if t == 0 {
                return out;
            }
            t -= 1;
            if cur[t] < n - q + t {
                cur[t] += 1;
                for u in t + 1..q {
                    cur[u] = cur[u - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Restricted enumeration: for every set `SQ` of `ceil(2d/kh)` sides of
/// `mbr` (side `i` is the lower side of dimension `i`, side `d + i` the
/// upper one), rank pairs `mbr.lo <= ha <= hb <= mbr.hi` with the pinned
/// sides equal to the box, each finalized to the smallest admissible
/// lengths covering `[xp(ha), xp(hb)]`.
pub(crate) fn for_each_pigeonhole<S: Scalar>(
    ps: &PointSet,
    cfg: &GroupConfig<S>,
    mbr: &IndexBox,
    kh: usize,
    visit: &mut dyn FnMut(&Probe<S>, &[usize]),
) {
    let d = ps.dim();
    let e = cfg.group_count();
    let q = pinned_count(d, kh);
    let width: Vec<usize> = (0..d).map(|i| mbr.hi[i] - mbr.lo[i] + 1).collect();
    // need[i][(ha - lo) * w + (hb - lo)] = (xp(hb) - xp(ha)) / f(i)
    let need: Vec<Vec<S>> = (0..d)
        .map(|i| {
            let w = width[i];
            let mut t = vec![S::zero(); w * w];
            for ha in 0..w {
                for hb in ha..w {
                    t[ha * w + hb] =
                        cfg.unscale(i, offset(ps, i, mbr.lo[i] + ha, mbr.lo[i] + hb));
                }
            }
            t
        })
        .collect();

    let mut probe = Probe::new(d, cfg);
    let mut options: Vec<Vec<(usize, usize)>> = vec![Vec::new(); d];
    let zeros = vec![0usize; d];
    let mut last = vec![0usize; d];
    let mut pick = vec![0usize; d];
    for sq in combinations(2 * d, q) {
        for i in 0..d {
            let pin_lo = sq.contains(&i);
            let pin_hi = sq.contains(&(d + i));
            let opts = &mut options[i];
            opts.clear();
            let has = if pin_lo { mbr.lo[i]..=mbr.lo[i] } else { mbr.lo[i]..=mbr.hi[i] };
            for ha in has {
                if pin_hi {
                    opts.push((ha, mbr.hi[i]));
                } else {
                    opts.extend((ha..=mbr.hi[i]).map(|hb| (ha, hb)));
                }
            }
            last[i] = opts.len() - 1;
        }
        pick.iter_mut().for_each(|p| *p = 0);
        'tuples: loop {
            for j in 0..e {
                probe.lengths[j] = cfg.lmin(j).clone();
            }
            for i in 0..d {
                let (ha, hb) = options[i][pick[i]];
                let w = width[i];
                let n = &need[i][(ha - mbr.lo[i]) * w + (hb - mbr.lo[i])];
                let g = cfg.group_of(i);
                if *n > probe.lengths[g] {
                    probe.lengths[g] = n.clone();
                }
            }
            let feasible = (0..e).all(|j| cfg.within_max(j, &probe.lengths[j]));
            if feasible {
                for i in 0..d {
                    let (ha, hb) = options[i][pick[i]];
                    let side = cfg.side(i, &probe.lengths[cfg.group_of(i)]);
                    probe.anchor[i] = ha;
                    probe.reach[i] = extend_reach(ps, i, ha, hb, mbr.hi[i], &side);
                    probe.sides[i] = side;
                }
                visit(&probe, &sq);
            }
            if !advance(&mut pick, &zeros, &last) {
                break 'tuples;
            }
        }
    }
}
