// SPDX-License-Identifier: Apache-2.0

//! `np(i)`: points within distance `D` of `i`, counting `i` itself.

use super::sweep::{for_each_event, EventKind};
use crate::pointset::PointSet;
use crate::rangesearch::{Interval, RangeTree};

fn flat_prefix(ps: &PointSet, dims: usize) -> Vec<i64> {
    let mut coords = Vec::with_capacity(ps.len() * dims);
    for p in 0..ps.len() {
        coords.extend_from_slice(&ps.point(p)[..dims]);
    }
    coords
}

/// Fills `boxq` for the dimension subset `mask`: `[x - dist, x + dist]` on
/// members, unbounded elsewhere.
fn subset_box(point: &[i64], mask: usize, dist: i64, boxq: &mut [Interval]) {
    for (i, b) in boxq.iter_mut().enumerate() {
        *b = if mask >> i & 1 == 1 {
            Interval::closed(point[i] - dist, point[i] + dist)
        } else {
            Interval::ALL
        };
    }
}

/// Inclusion-exclusion over the `2^d - 1` non-empty dimension subsets on
/// one static `d`-dimensional tree.
pub(crate) fn np_static(ps: &PointSet, dist: i64) -> Vec<usize> {
    let d = ps.dim();
    let tree = RangeTree::from_flat(d, flat_prefix(ps, d), vec![0; ps.len()], true);
    let mut boxq = vec![Interval::ALL; d];
    (0..ps.len())
        .map(|p| {
            let point = ps.point(p);
            let mut total = 0i64;
            for mask in 1..1usize << d {
                subset_box(point, mask, dist, &mut boxq);
                let c = tree.count(&boxq) as i64;
                total += if mask.count_ones() % 2 == 1 { c } else { -c };
            }
            total as usize
        })
        .collect()
}

/// The recursive sweep: subsets containing the last of `dims` dimensions
/// come from a slab sweep over a toggled `(dims - 1)`-dimensional tree, the
/// rest from the same procedure on the first `dims - 1` dimensions.
pub(crate) fn np_sweep(ps: &PointSet, dist: i64) -> Vec<usize> {
    let mut np = vec![0i64; ps.len()];
    for dims in (1..=ps.dim()).rev() {
        sweep_level(ps, dims, dist, &mut np);
    }
    np.into_iter().map(|v| v as usize).collect()
}

fn sweep_level(ps: &PointSet, dims: usize, dist: i64, np: &mut [i64]) {
    let sweep_dim = dims - 1;
    if sweep_dim == 0 {
        let mut inside = 0i64;
        for_each_event(ps, 0, dist, |kind, id| match kind {
            EventKind::Enter => inside += 1,
            EventKind::Leave => inside -= 1,
            EventKind::Middle => np[id] += inside,
        });
        return;
    }
    let mut tree = RangeTree::from_flat(sweep_dim, flat_prefix(ps, sweep_dim), vec![0; ps.len()], false);
    let mut boxq = vec![Interval::ALL; sweep_dim];
    for_each_event(ps, sweep_dim, dist, |kind, id| match kind {
        EventKind::Enter => tree.set_active(id, true).expect("valid id"),
        EventKind::Leave => tree.set_active(id, false).expect("valid id"),
        EventKind::Middle => {
            let point = ps.point(id);
            for mask in 0..1usize << sweep_dim {
                subset_box(point, mask, dist, &mut boxq);
                let c = tree.count(&boxq) as i64;
                np[id] += if mask.count_ones() % 2 == 0 { c } else { -c };
            }
        }
    });
}
