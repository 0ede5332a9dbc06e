// SPDX-License-Identifier: Apache-2.0

//! Existence test: is some pair farther apart than `D`?
//!
//! Points are swept along the last dimension. A point that has left the
//! slab before another point's middle event is more than `D` away from it
//! in that dimension, so it remains to check the other dimensions against
//! the set of departed points.

use super::sweep::{for_each_event, DepartedExtrema, EventKind};
use crate::pointset::PointSet;
use crate::rangesearch::{Ext, Interval, RangeTree};

/// A pair at distance greater than `dist`, if one exists.
pub(crate) fn far_pair(ps: &PointSet, dist: i64) -> Option<(usize, usize)> {
    match ps.dim() {
        1 => spread_pair(ps, dist),
        2 => planar(ps, dist),
        _ => orthants(ps, dist),
    }
}

fn spread_pair(ps: &PointSet, dist: i64) -> Option<(usize, usize)> {
    let order = ps.axis_order(0);
    let (lo, hi) = (*order.first()?, *order.last()?);
    (ps.coord(hi, 0) - ps.coord(lo, 0) > dist).then_some((lo, hi))
}

fn planar(ps: &PointSet, dist: i64) -> Option<(usize, usize)> {
    let mut departed = DepartedExtrema::default();
    let mut found = None;
    for_each_event(ps, 1, dist, |kind, id| {
        if found.is_some() {
            return;
        }
        match kind {
            EventKind::Leave => departed.depart(ps.coord(id, 0), id),
            EventKind::Middle => {
                if let Some(j) = departed.farther_than(ps.coord(id, 0), dist) {
                    found = Some((j, id));
                }
            }
            EventKind::Enter => {}
        }
    });
    found
}

/// `d >= 3`: departed points live in a `(d-1)`-dimensional tree weighted by
/// id; every sign pattern of the remaining dimensions is one orthant query.
fn orthants(ps: &PointSet, dist: i64) -> Option<(usize, usize)> {
    let k = ps.dim() - 1;
    let mut coords = Vec::with_capacity(ps.len() * k);
    for p in 0..ps.len() {
        coords.extend_from_slice(&ps.point(p)[..k]);
    }
    let ids = (0..ps.len() as i64).collect();
    let mut tree = RangeTree::from_flat(k, coords, ids, false);
    let mut boxq = vec![Interval::ALL; k];
    let mut found = None;
    for_each_event(ps, k, dist, |kind, id| {
        if found.is_some() {
            return;
        }
        match kind {
            EventKind::Leave => tree.set_active(id, true).expect("valid id"),
            EventKind::Middle if tree.active_count() > 0 => {
                let point = ps.point(id);
                for signs in 0..1usize << k {
                    for (i, b) in boxq.iter_mut().enumerate() {
                        *b = if signs >> i & 1 == 1 {
                            Interval::at_least(point[i] + dist + 1)
                        } else {
                            Interval::at_most(point[i] - dist - 1)
                        };
                    }
                    if let Ext::Finite(j) = tree.weight_min(&boxq) {
                        found = Some((j as usize, id));
                        return;
                    }
                }
            }
            _ => {}
        }
    });
    found
}
