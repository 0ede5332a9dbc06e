// SPDX-License-Identifier: Apache-2.0

//! Slab sweep along one dimension.

use crate::pointset::PointSet;

/// Event kinds, in tie-breaking order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EventKind {
    Enter = 0,
    Middle = 1,
    Leave = 2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SweepEvent {
    pub xr: i64,
    pub kind: EventKind,
    pub id: usize,
}

/// Replays the `3r` events of a slab of width `2 * dist` along `dim` in
/// `(xr, kind)` order. The three per-kind streams are each already sorted
/// by the presorted axis order, so this is a three-way merge.
pub(crate) fn for_each_event(ps: &PointSet, dim: usize, dist: i64, mut visit: impl FnMut(EventKind, usize)) {
    let order = ps.axis_order(dim);
    let n = order.len();
    let x = |t: usize| ps.coord(order[t], dim);
    let (mut e, mut m, mut l) = (0, 0, 0);
    while l < n {
        let xe = if e < n { x(e) } else { i64::MAX };
        let xm = if m < n { x(m) + dist } else { i64::MAX };
        let xl = x(l) + 2 * dist;
        if e < n && xe <= xm && xe <= xl {
            visit(EventKind::Enter, order[e]);
            e += 1;
        } else if m < n && xm <= xl {
            visit(EventKind::Middle, order[m]);
            m += 1;
        } else {
            visit(EventKind::Leave, order[l]);
            l += 1;
        }
    }
}

/// The full ordered event schedule, mainly for inspection.
pub fn sweep_events(ps: &PointSet, dim: usize, dist: i64) -> Vec<SweepEvent> {
    let mut out = Vec::with_capacity(3 * ps.len());
    for_each_event(ps, dim, dist, |kind, id| {
        let x = ps.coord(id, dim);
        let xr = match kind {
            EventKind::Enter => x,
            EventKind::Middle => x + dist,
            EventKind::Leave => x + 2 * dist,
        };
        out.push(SweepEvent { xr, kind, id });
    });
    out
}

/// Running extrema of the first coordinate over departed points, with the
/// ids attaining them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepartedExtrema {
    pub xmin: i64,
    pub xmax: i64,
    pub argmin: Option<usize>,
    pub argmax: Option<usize>,
}

impl Default for DepartedExtrema {
    fn default() -> Self {
        DepartedExtrema {
            xmin: i64::MAX,
            xmax: i64::MIN,
            argmin: None,
            argmax: None,
        }
    }
}

impl DepartedExtrema {
    pub fn depart(&mut self, x: i64, id: usize) {
        if x < self.xmin {
            self.xmin = x;
            self.argmin = Some(id);
        }
        if x > self.xmax {
            self.xmax = x;
            self.argmax = Some(id);
        }
    }

    /// A departed point farther than `dist` from `x`, if any.
    pub fn farther_than(&self, x: i64, dist: i64) -> Option<usize> {
        if self.argmax.is_some() && self.xmax > x + dist {
            self.argmax
        } else if self.argmin.is_some() && self.xmin < x - dist {
            self.argmin
        } else {
            None
        }
    }
}
