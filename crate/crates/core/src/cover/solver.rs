// SPDX-License-Identifier: Apache-2.0

//! Exhaustive recursive optimizer over candidate placements.

use std::fmt;
use std::str::FromStr;

use super::candidates::{for_each_naive, for_each_pigeonhole, Probe};
use super::complement::{scan_outside, HalfspaceSet, RankWindow, RegionIndex};
use super::model::{AggModel, Cost, CostModel, Covered, GeoRect, GroupConfig, Sum, Volume};
use crate::error::{Error, Result};
use crate::pointset::{mbr_of_ids, IndexBox, PointSet, Subset};
use crate::scalar::Scalar;

/// Algorithm variant: candidate generation times complement computation.
///
/// | variant | generation  | uncovered set / box                 |
/// |---------|-------------|-------------------------------------|
/// | `A`     | every anchor | linear scan                        |
/// | `B`     | pinned sides | linear scan                        |
/// | `C`     | every anchor | half-space indexes, region reports |
/// | `D`     | pinned sides | half-space indexes, region reports |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    A,
    B,
    C,
    D,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::A, Variant::B, Variant::C, Variant::D];

    pub fn pigeonhole(self) -> bool {
        matches!(self, Variant::B | Variant::D)
    }

    pub fn indexed(self) -> bool {
        matches!(self, Variant::C | Variant::D)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Variant::A => "A",
            Variant::B => "B",
            Variant::C => "C",
            Variant::D => "D",
        };
        f.write_str(c)
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Variant::A),
            "B" | "b" => Ok(Variant::B),
            "C" | "c" => Ok(Variant::C),
            "D" | "d" => Ok(Variant::D),
            other => Err(Error::InvalidConfig(format!("unknown variant {other:?}"))),
        }
    }
}

pub struct CoverProblem<'a, S> {
    pub points: &'a PointSet,
    pub config: GroupConfig<S>,
    pub kh: usize,
    pub cost: &'a dyn CostModel<S>,
    pub agg: &'a dyn AggModel<S>,
    pub variant: Variant,
}

impl<'a, S: Scalar> CoverProblem<'a, S> {
    /// Volume cost, sum aggregation, variant `D`.
    pub fn new(points: &'a PointSet, config: GroupConfig<S>, kh: usize) -> Result<Self> {
        if kh == 0 {
            return Err(Error::InvalidConfig("kh must be at least 1".into()));
        }
        if config.dim() != points.dim() {
            return Err(Error::InvalidConfig(format!(
                "configuration has {} dimensions, points have {}",
                config.dim(),
                points.dim()
            )));
        }
        Ok(CoverProblem {
            points,
            config,
            kh,
            cost: &Volume,
            agg: &Sum,
            variant: Variant::D,
        })
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_cost(mut self, cost: &'a dyn CostModel<S>) -> Self {
        self.cost = cost;
        self
    }

    pub fn with_agg(mut self, agg: &'a dyn AggModel<S>) -> Self {
        self.agg = agg;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverSolution<S> {
    pub aggregate: Cost<S>,
    pub placements: Vec<GeoRect<S>>,
}

/// Lengths `max(lmin(j), need(j))` anchored at `anchor`, or `None` when some
/// group exceeds `lmax(j)`.
pub fn finalize_anchor_rect<S: Scalar>(cfg: &GroupConfig<S>, anchor: &[S], need: &[S]) -> Option<GeoRect<S>> {
    let lengths: Vec<S> = (0..cfg.group_count())
        .map(|j| need[j].clone().max_of(cfg.lmin(j).clone()))
        .collect();
    if !(0..cfg.group_count()).all(|j| cfg.within_max(j, &lengths[j])) {
        return None;
    }
    let xmax = (0..cfg.dim())
        .map(|i| anchor[i].clone() + cfg.side(i, &lengths[cfg.group_of(i)]))
        .collect();
    Some(GeoRect {
        xmin: anchor.to_vec(),
        xmax,
        lengths,
    })
}

/// All candidates from the unrestricted generator, in enumeration order.
pub fn gen_candidates_naive<S: Scalar>(prob: &CoverProblem<'_, S>, mbr: &IndexBox) -> Vec<GeoRect<S>> {
    let mut out = Vec::new();
    for_each_naive(prob.points, &prob.config, mbr, &mut |p| out.push(p.to_rect(prob.points)));
    out
}

/// Candidates from the pinned-side generator (requires `kh >= 2`), each
/// tagged with its pinned side set (`i` = lower side of dimension `i`,
/// `d + i` = upper side).
pub fn gen_candidates_pigeonhole<S: Scalar>(
    prob: &CoverProblem<'_, S>,
    mbr: &IndexBox,
    kh: usize,
) -> Vec<(Vec<usize>, GeoRect<S>)> {
    let mut out = Vec::new();
    for_each_pigeonhole(prob.points, &prob.config, mbr, kh, &mut |p, sq| {
        out.push((sq.to_vec(), p.to_rect(prob.points)))
    });
    out
}

/// Single-rectangle cover anchored at the lower corner of `mbr`.
pub fn base_cover_cost<S: Scalar>(prob: &CoverProblem<'_, S>, s: &Subset, mbr: &IndexBox) -> (Cost<S>, Option<GeoRect<S>>) {
    let solver = Solver::new(prob);
    let ids = if prob.cost.depends_on_points() {
        Some(s.ids())
    } else {
        None
    };
    match solver.base_rect(mbr) {
        Some(rect) => (solver.base_cost_of(&rect, ids), Some(rect)),
        None => (Cost::Infinite, None),
    }
}

/// Optimal cover of all points with at most `kh` rectangles.
pub fn hrcover<S: Scalar>(prob: &CoverProblem<'_, S>) -> CoverSolution<S> {
    let ps = prob.points;
    let all: Vec<usize> = (0..ps.len()).collect();
    let Some(mbr) = mbr_of_ids(ps, &all) else {
        return CoverSolution {
            aggregate: prob.agg.identity(),
            placements: Vec::new(),
        };
    };
    Solver::new(prob).solve(&all, &mbr, prob.kh)
}

struct Solver<'p, 'a, S> {
    prob: &'p CoverProblem<'a, S>,
    with_points: bool,
}

impl<'p, 'a, S: Scalar> Solver<'p, 'a, S> {
    fn new(prob: &'p CoverProblem<'a, S>) -> Self {
        Solver {
            prob,
            with_points: prob.cost.depends_on_points(),
        }
    }

    fn covered<'x>(&'x self, ids: &'x [usize]) -> Option<Covered<'x>> {
        self.with_points.then_some(Covered {
            points: self.prob.points,
            ids,
        })
    }

    fn base_rect(&self, mbr: &IndexBox) -> Option<GeoRect<S>> {
        let ps = self.prob.points;
        let cfg = &self.prob.config;
        let mut need: Vec<S> = vec![S::zero(); cfg.group_count()];
        let mut anchor = Vec::with_capacity(ps.dim());
        for i in 0..ps.dim() {
            let lo = ps.value_at(i, mbr.lo[i]);
            let span = cfg.unscale(i, S::from_int(ps.value_at(i, mbr.hi[i]) - lo));
            let g = cfg.group_of(i);
            if span > need[g] {
                need[g] = span;
            }
            anchor.push(S::from_int(lo));
        }
        finalize_anchor_rect(cfg, &anchor, &need)
    }

    fn base_cost_of(&self, rect: &GeoRect<S>, ids: Option<&[usize]>) -> Cost<S> {
        let covered = ids.and_then(|ids| self.covered(ids));
        self.prob.cost.cost(&rect.sides(), covered)
    }

    /// Cost of covering `mbr` with one rectangle, without building it.
    fn base_cost(&self, mbr: &IndexBox, ids: &[usize], sides: &mut [S], lens: &mut [S]) -> Cost<S> {
        let ps = self.prob.points;
        let cfg = &self.prob.config;
        for (j, l) in lens.iter_mut().enumerate() {
            *l = cfg.lmin(j).clone();
        }
        for i in 0..ps.dim() {
            let span = S::from_int(ps.value_at(i, mbr.hi[i]) - ps.value_at(i, mbr.lo[i]));
            let span = cfg.unscale(i, span);
            let g = cfg.group_of(i);
            if span > lens[g] {
                lens[g] = span;
            }
        }
        if !(0..lens.len()).all(|j| cfg.within_max(j, &lens[j])) {
            return Cost::Infinite;
        }
        for (i, side) in sides.iter_mut().enumerate() {
            *side = cfg.side(i, &lens[cfg.group_of(i)]);
        }
        self.prob.cost.cost(sides, self.covered(ids))
    }

    fn solve(&self, s: &[usize], mbr: &IndexBox, kh: usize) -> CoverSolution<S> {
        let prob = self.prob;
        let ps = prob.points;
        let d = ps.dim();
        let agg = prob.agg;
        if s.is_empty() {
            return CoverSolution {
                aggregate: agg.identity(),
                placements: Vec::new(),
            };
        }
        if kh == 1 {
            return match self.base_rect(mbr) {
                Some(rect) => CoverSolution {
                    aggregate: self.base_cost_of(&rect, Some(s)),
                    placements: vec![rect],
                },
                None => CoverSolution {
                    aggregate: Cost::Infinite,
                    placements: Vec::new(),
                },
            };
        }

        let indexed = prob.variant.indexed();
        // The uncovered set itself is needed to recurse further or to price
        // a rectangle by its contents; otherwise its bounding box suffices.
        let need_rest = kh > 2 || self.with_points;
        let halfspace = indexed.then(|| HalfspaceSet::from_ids(ps, s, true));
        let regions = (indexed && need_rest).then(|| RegionIndex::from_ids(ps, s));

        let mut best = CoverSolution {
            aggregate: Cost::Infinite,
            placements: Vec::new(),
        };
        let mut rest: Vec<usize> = Vec::with_capacity(s.len());
        let mut inside: Vec<usize> = Vec::with_capacity(s.len());
        let mut below = vec![0usize; d];
        let mut above = vec![0usize; d];
        let mut sides = vec![S::zero(); d];
        let mut lens = vec![S::zero(); prob.config.group_count()];
        let mut window = RankWindow {
            lo: vec![0; d],
            hi: vec![0; d],
        };

        let mut visit = |probe: &Probe<S>| {
            window.lo.copy_from_slice(&probe.anchor);
            window.hi.copy_from_slice(&probe.reach);
            let rest_mbr = match (&halfspace, &regions) {
                (Some(hs), None) => hs.outside_mbr(&window, &mut below, &mut above),
                (Some(hs), Some(rt)) => {
                    rt.outside(&window, &mut rest);
                    hs.outside_mbr(&window, &mut below, &mut above)
                }
                _ => {
                    scan_outside(ps, s, &window, &mut rest);
                    mbr_of_ids(ps, &rest)
                }
            };
            let cost = if self.with_points {
                inside.clear();
                let mut r = rest.iter().peekable();
                for &p in s {
                    if r.peek() == Some(&&p) {
                        r.next();
                    } else {
                        inside.push(p);
                    }
                }
                prob.cost.cost(&probe.sides, self.covered(&inside))
            } else {
                prob.cost.cost(&probe.sides, None)
            };
            let Cost::Finite(_) = cost else { return };

            match rest_mbr {
                None => {
                    let total = agg.combine(&cost, &agg.identity());
                    if total.lt(&best.aggregate) {
                        best.aggregate = total;
                        best.placements = vec![probe.to_rect(ps)];
                    }
                }
                Some(rest_box) if kh == 2 => {
                    let sub = self.base_cost(&rest_box, &rest, &mut sides, &mut lens);
                    let total = agg.combine(&cost, &sub);
                    if total.lt(&best.aggregate) {
                        best.aggregate = total;
                        best.placements = vec![
                            probe.to_rect(ps),
                            self.base_rect(&rest_box).expect("feasible base"),
                        ];
                    }
                }
                Some(rest_box) => {
                    let sub = self.solve(&rest, &rest_box, kh - 1);
                    let total = agg.combine(&cost, &sub.aggregate);
                    if total.lt(&best.aggregate) {
                        best.aggregate = total;
                        let mut placements = Vec::with_capacity(sub.placements.len() + 1);
                        placements.push(probe.to_rect(ps));
                        placements.extend(sub.placements);
                        best.placements = placements;
                    }
                }
            }
        };

        if prob.variant.pigeonhole() {
            for_each_pigeonhole(ps, &prob.config, mbr, kh, &mut |p, _| visit(p));
        } else {
            for_each_naive(ps, &prob.config, mbr, &mut visit);
        }
        best
    }
}
