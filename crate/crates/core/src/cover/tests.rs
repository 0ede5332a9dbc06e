// SPDX-License-Identifier: Apache-2.0

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::pointset::{compute_mbr, normalize_pointset, PointSet, Subset};

type Q = Rational64;

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn intervals(rects: &[GeoRect<Q>]) -> Vec<(Q, Q)> {
    rects.iter().map(|r| (r.xmin[0], r.xmax[0])).collect()
}

fn cfg(groups: Vec<usize>, lmin: Vec<i64>, lmax: Vec<Option<i64>>) -> GroupConfig<Q> {
    let d = groups.len();
    GroupConfig::new(
        groups,
        vec![q(1); d],
        lmin.into_iter().map(q).collect(),
        lmax.into_iter().map(|v| v.map(q)).collect(),
    )
    .unwrap()
}

#[test]
fn finalize_examples() {
    let sep = cfg(vec![0, 1], vec![0, 0], vec![None, None]);
    let r = finalize_anchor_rect(&sep, &[q(0), q(0)], &[q(4), q(2)]).unwrap();
    assert_eq!((r.xmax.clone(), r.lengths.clone()), (vec![q(4), q(2)], vec![q(4), q(2)]));
    let one = cfg(vec![0, 0], vec![0], vec![None]);
    let r = finalize_anchor_rect(&one, &[q(0), q(0)], &[q(4)]).unwrap();
    assert_eq!(r.xmax, vec![q(4), q(4)]);
    let tight = cfg(vec![0, 1], vec![0, 0], vec![Some(3), Some(3)]);
    assert!(finalize_anchor_rect(&tight, &[q(0), q(0)], &[q(4), q(2)]).is_none());
}

#[test]
fn naive_generation_one_dimension() {
    let ps = normalize_pointset(1, &[[0], [4]]).unwrap();
    let prob = CoverProblem::new(&ps, GroupConfig::separate(1), 2).unwrap();
    let mbr = compute_mbr(&ps, &Subset::all(2)).unwrap().unwrap();
    let got = intervals(&gen_candidates_naive(&prob, &mbr));
    assert_eq!(got, vec![(q(0), q(0)), (q(0), q(4)), (q(4), q(4))]);
}

#[test]
fn naive_generation_lmin_above_differences() {
    let ps = normalize_pointset(1, &[[0], [4]]).unwrap();
    let prob = CoverProblem::new(&ps, cfg(vec![0], vec![5], vec![None]), 2).unwrap();
    let mbr = compute_mbr(&ps, &Subset::all(2)).unwrap().unwrap();
    let got = gen_candidates_naive(&prob, &mbr);
    assert_eq!(got.len(), 2);
    assert!(got.iter().all(|r| r.lengths == vec![q(5)]));
}

#[test]
fn naive_generation_keeps_clamped_lengths() {
    // lmin = 3 falls between the offsets 0 and 4: both clamp(0) = 3 and 4
    // must be offered from the anchor at 0.
    let ps = normalize_pointset(1, &[[0], [4], [9]]).unwrap();
    let prob = CoverProblem::new(&ps, cfg(vec![0], vec![3], vec![None]), 2).unwrap();
    let mbr = compute_mbr(&ps, &Subset::all(3)).unwrap().unwrap();
    let from_zero: Vec<Q> = gen_candidates_naive(&prob, &mbr)
        .into_iter()
        .filter(|r| r.xmin[0] == q(0))
        .map(|r| r.lengths[0])
        .collect();
    assert_eq!(from_zero, vec![q(3), q(4), q(9)]);
}

#[test]
fn pinned_counts() {
    assert_eq!(pinned_count(3, 6), 1);
    assert_eq!(pinned_count(3, 2), 3);
    assert_eq!(pinned_count(2, 3), 2);
    assert_eq!(pinned_count(1, 2), 1);
}

#[test]
fn pigeonhole_one_dimension() {
    let ps = normalize_pointset(1, &[[0], [9]]).unwrap();
    let prob = CoverProblem::new(&ps, GroupConfig::separate(1), 2).unwrap();
    let mbr = compute_mbr(&ps, &Subset::all(2)).unwrap().unwrap();
    let got = gen_candidates_pigeonhole(&prob, &mbr, 2);
    let lower: Vec<_> = got.iter().filter(|(sq, _)| sq == &[0]).map(|(_, r)| (r.xmin[0], r.xmax[0])).collect();
    let upper: Vec<_> = got.iter().filter(|(sq, _)| sq == &[1]).map(|(_, r)| (r.xmin[0], r.xmax[0])).collect();
    assert_eq!(lower, vec![(q(0), q(0)), (q(0), q(9))]);
    assert_eq!(upper, vec![(q(0), q(9)), (q(9), q(9))]);
}

#[test]
fn pigeonhole_pins_one_side_each() {
    let ps = normalize_pointset(2, &[[0, 0], [3, 5], [7, 2]]).unwrap();
    let prob = CoverProblem::new(&ps, GroupConfig::<Q>::separate(2), 4).unwrap();
    let mbr = compute_mbr(&ps, &Subset::all(3)).unwrap().unwrap();
    for (sq, r) in gen_candidates_pigeonhole(&prob, &mbr, 4) {
        assert_eq!(sq.len(), 1);
        let s = sq[0];
        if s < 2 {
            assert_eq!(r.xmin[s], q(ps.value_at(s, mbr.lo[s])));
        } else {
            assert_eq!(r.xmax[s - 2], q(ps.value_at(s - 2, mbr.hi[s - 2])));
        }
    }
}

#[test]
fn pigeonhole_per_subset_is_cubic() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rows: Vec<Vec<i64>> = (0..60).map(|_| (0..3).map(|_| rng.gen_range(0..6)).collect()).collect();
    let ps = normalize_pointset(3, &rows).unwrap();
    let prob = CoverProblem::new(&ps, GroupConfig::<Q>::separate(3), 2).unwrap();
    let mbr = compute_mbr(&ps, &Subset::all(ps.len())).unwrap().unwrap();
    let n = ps.max_distinct();
    let got = gen_candidates_pigeonhole(&prob, &mbr, 2);
    let mut per: std::collections::BTreeMap<Vec<usize>, usize> = Default::default();
    for (sq, _) in &got {
        *per.entry(sq.clone()).or_default() += 1;
    }
    assert_eq!(per.len(), 20);
    assert!(per.values().all(|&c| c <= n * n * n));
    assert!(per.values().any(|&c| c == n * n * n));
}

#[test]
fn base_cost_examples() {
    let ps = normalize_pointset(2, &[[0, 0], [4, 2]]).unwrap();
    let s = Subset::all(2);
    let mbr = compute_mbr(&ps, &s).unwrap().unwrap();
    let sep = CoverProblem::new(&ps, GroupConfig::separate(2), 1).unwrap();
    assert_eq!(base_cover_cost(&sep, &s, &mbr).0, Cost::Finite(q(8)));
    let one = CoverProblem::new(&ps, cfg(vec![0, 0], vec![0], vec![None]), 1).unwrap();
    assert_eq!(base_cover_cost(&one, &s, &mbr).0, Cost::Finite(q(16)));
    let tight = CoverProblem::new(&ps, cfg(vec![0, 1], vec![0, 0], vec![Some(3), Some(3)]), 1).unwrap();
    assert_eq!(base_cover_cost(&tight, &s, &mbr), (Cost::Infinite, None));
}

#[test]
fn empty_point_set_costs_identity() {
    let rows: [[i64; 2]; 0] = [];
    let ps = normalize_pointset(2, &rows).unwrap();
    for v in Variant::ALL {
        let prob = CoverProblem::new(&ps, GroupConfig::separate(2), 2).unwrap().with_variant(v);
        let sol = hrcover(&prob);
        assert_eq!(sol.aggregate, Cost::Finite(q(0)));
        assert!(sol.placements.is_empty());
    }
}

#[test]
fn two_flat_rectangles_cost_nothing() {
    let ps = normalize_pointset(2, &[[0, 0], [0, 1], [10, 10]]).unwrap();
    for v in Variant::ALL {
        let prob = CoverProblem::new(&ps, GroupConfig::separate(2), 2).unwrap().with_variant(v);
        let sol = hrcover(&prob);
        assert_eq!(sol.aggregate, Cost::Finite(q(0)), "variant {v}");
        assert_valid(&ps, &prob.config, &sol);
    }
}

#[test]
fn point_set_with_duplicates() {
    let ps = normalize_pointset(2, &[[1, 1], [1, 1], [5, 5], [5, 5]]).unwrap();
    for v in Variant::ALL {
        let prob = CoverProblem::new(&ps, GroupConfig::separate(2), 2).unwrap().with_variant(v);
        assert_eq!(hrcover(&prob).aggregate, Cost::Finite(q(0)));
    }
}

#[test]
fn infeasible_when_lmax_too_small() {
    let ps = normalize_pointset(1, &[[0], [5], [10]]).unwrap();
    for v in Variant::ALL {
        let prob = CoverProblem::new(&ps, cfg(vec![0], vec![0], vec![Some(1)]), 2).unwrap().with_variant(v);
        let sol = hrcover(&prob);
        assert_eq!(sol.aggregate, Cost::Infinite);
        assert!(sol.placements.is_empty());
    }
}

pub(crate) fn assert_valid(ps: &PointSet, cfg: &GroupConfig<Q>, sol: &CoverSolution<Q>) {
    if let Cost::Finite(total) = &sol.aggregate {
        for p in 0..ps.len() {
            assert!(sol.placements.iter().any(|r| r.contains(ps.point(p))), "point {p} uncovered");
        }
        assert!(sol.placements.iter().all(|r| r.satisfies(cfg)));
        let sum = sol.placements.iter().map(volume_cost).fold(q(0), |a, b| a + b);
        assert_eq!(sum, *total);
    }
}

/// Optimal 1-D cover: consecutive runs of sorted distinct values, each run
/// one interval of length `max(lmin, span)` (must be `<= lmax`); sum of
/// lengths, at most `kh` runs.
fn line_oracle(values: &[i64], kh: usize, lmin: i64, lmax: Option<i64>) -> Option<i64> {
    let mut xs = values.to_vec();
    xs.sort_unstable();
    xs.dedup();
    let n = xs.len();
    if n == 0 {
        return Some(0);
    }
    // best[k][i]: cover of xs[..i] with k intervals.
    let mut best = vec![vec![None::<i64>; n + 1]; kh + 1];
    best[0][0] = Some(0);
    for k in 1..=kh {
        best[k][0] = Some(0);
        for i in 1..=n {
            let mut b = best[k - 1][i];
            for j in 0..i {
                let len = (xs[i - 1] - xs[j]).max(lmin);
                if lmax.is_some_and(|m| len > m) {
                    continue;
                }
                if let Some(prev) = best[k - 1][j] {
                    let c = prev + len;
                    b = Some(b.map_or(c, |x: i64| x.min(c)));
                }
            }
            best[k][i] = b;
        }
    }
    best[kh][n]
}

#[test]
fn one_dimension_matches_interval_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..150 {
        let r = rng.gen_range(1..9);
        let vals: Vec<i64> = (0..r).map(|_| rng.gen_range(0..15)).collect();
        let kh = rng.gen_range(1..4);
        let lmin = rng.gen_range(0..4);
        let lmax = if rng.gen_bool(0.5) { None } else { Some(lmin + rng.gen_range(0..8)) };
        let rows: Vec<[i64; 1]> = vals.iter().map(|&v| [v]).collect();
        let ps = normalize_pointset(1, &rows).unwrap();
        let expect = line_oracle(&vals, kh, lmin, lmax);
        for v in Variant::ALL {
            let prob = CoverProblem::new(&ps, cfg(vec![0], vec![lmin], vec![lmax]), kh).unwrap().with_variant(v);
            let sol = hrcover(&prob);
            assert_eq!(sol.aggregate.finite().copied(), expect.map(q), "{vals:?} kh={kh} lmin={lmin} lmax={lmax:?} {v}");
            assert_valid(&ps, &prob.config, &sol);
        }
    }
}

fn random_instance(rng: &mut ChaCha8Rng, d: usize, r: usize) -> (PointSet, GroupConfig<Q>) {
    let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..d).map(|_| rng.gen_range(0..9)).collect()).collect();
    let ps = normalize_pointset(d, &rows).unwrap();
    let e = rng.gen_range(1..=d);
    let groups: Vec<usize> = (0..d).map(|i| if i < e { i } else { rng.gen_range(0..e) }).collect();
    let lmin: Vec<i64> = (0..e).map(|_| rng.gen_range(0..3)).collect();
    let lmax = lmin
        .iter()
        .map(|&lo| if rng.gen_bool(0.5) { None } else { Some(lo + rng.gen_range(0..6)) })
        .collect();
    (ps, cfg(groups, lmin, lmax))
}

#[test]
fn variants_agree_on_small_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let d = rng.gen_range(1..=3);
        let r = rng.gen_range(0..8);
        let kh = rng.gen_range(1..=3);
        let (ps, config) = random_instance(&mut rng, d, r);
        let mut reference = None;
        for v in Variant::ALL {
            let prob = CoverProblem::new(&ps, config.clone(), kh).unwrap().with_variant(v);
            let sol = hrcover(&prob);
            assert_valid(&ps, &config, &sol);
            match &reference {
                None => reference = Some(sol.aggregate),
                Some(a) => assert_eq!(a, &sol.aggregate, "variant {v}"),
            }
        }
    }
}

#[test]
fn more_rectangles_never_cost_more() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..25 {
        let d = rng.gen_range(1..=2);
        let r = rng.gen_range(1..9);
        let (ps, config) = random_instance(&mut rng, d, r);
        let mut prev = Cost::Infinite;
        for kh in 1..=3 {
            let prob = CoverProblem::new(&ps, config.clone(), kh).unwrap();
            let c = hrcover(&prob).aggregate;
            assert!(c <= prev, "kh={kh}: {c} > {prev}");
            prev = c;
        }
    }
}

/// Volume plus the number of covered points.
struct VolumePlusCount;

impl CostModel<Q> for VolumePlusCount {
    fn depends_on_points(&self) -> bool {
        true
    }

    fn cost(&self, sides: &[Q], covered: Option<Covered<'_>>) -> Cost<Q> {
        let n = covered.expect("points requested").ids.len() as i64;
        Cost::Finite(sides.iter().fold(q(1), |a, s| a * s) + q(n))
    }
}

#[test]
fn point_dependent_cost_same_across_strategies() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let d = rng.gen_range(1..=2);
        let r = rng.gen_range(1..7);
        let (ps, config) = random_instance(&mut rng, d, r);
        let kh = rng.gen_range(1..=3);
        let expect = hrcover(&CoverProblem::new(&ps, config.clone(), kh).unwrap().with_cost(&VolumePlusCount).with_variant(Variant::A));
        let got = hrcover(&CoverProblem::new(&ps, config.clone(), kh).unwrap().with_cost(&VolumePlusCount).with_variant(Variant::C));
        assert_eq!(expect.aggregate, got.aggregate);
        assert_eq!(expect.placements, got.placements);
    }
}

#[test]
fn max_aggregation() {
    let ps = normalize_pointset(1, &[[0], [2], [10], [15]]).unwrap();
    for v in Variant::ALL {
        let prob = CoverProblem::new(&ps, GroupConfig::separate(1), 2).unwrap().with_agg(&Max).with_variant(v);
        assert_eq!(hrcover(&prob).aggregate, Cost::Finite(q(5)));
    }
}

#[test]
fn rational_factors() {
    // Dimension 1 scaled by 1/2: a group length l gives side l/2 there.
    let ps = normalize_pointset(2, &[[0, 0], [3, 4]]).unwrap();
    let config = GroupConfig::new(vec![0, 0], vec![q(1), Q::new(1, 2)], vec![q(0)], vec![None]).unwrap();
    for v in Variant::ALL {
        let prob = CoverProblem::new(&ps, config.clone(), 1).unwrap().with_variant(v);
        let sol = hrcover(&prob);
        // l = max(3/1, 4/(1/2)) = 8, sides 8 and 4.
        assert_eq!(sol.aggregate, Cost::Finite(q(32)));
        assert_eq!(sol.placements[0].lengths, vec![q(8)]);
    }
}

#[test]
fn f64_scalar_agrees_with_rationals() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let (ps, _) = random_instance(&mut rng, 2, 6);
        let exact = hrcover(&CoverProblem::new(&ps, GroupConfig::<Q>::separate(2), 2).unwrap());
        let float = hrcover(&CoverProblem::new(&ps, GroupConfig::<f64>::separate(2), 2).unwrap());
        let e = *exact.aggregate.finite().unwrap();
        assert_eq!(float.aggregate, Cost::Finite((*e.numer() / *e.denom()) as f64));
    }
}
