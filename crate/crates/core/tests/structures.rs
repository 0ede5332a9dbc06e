// SPDX-License-Identifier: Apache-2.0

use mdkit::pointset::{countsort_dimension, countsort_keys, sort_keys};
use mdkit::rangesearch::{
    build_halfspace_index, Ext, HalfspaceIndex, Interval, KeySpace, PosLookup, QueryAnswer, QueryKind, RangeTree, Side,
};
use mdkit::{compute_mbr, normalize_pointset, Subset};
use proptest::prelude::*;

fn rows(d: usize, max_r: usize, span: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-span..=span, d), 0..max_r)
}

fn interval(span: i64) -> impl Strategy<Value = Interval> {
    (prop::option::of(-span..=span), prop::option::of(-span..=span)).prop_map(|(a, b)| Interval {
        lo: a.unwrap_or(i64::MIN),
        hi: b.unwrap_or(i64::MAX),
    })
}

proptest! {
    #[test]
    fn pointset_round_trip(
        (d, pts) in (1usize..4).prop_flat_map(|d| (Just(d), rows(d, 30, 20)))
    ) {
        let ps = normalize_pointset(d, &pts).unwrap();
        prop_assert_eq!(ps.len(), pts.len());
        for (p, row) in pts.iter().enumerate() {
            prop_assert_eq!(ps.point(p), row.as_slice());
            for i in 0..d {
                let k = ps.rank(p, i);
                prop_assert!(k >= 1 && k <= ps.distinct(i));
                prop_assert_eq!(ps.value_at(i, k), row[i]);
            }
        }
        for i in 0..d {
            prop_assert!(ps.xp(i).windows(2).all(|w| w[0] < w[1]));
            let order = ps.axis_order(i);
            prop_assert!(order.windows(2).all(|w| ps.coord(w[0], i) <= ps.coord(w[1], i)));
        }
        let mbr = compute_mbr(&ps, &Subset::all(ps.len())).unwrap();
        prop_assert_eq!(mbr.is_none(), pts.is_empty());
        if let Some(b) = mbr {
            for p in 0..ps.len() {
                prop_assert!(b.contains_ranks(ps.ranks(p)));
            }
        }
    }

    #[test]
    fn countsort_equals_comparison_sort(keys in prop::collection::vec(-50i64..50, 0..200)) {
        let mut expect: Vec<usize> = (0..keys.len()).collect();
        expect.sort_by_key(|&i| (keys[i], i));
        prop_assert_eq!(countsort_keys(&keys, -50, 49).unwrap(), expect.clone());
        prop_assert_eq!(sort_keys(&keys), expect.clone());
        let rows: Vec<[i64; 2]> = keys.iter().map(|&k| [0, k]).collect();
        prop_assert_eq!(countsort_dimension(&rows, 1, -50, 49).unwrap(), expect);
    }

    #[test]
    fn range_tree_matches_scan(
        (d, pts, toggles, queries) in (1usize..4).prop_flat_map(|d| (
            Just(d),
            rows(d, 40, 10),
            prop::collection::vec((0usize..40, any::<bool>()), 0..30),
            prop::collection::vec(prop::collection::vec(interval(10), d), 1..8),
        ))
    ) {
        let weights: Vec<i64> = (0..pts.len() as i64).map(|i| (i * 7) % 11 - 5).collect();
        let mut tree = RangeTree::build(d, &pts, &weights).unwrap();
        let mut active = vec![true; pts.len()];
        for (id, on) in toggles {
            if id < pts.len() {
                tree.set_active(id, on).unwrap();
                active[id] = on;
            } else {
                prop_assert!(tree.set_active(id, on).is_err());
            }
        }
        prop_assert_eq!(tree.active_count(), active.iter().filter(|&&a| a).count());
        for q in &queries {
            let inside: Vec<usize> = (0..pts.len())
                .filter(|&p| active[p] && (0..d).all(|i| q[i].contains(pts[p][i])))
                .collect();
            let wmin = inside.iter().map(|&p| Ext::Finite(weights[p])).min().unwrap_or(Ext::PosInf);
            let wmax = inside.iter().map(|&p| Ext::Finite(weights[p])).max().unwrap_or(Ext::NegInf);
            prop_assert_eq!(tree.query(q, QueryKind::Count), QueryAnswer::Count(inside.len()));
            prop_assert_eq!(tree.query(q, QueryKind::Report), QueryAnswer::Report(inside.clone()));
            prop_assert_eq!(tree.query(q, QueryKind::WeightMin), QueryAnswer::Weight(wmin));
            prop_assert_eq!(tree.query(q, QueryKind::WeightMax), QueryAnswer::Weight(wmax));
        }
    }

    #[test]
    fn halfspace_matches_scan(
        entries in prop::collection::vec((-20i64..20, -100i64..100), 1..50),
        bounds in prop::collection::btree_set(-25i64..25, 1..20),
    ) {
        let triples: Vec<(i64, i64, usize)> = entries.iter().enumerate().map(|(i, &(k, w))| (k, w, i)).collect();
        let h = HalfspaceIndex::from_entries(triples).unwrap();
        let cands: Vec<i64> = bounds.iter().copied().collect();
        for side in [Side::Below, Side::Above] {
            let lookup = PosLookup::build(&h, &cands, side).unwrap();
            for &b in &cands {
                let ws: Vec<i64> = entries
                    .iter()
                    .filter(|&&(k, _)| match side { Side::Below => k < b, Side::Above => k > b })
                    .map(|&(_, w)| w)
                    .collect();
                let expect = (
                    ws.iter().copied().map(Ext::Finite).min().unwrap_or(Ext::PosInf),
                    ws.iter().copied().map(Ext::Finite).max().unwrap_or(Ext::NegInf),
                );
                prop_assert_eq!(h.extrema(side, b, None), expect);
                prop_assert_eq!(h.extrema(side, b, Some(&lookup)), expect);
                prop_assert_eq!(lookup.get(b), Some(h.position(side, b)));
            }
        }
    }

    #[test]
    fn pointset_halfspace_index_weights_are_ranks(
        (d, pts) in (2usize..4).prop_flat_map(|d| (Just(d), rows(d, 25, 8))),
        bound in -9i64..9,
    ) {
        prop_assume!(!pts.is_empty());
        let ps = normalize_pointset(d, &pts).unwrap();
        let s = Subset::all(ps.len());
        let h = build_halfspace_index(&ps, &s, 0, 1, KeySpace::Coords).unwrap();
        let below: Vec<i64> = (0..ps.len()).filter(|&p| ps.coord(p, 0) < bound).map(|p| ps.rank(p, 1) as i64).collect();
        let expect = below.iter().copied().map(Ext::Finite).min().unwrap_or(Ext::PosInf);
        prop_assert_eq!(h.extrema(Side::Below, bound, None).0, expect);
    }
}

#[test]
fn empty_subset_has_no_index() {
    let ps = normalize_pointset(2, &[[1, 2]]).unwrap();
    assert!(build_halfspace_index(&ps, &Subset::empty(), 0, 0, KeySpace::Ranks).is_err());
}
