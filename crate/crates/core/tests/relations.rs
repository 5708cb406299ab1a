//! Relations against naive oracles written directly from their definitions.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use dprox::random::{seeded_space, space_family};
use dprox::relations::{
    feature_gap, gap, hull_intersects, shared_description, strong_inclusion, BallEnlargement,
    Enlargement, RelationSpec,
};
use dprox::{build_space, descriptive_intersection, saturation, DescribedSpace, Epsilon, FeatureSet, FeatureVector, PointSet};
use proptest::prelude::*;

fn image(s: &DescribedSpace, a: &PointSet) -> BTreeSet<Vec<i64>> {
    a.iter().map(|i| s.description(i).values().to_vec()).collect()
}

fn coord(img: &BTreeSet<Vec<i64>>, i: usize) -> BTreeSet<i64> {
    img.iter().map(|v| v[i]).collect()
}

fn oracle_peters(s: &DescribedSpace, a: &PointSet, b: &PointSet) -> bool {
    !image(s, a).is_disjoint(&image(s, b))
}

fn oracle_beta(s: &DescribedSpace, a: &PointSet, b: &PointSet) -> bool {
    let (ia, ib) = (image(s, a), image(s, b));
    !ia.is_empty() && !ib.is_empty() && (0..s.arity()).all(|i| !coord(&ia, i).is_disjoint(&coord(&ib, i)))
}

fn oracle_gamma(s: &DescribedSpace, a: &PointSet, b: &PointSet) -> bool {
    let (ia, ib) = (image(s, a), image(s, b));
    (0..s.arity()).any(|i| !coord(&ia, i).is_disjoint(&coord(&ib, i)))
}

fn oracle_eta(s: &DescribedSpace, a: &PointSet, b: &PointSet, m: usize) -> bool {
    let pa: BTreeSet<Vec<i64>> = image(s, a).into_iter().map(|v| v[..m].to_vec()).collect();
    let pb: BTreeSet<Vec<i64>> = image(s, b).into_iter().map(|v| v[..m].to_vec()).collect();
    !pa.is_disjoint(&pb)
}

fn oracle_gap2(s: &DescribedSpace, a: &PointSet, b: &PointSet) -> Option<i64> {
    let mut best = None;
    for x in a.iter() {
        for y in b.iter() {
            let d: i64 = s
                .description(x)
                .values()
                .iter()
                .zip(s.description(y).values())
                .map(|(p, q)| (p - q) * (p - q))
                .sum();
            best = Some(best.map_or(d, |b: i64| b.min(d)));
        }
    }
    best
}

fn rel(name: &str) -> RelationSpec {
    RelationSpec::parse(name).unwrap()
}

fn arb_space(max_size: usize, max_arity: usize) -> impl Strategy<Value = DescribedSpace> {
    (1..=max_size, 1..=max_arity).prop_flat_map(|(n, k)| {
        proptest::collection::vec(proptest::collection::vec(0i64..4, k), n).prop_map(|rows| {
            build_space(
                rows.into_iter()
                    .enumerate()
                    .map(|(i, v)| (format!("p{i}"), FeatureVector::new(v))),
            )
            .unwrap()
        })
    })
}

fn arb_space_and_pair(max_size: usize, max_arity: usize) -> impl Strategy<Value = (DescribedSpace, PointSet, PointSet)> {
    arb_space(max_size, max_arity).prop_flat_map(|s| {
        let n = s.len();
        (Just(s), 0..1u64 << n, 0..1u64 << n)
            .prop_map(move |(s, a, b)| (s, PointSet::from_mask(n, a), PointSet::from_mask(n, b)))
    })
}

proptest! {
    #[test]
    fn relations_match_oracles((s, a, b) in arb_space_and_pair(8, 3)) {
        prop_assert_eq!(rel("discrete").near(&s, &a, &b).unwrap(), a.meets(&b));
        prop_assert_eq!(rel("peters").near(&s, &a, &b).unwrap(), oracle_peters(&s, &a, &b));
        prop_assert_eq!(rel("beta").near(&s, &a, &b).unwrap(), oracle_beta(&s, &a, &b));
        prop_assert_eq!(rel("gamma").near(&s, &a, &b).unwrap(), oracle_gamma(&s, &a, &b));
        for m in 1..=s.arity() {
            prop_assert_eq!(rel(&format!("eta:{m}")).near(&s, &a, &b).unwrap(), oracle_eta(&s, &a, &b, m));
        }
        let g = oracle_gap2(&s, &a, &b);
        prop_assert_eq!(gap(&s, &a, &b).unwrap().squared(), g.map(|g| g as u128));
        for eps in 0..4i64 {
            let near = g.is_some_and(|g| g <= eps * eps);
            prop_assert_eq!(rel(&format!("metric:{eps}")).near(&s, &a, &b).unwrap(), near);
            let overlap = g.is_some_and(|g| g <= 4 * eps * eps);
            prop_assert_eq!(rel(&format!("enlarge:{eps}")).near(&s, &a, &b).unwrap(), overlap);
        }
        prop_assert_eq!(rel("fine-lodato").near(&s, &a, &b).unwrap(), oracle_peters(&s, &a, &b));
    }

    #[test]
    fn implication_chain((s, a, b) in arb_space_and_pair(8, 3)) {
        let p = rel("peters").near(&s, &a, &b).unwrap();
        let be = rel("beta").near(&s, &a, &b).unwrap();
        let ga = rel("gamma").near(&s, &a, &b).unwrap();
        prop_assert!(!p || be);
        prop_assert!(!be || ga);
        prop_assert!(!a.meets(&b) || p);
        for m in 1..=s.arity() {
            let eta = rel(&format!("eta:{m}")).near(&s, &a, &b).unwrap();
            prop_assert!(!p || eta);
        }
        prop_assert_eq!(rel(&format!("eta:{}", s.arity())).near(&s, &a, &b).unwrap(), p);
        if s.arity() == 1 {
            prop_assert_eq!(be, p);
        }
        if s.arity() <= 3 {
            prop_assert!(!p || rel("hull").near(&s, &a, &b).unwrap());
        }
        for eps in ["0", "1/2", "1", "5/2"] {
            let overlap = rel(&format!("enlarge:{eps}")).near(&s, &a, &b).unwrap();
            prop_assert!(!p || overlap);
        }
        let full = RelationSpec::strong("X", s.full_image());
        prop_assert_eq!(full.near(&s, &a, &b).unwrap(), p);
    }

    #[test]
    fn gap_symmetric_and_metric_monotone((s, a, b) in arb_space_and_pair(8, 3)) {
        prop_assert_eq!(gap(&s, &a, &b).unwrap(), gap(&s, &b, &a).unwrap());
        let g = gap(&s, &a, &b).unwrap();
        prop_assert_eq!(g.is_zero(), oracle_peters(&s, &a, &b));
        let mut prev = false;
        for eps in ["0", "1/3", "1", "3/2", "2", "7"] {
            let now = rel(&format!("metric:{eps}")).near(&s, &a, &b).unwrap();
            prop_assert!(!prev || now);
            prev = now;
        }
    }

    #[test]
    fn descriptive_intersection_bounds((s, a, b) in arb_space_and_pair(8, 3)) {
        let d = descriptive_intersection(&s, &a, &b).unwrap();
        prop_assert!(a.intersection(&b).is_subset(&d));
        prop_assert!(d.is_subset(&a.union(&b)));
        prop_assert_eq!(!d.is_empty(), oracle_peters(&s, &a, &b));
        let (ia, ib) = (image(&s, &a), image(&s, &b));
        let expected: Vec<usize> = a.union(&b).iter().filter(|&x| {
            let v = s.description(x).values().to_vec();
            ia.contains(&v) && ib.contains(&v)
        }).collect();
        prop_assert_eq!(d.iter().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn saturation_is_a_closure((s, a, b) in arb_space_and_pair(8, 3)) {
        let sa = saturation(&s, &a).unwrap();
        prop_assert!(a.is_subset(&sa));
        prop_assert_eq!(saturation(&s, &sa).unwrap(), sa.clone());
        if a.is_subset(&b) {
            prop_assert!(sa.is_subset(&saturation(&s, &b).unwrap()));
        }
        // meeting a common class is the same as sharing a description
        let classes = dprox::phi_classes(&s);
        let common = classes.classes().iter().any(|c| c.meets(&a) && c.meets(&b));
        prop_assert_eq!(common, oracle_peters(&s, &a, &b));
    }

    #[test]
    fn peters_strong_inclusion((s, a, b) in arb_space_and_pair(6, 3)) {
        let incl = strong_inclusion(&RelationSpec::Peters, &s, &a, &b).unwrap();
        prop_assert_eq!(incl, image(&s, &a).is_disjoint(&image(&s, &b.complement())));
        if incl {
            // the saturation of A interpolates
            let c = saturation(&s, &a).unwrap();
            prop_assert!(strong_inclusion(&RelationSpec::Peters, &s, &a, &c).unwrap());
            prop_assert!(strong_inclusion(&RelationSpec::Peters, &s, &c, &b).unwrap());
        }
    }

    #[test]
    fn strong_is_peters_restricted_to_s((s, a, b) in arb_space_and_pair(7, 2), pick in any::<u64>()) {
        let classes: Vec<FeatureVector> = s.full_image().iter().cloned().collect();
        let sig: FeatureSet = classes.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, v)| v.clone()).collect();
        let r = RelationSpec::strong("S", sig.clone());
        let near = r.near(&s, &a, &b).unwrap();
        let expected = image(&s, &a).intersection(&image(&s, &b)).any(|v| sig.contains(&FeatureVector::new(v.clone())));
        prop_assert_eq!(near, expected);
        prop_assert!(!near || oracle_peters(&s, &a, &b));
        if near {
            let w = shared_description(&r, &s, &a, &b).unwrap().unwrap();
            prop_assert!(sig.contains(&w));
        }
    }

    #[test]
    fn planar_hull_matches_orientation_oracle(
        tri in proptest::collection::vec((-4i64..5, -4i64..5), 3),
        p in (-4i64..5, -4i64..5),
    ) {
        let fv = |(x, y): (i64, i64)| FeatureVector::new(vec![x, y]);
        let triangle: FeatureSet = tri.iter().copied().map(fv).collect();
        let point: FeatureSet = [fv(p)].into_iter().collect();
        prop_assert_eq!(hull_intersects(&triangle, &point).unwrap(), in_hull_oracle(&tri, p));
    }

    #[test]
    fn line_hull_matches_interval_oracle(
        a in proptest::collection::btree_set(-5i64..6, 1..4),
        b in proptest::collection::btree_set(-5i64..6, 1..4),
    ) {
        let set = |v: &BTreeSet<i64>| -> FeatureSet { v.iter().map(|&x| FeatureVector::new(vec![x])).collect() };
        let (lo_a, hi_a) = (*a.first().unwrap(), *a.last().unwrap());
        let (lo_b, hi_b) = (*b.first().unwrap(), *b.last().unwrap());
        let overlap = lo_a <= hi_b && lo_b <= hi_a;
        prop_assert_eq!(hull_intersects(&set(&a), &set(&b)).unwrap(), overlap);
    }
}

/// Point in the hull of three integer points, by orientation signs and, for
/// degenerate triangles, by segment containment.
fn in_hull_oracle(tri: &[(i64, i64)], p: (i64, i64)) -> bool {
    let orient = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    let on_segment = |a: (i64, i64), b: (i64, i64)| {
        orient(a, b, p) == 0
            && p.0 >= a.0.min(b.0)
            && p.0 <= a.0.max(b.0)
            && p.1 >= a.1.min(b.1)
            && p.1 <= a.1.max(b.1)
    };
    let (a, b, c) = (tri[0], tri[1], tri[2]);
    if orient(a, b, c) == 0 {
        return on_segment(a, b) || on_segment(b, c) || on_segment(a, c);
    }
    let (d1, d2, d3) = (orient(a, b, p), orient(b, c, p), orient(c, a, p));
    let neg = d1 < 0 || d2 < 0 || d3 < 0;
    let pos = d1 > 0 || d2 > 0 || d3 > 0;
    !(neg && pos)
}

#[test]
fn examples_from_the_catalogue() {
    let s = build_space([
        ("a", FeatureVector::from([1, 2])),
        ("b", FeatureVector::from([1, 5])),
        ("c", FeatureVector::from([3, 2])),
    ])
    .unwrap();
    let a = s.point_set(&["a"]).unwrap();
    let bc = s.point_set(&["b", "c"]).unwrap();
    assert!(rel("beta").near(&s, &a, &bc).unwrap());
    assert!(!rel("peters").near(&s, &a, &bc).unwrap());

    let tri = build_space([
        ("p", FeatureVector::from([0, 0])),
        ("q", FeatureVector::from([2, 0])),
        ("r", FeatureVector::from([0, 2])),
        ("m", FeatureVector::from([1, 1])),
    ])
    .unwrap();
    let pqr = tri.point_set(&["p", "q", "r"]).unwrap();
    let m = tri.point_set(&["m"]).unwrap();
    assert!(rel("hull").near(&tri, &pqr, &m).unwrap());
    assert!(!rel("hull").near(&tri, &tri.point_set(&["p", "q"]).unwrap(), &m).unwrap());
}

#[test]
fn injective_probe_makes_peters_discrete() {
    for seed in 0..20 {
        let s = seeded_space(seed, 5, 3, 50);
        if !s.is_injective() {
            continue;
        }
        for a in common::all_subsets(&s) {
            for b in common::all_subsets(&s) {
                assert_eq!(rel("peters").near(&s, &a, &b).unwrap(), a.meets(&b));
            }
        }
    }
}

#[test]
fn zero_radius_metric_and_ball_collapse_to_peters() {
    for s in space_family(7, 200, 6, 3, 4) {
        let subsets = common::all_subsets(&s);
        for a in &subsets {
            for b in &subsets {
                let p = rel("peters").near(&s, a, b).unwrap();
                assert_eq!(rel("metric:0").near(&s, a, b).unwrap(), p);
                assert_eq!(rel("enlarge:0").near(&s, a, b).unwrap(), p);
            }
        }
    }
}

#[test]
fn ball_overlap_on_a_line() {
    let p: FeatureSet = [FeatureVector::from([0])].into_iter().collect();
    let q: FeatureSet = [FeatureVector::from([3])].into_iter().collect();
    assert_eq!(feature_gap(&p, &q).squared(), Some(9));
    let ball = |e: u64| BallEnlargement::new(Epsilon::from_integer(e));
    assert!(ball(2).overlaps(&p, &q));
    assert!(!ball(1).overlaps(&p, &q));
    let half: Arc<dyn Enlargement> = Arc::new(BallEnlargement::new("3/2".parse().unwrap()));
    assert!(half.overlaps(&p, &q));
}
