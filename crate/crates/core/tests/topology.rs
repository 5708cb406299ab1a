mod common;

use dprox::axioms::{CheckBudget, Status};
use dprox::random::{seeded_space, space_family};
use dprox::synth::TwoOvals;
use dprox::topology::{closure, is_closed, is_open, separation_checks, verify_closed_iff_saturated, ClosureOperator};
use dprox::{ingest, saturation, PointSet, RelationSpec};
use proptest::prelude::*;

proptest! {
    #[test]
    fn peters_closure_is_saturation(seed in 0u64..10_000, size in 1usize..12, mask in any::<u64>()) {
        let s = seeded_space(seed, size, 2, 3);
        let a = PointSet::from_mask(size, mask & ((1 << size) - 1));
        let cl = closure(&RelationSpec::Peters, &s, &a).unwrap();
        prop_assert_eq!(&cl, &saturation(&s, &a).unwrap());
        // naive oracle: x is in the closure iff some point of A shares its description
        for x in 0..size {
            let expected = a.iter().any(|y| s.description(y) == s.description(x));
            prop_assert_eq!(cl.contains(x), expected);
        }
    }

    #[test]
    fn closure_axioms_hold_for_peters(seed in 0u64..10_000, size in 1usize..10, m1 in any::<u64>(), m2 in any::<u64>()) {
        let s = seeded_space(seed, size, 1, 4);
        let full = (1u64 << size) - 1;
        let (a, b) = (PointSet::from_mask(size, m1 & full), PointSet::from_mask(size, m2 & full));
        let rel = RelationSpec::Peters;
        let op = ClosureOperator::new(&rel, &s).unwrap();
        let ca = op.apply(&a).unwrap();
        prop_assert!(a.is_subset(&ca));
        prop_assert_eq!(&op.apply(&ca).unwrap(), &ca);
        prop_assert_eq!(op.apply(&a.union(&b)).unwrap(), ca.union(&op.apply(&b).unwrap()));
        // every closed set is also open in this topology
        prop_assert!(op.is_open(&ca).unwrap());
    }
}

#[test]
fn closure_of_other_relations() {
    let (s, sets) = common::load("pairs");
    let a = &sets["A"];
    let discrete = RelationSpec::Discrete;
    assert_eq!(closure(&discrete, &s, a).unwrap(), *a);
    assert!(is_closed(&discrete, &s, a).unwrap() && is_open(&discrete, &s, a).unwrap());
    // A = {a, b} with descriptions (1,2), (1,3); gamma adds every point with first coordinate 1 or second 2 or 3
    let gamma = closure(&RelationSpec::parse("gamma").unwrap(), &s, a).unwrap();
    assert_eq!(s.ids_of(&gamma), ["a", "b", "e"]);
    let op = ClosureOperator::new(&discrete, &s).unwrap();
    assert_eq!(op.relation(), "discrete");
}

#[test]
fn closed_iff_saturated_exhaustive() {
    for s in space_family(31, 40, 8, 3, 3) {
        let report = verify_closed_iff_saturated(&s, &CheckBudget::exhaustive()).unwrap();
        assert_eq!(report.suite, "topology");
        let main = report.entry("closed-iff-saturated").unwrap();
        assert!(main.passed() && main.exhaustive);
        assert_eq!(main.pairs_checked, 1 << s.len());
        assert!(report.entry("classes-clopen").unwrap().passed());
        assert!(report.entry("open-intersections").unwrap().passed());
        let disconnected = report.entry("disconnected").unwrap();
        if s.class_count() > 1 {
            assert!(disconnected.passed());
        } else {
            assert_eq!(disconnected.status, Status::Skipped);
        }
    }
}

#[test]
fn colour_scene_is_disconnected_by_the_red_class() {
    let (s, _) = common::load("colours");
    let report = verify_closed_iff_saturated(&s, &CheckBudget::exhaustive().with_subset_cap(9)).unwrap();
    assert!(report.all_pass(), "{}", report.to_canonical_json());
    let note = report.entry("disconnected").unwrap().note.clone().unwrap();
    assert!(note.contains("{a,d,i}"), "{note}");
}

#[test]
fn structured_reduction_on_an_image() {
    let img = ingest::decode_pnm(&TwoOvals::default().pgm()).unwrap();
    let s = ingest::image_space(&img, &ingest::ProbeSpec::grey(8)).unwrap();
    assert!(s.len() > 1000 && s.class_count() <= 16);
    let report = verify_closed_iff_saturated(&s, &CheckBudget::exhaustive()).unwrap();
    assert!(report.all_pass(), "{}", report.to_canonical_json());
    let main = report.entry("closed-iff-saturated").unwrap();
    assert!(main.exhaustive);
    assert_eq!(main.pairs_checked, 1 << s.class_count());

    let sampled = verify_closed_iff_saturated(&s, &CheckBudget::sampled(40, 2)).unwrap();
    assert!(sampled.all_pass());
}

#[test]
fn separation_axioms() {
    for s in space_family(41, 30, 6, 2, 3) {
        let peters = separation_checks(&RelationSpec::Peters, &s).unwrap();
        assert!(peters.entry("R0").unwrap().passed());
        assert_eq!(peters.entry("T0").unwrap().passed(), s.is_injective());
        assert!(peters.entry("T0-iff-injective").unwrap().passed());

        let discrete = separation_checks(&RelationSpec::Discrete, &s).unwrap();
        assert!(discrete.all_pass());
        assert!(discrete.entry("T0-iff-injective").is_none());
    }
}
