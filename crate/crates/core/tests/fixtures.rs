mod common;

use common::{ids, load};
use dprox::axioms::{check_cech, check_kuratowski, check_lodato, replay_witness, CheckBudget};
use dprox::relations::{gamma_near, strong_near, RelationSpec};
use dprox::{descriptive_intersection, phi_classes, phi_image, saturation, FeatureVector};

#[test]
fn colours_descriptive_intersection() {
    let (s, sets) = load("colours");
    let (a, b) = (&sets["A"], &sets["B"]);
    assert_eq!(ids(&s, &a.intersection(b)), ["c", "d"]);
    assert_eq!(ids(&s, &descriptive_intersection(&s, a, b).unwrap()), ["a", "c", "d", "f"]);
    let shared = phi_image(&s, a).unwrap().intersection(&phi_image(&s, b).unwrap());
    let black = FeatureVector::from([0, 0, 0]);
    let red = FeatureVector::from([255, 0, 0]);
    assert_eq!(shared.iter().collect::<Vec<_>>(), [&black, &red]);
    assert_eq!(ids(&s, &s.preimage(&shared)), ["a", "c", "d", "f", "i"]);
    assert_eq!(phi_image(&s, a).unwrap().len(), 3);
}

#[test]
fn colours_partition_and_saturation() {
    let (s, sets) = load("colours");
    let classes = phi_classes(&s);
    assert_eq!(ids(&s, classes.class_containing(0).unwrap()), ["a", "d", "i"]);
    assert_eq!(classes.len(), 6);
    let sat = saturation(&s, &sets["A"]).unwrap();
    assert_eq!(ids(&s, &sat), ["a", "b", "c", "d", "f", "i"]);
}

#[test]
fn colours_strong_with_single_colours() {
    let (s, sets) = load("colours");
    let (a, b) = (&sets["A"], &sets["B"]);
    let red = phi_image(&s, &sets["red"]).unwrap();
    let green = phi_image(&s, &sets["green"]).unwrap();
    assert!(strong_near(&s, a, b, &red).unwrap());
    assert!(!strong_near(&s, a, b, &green).unwrap());
}

#[test]
fn pairs_gamma_is_not_lodato() {
    let (s, sets) = load("pairs");
    let (a, b, c) = (&sets["A"], &sets["B"], &sets["C"]);
    assert!(gamma_near(&s, a, b).unwrap());
    assert!(!gamma_near(&s, a, c).unwrap());
    for x in b.iter() {
        assert!(gamma_near(&s, &s.singleton(x), c).unwrap(), "{}", s.id(x));
    }

    let rel = RelationSpec::Gamma;
    let report = check_lodato(&rel, &s, &CheckBudget::exhaustive()).unwrap();
    let d4 = report.entry("D4").unwrap();
    assert!(d4.failed());
    assert!(replay_witness(&rel, &s, "D4", d4.witness.as_ref().unwrap()).unwrap());

    // the triple from the scene itself also violates the transfer axiom
    let scene = dprox::axioms::Witness {
        a: ids(&s, a),
        b: ids(&s, b),
        c: Some(ids(&s, c)),
        detail: String::new(),
    };
    assert!(replay_witness(&rel, &s, "D4", &scene).unwrap());

    let k = check_kuratowski(&rel, &s, &CheckBudget::exhaustive()).unwrap();
    assert!(k.entry("K3").unwrap().failed() || k.entry("K4").unwrap().failed());
}

#[test]
fn hull_union_axiom_holds_one_way() {
    let (s, sets) = load("hull1d");
    let report = check_cech(&RelationSpec::Hull, &s, &CheckBudget::exhaustive()).unwrap();
    assert!(report.entry("D3.backward").unwrap().passed());
    let forward = report.entry("D3.forward").unwrap();
    assert!(forward.failed());
    let w = forward.witness.as_ref().unwrap();
    assert_eq!(w.a, ids(&s, &sets["A"]));
    assert_eq!(w.b, ids(&s, &sets["B"]));
    assert_eq!(w.c.as_deref().unwrap(), ids(&s, &sets["C"]));
    for axiom in ["D0", "D1", "D2"] {
        assert!(report.entry(axiom).unwrap().passed(), "{axiom}");
    }
}
