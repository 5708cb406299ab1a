mod common;

use std::sync::Arc;

use dprox::axioms::{
    check_cech, check_ef, check_ef_betweenness, check_enlargement, check_kuratowski, check_lodato,
    check_separated, check_strong, classify_vs_peters, replay_witness, AxiomReport, CheckBudget,
    Status, Verdict,
};
use dprox::random::{seeded_space, space_family};
use dprox::relations::{builtin_enlargement, Enlargement, HullEnlargement, IdentityEnlargement, RelationSpec};
use dprox::{build_space, DescribedSpace, Error, FeatureSet, FeatureVector};

const RELATIONS: &[&str] = &[
    "discrete", "peters", "beta", "gamma", "eta:1", "metric:1", "fine-lodato", "enlarge:1",
    "enlarge:hull", "hull",
];

fn rel(name: &str) -> RelationSpec {
    RelationSpec::parse(name).unwrap()
}

fn every_suite(r: &RelationSpec, s: &DescribedSpace, budget: &CheckBudget) -> Vec<AxiomReport> {
    vec![
        check_lodato(r, s, budget).unwrap(),
        check_strong(r, s, budget).unwrap(),
        check_kuratowski(r, s, budget).unwrap(),
        check_ef(r, s, budget).unwrap(),
        check_ef_betweenness(r, s, budget).unwrap(),
        check_separated(r, s).unwrap(),
    ]
}

fn assert_witnesses_replay(r: &RelationSpec, s: &DescribedSpace, reports: &[AxiomReport]) -> usize {
    let mut seen = 0;
    for report in reports {
        for e in report.failures() {
            let w = e.witness.as_ref().expect("failures carry witnesses");
            assert!(
                replay_witness(r, s, &e.axiom, w).unwrap(),
                "{} {} witness does not replay: {w:?}",
                r.name(),
                e.axiom
            );
            seen += 1;
        }
    }
    seen
}

#[test]
fn every_exhaustive_witness_replays() {
    let mut seen = 0;
    for s in space_family(11, 25, 5, 2, 4) {
        let mut names: Vec<RelationSpec> = RELATIONS.iter().map(|n| rel(n)).collect();
        let sig: FeatureSet = s.full_image().iter().take(1).cloned().collect();
        names.push(RelationSpec::strong("S", sig));
        for r in &names {
            let reports = every_suite(r, &s, &CheckBudget::exhaustive());
            seen += assert_witnesses_replay(r, &s, &reports);
        }
    }
    assert!(seen > 50, "only {seen} witnesses exercised");
}

#[test]
fn every_sampled_witness_replays() {
    let mut seen = 0;
    for seed in 0..6 {
        let s = seeded_space(seed, 9, 2, 4);
        for name in RELATIONS {
            let r = rel(name);
            let reports = every_suite(&r, &s, &CheckBudget::sampled(300, seed));
            seen += assert_witnesses_replay(&r, &s, &reports);
        }
    }
    assert!(seen > 20, "only {seen} witnesses exercised");
}

#[test]
fn exhaustive_counts_match_subset_lattice() {
    let s = seeded_space(3, 5, 2, 3);
    let report = check_lodato(&rel("peters"), &s, &CheckBudget::exhaustive()).unwrap();
    assert!(report.all_pass());
    let pairs = 1u64 << (2 * 5);
    let triples = 1u64 << (3 * 5);
    for (axiom, expected) in [
        ("D0", pairs),
        ("D1", pairs),
        ("D2", pairs),
        ("D3.forward", triples),
        ("D3.backward", triples),
        ("D4", triples),
    ] {
        let e = report.entry(axiom).unwrap();
        assert!(e.exhaustive);
        assert_eq!(e.pairs_checked, expected, "{axiom}");
    }
    let k = check_kuratowski(&rel("peters"), &s, &CheckBudget::exhaustive()).unwrap();
    assert_eq!(k.entry("K2").unwrap().pairs_checked, 32);
    assert_eq!(k.entry("K3").unwrap().pairs_checked, pairs);
}

#[test]
fn failing_count_stops_at_witness() {
    let s = build_space([("p", FeatureVector::from([0])), ("q", FeatureVector::from([2])), ("r", FeatureVector::from([1]))]).unwrap();
    let report = check_cech(&rel("hull"), &s, &CheckBudget::exhaustive()).unwrap();
    let e = report.entry("D3.forward").unwrap();
    // A = {r} (mask 4), B = {p} (mask 1), C = {q} (mask 2)
    assert_eq!(e.pairs_checked, (4 * 8 + 1) * 8 + 2 + 1);
}

#[test]
fn sampled_reports_are_reproducible() {
    let s = seeded_space(5, 14, 3, 3);
    let run = |seed| {
        every_suite(&rel("gamma"), &s, &CheckBudget::sampled(200, seed))
            .iter()
            .map(AxiomReport::to_canonical_json)
            .collect::<Vec<_>>()
    };
    assert_eq!(run(9), run(9));
}

#[test]
fn exhaustive_mode_respects_the_cap() {
    let s = seeded_space(1, 9, 1, 3);
    let err = check_cech(&rel("peters"), &s, &CheckBudget::exhaustive()).unwrap_err();
    assert!(matches!(err, Error::BudgetExceeded { size: 9, cap: 8 }));
    assert!(check_cech(&rel("peters"), &s, &CheckBudget::exhaustive().with_subset_cap(9)).is_ok());
    assert!(matches!(
        check_cech(&rel("peters"), &s, &CheckBudget::exhaustive().with_subset_cap(13)),
        Err(Error::InvalidBudget(_))
    ));
    assert!(matches!(
        check_cech(&rel("peters"), &s, &CheckBudget::sampled(0, 1)),
        Err(Error::InvalidBudget(_))
    ));
}

#[test]
fn kuratowski_iff_lodato_for_cech_relations() {
    let mut compared = 0;
    for s in space_family(21, 40, 5, 2, 4) {
        for name in RELATIONS {
            let r = rel(name);
            let b = CheckBudget::exhaustive();
            let cech = check_cech(&r, &s, &b).unwrap();
            if !cech.all_pass() {
                continue;
            }
            let lodato = check_lodato(&r, &s, &b).unwrap().all_pass();
            let kuratowski = check_kuratowski(&r, &s, &b).unwrap().all_pass();
            assert_eq!(lodato, kuratowski, "{name} on {}", s.canonical_json());
            compared += 1;
        }
    }
    assert!(compared > 200);
}

#[test]
fn separatedness() {
    let injective = build_space([("a", FeatureVector::from([1])), ("b", FeatureVector::from([2]))]).unwrap();
    let constant = build_space([("a", FeatureVector::from([7])), ("b", FeatureVector::from([7]))]).unwrap();
    assert!(check_separated(&rel("peters"), &injective).unwrap().all_pass());
    let report = check_separated(&rel("peters"), &constant).unwrap();
    let p5 = report.entry("P5").unwrap();
    assert!(p5.failed());
    assert_eq!(p5.witness.as_ref().unwrap().a, ["a"]);
    assert_eq!(p5.witness.as_ref().unwrap().b, ["b"]);
    assert!(check_separated(&rel("discrete"), &constant).unwrap().all_pass());
}

#[test]
fn ef_and_betweenness_for_peters() {
    for s in space_family(4, 15, 6, 3, 4) {
        let ef = check_ef(&rel("peters"), &s, &CheckBudget::exhaustive()).unwrap();
        let e = ef.entry("EF").unwrap();
        assert!(e.passed());
        // the complement of the closure of A always separates, so no full search is needed
        assert!(e.note.as_ref().unwrap().contains("search: 0"), "{:?}", e.note);
        let ef2 = check_ef_betweenness(&rel("peters"), &s, &CheckBudget::exhaustive()).unwrap();
        let e = ef2.entry("EF2").unwrap();
        assert!(e.passed());
        assert!(e.note.as_ref().unwrap().starts_with("interpolant found by cl(A)"));
        assert!(e.note.as_ref().unwrap().contains("A: 0, B: 0, search: 0"), "{:?}", e.note);
    }
    let one = seeded_space(0, 1, 2, 4);
    for name in RELATIONS {
        assert!(check_ef(&rel(name), &one, &CheckBudget::exhaustive()).unwrap().all_pass(), "{name}");
    }
}

#[test]
fn discrete_betweenness_interpolates_with_a() {
    let s = seeded_space(2, 5, 1, 4);
    let report = check_ef_betweenness(&rel("discrete"), &s, &CheckBudget::exhaustive()).unwrap();
    let note = report.entry("EF2").unwrap().note.clone().unwrap();
    // cl(A) = A for the discrete relation, so the first candidate is A itself
    assert!(note.contains("B: 0, search: 0"), "{note}");
}

#[test]
fn strong_suite() {
    for s in space_family(8, 10, 6, 2, 3) {
        let image: Vec<FeatureVector> = s.full_image().iter().cloned().collect();
        for take in 0..=image.len() {
            let sig: FeatureSet = image.iter().take(take).cloned().collect();
            let r = RelationSpec::strong("S", sig);
            let report = check_strong(&r, &s, &CheckBudget::exhaustive()).unwrap();
            assert!(report.all_pass(), "{}", report.to_canonical_json());
        }
        assert!(check_strong(&rel("peters"), &s, &CheckBudget::exhaustive()).unwrap().all_pass());
    }
    let line = build_space([("p", FeatureVector::from([0])), ("q", FeatureVector::from([2])), ("r", FeatureVector::from([1]))]).unwrap();
    let hull = check_strong(&rel("hull"), &line, &CheckBudget::exhaustive()).unwrap();
    assert!(hull.entry("S2").unwrap().failed());
}

#[test]
fn kuratowski_extensivity_is_conditional() {
    let s = seeded_space(6, 4, 1, 3);
    let r = RelationSpec::strong("none", FeatureSet::new());
    let report = check_kuratowski(&r, &s, &CheckBudget::exhaustive()).unwrap();
    let k2 = report.entry("K2").unwrap();
    assert_eq!(k2.status, Status::Skipped);
    assert!(k2.note.as_ref().unwrap().starts_with("conditional"));
    assert!(report.entry("K1").unwrap().passed());
}

#[test]
fn classification() {
    for s in space_family(13, 20, 6, 3, 4) {
        let c = classify_vs_peters(&rel("fine-lodato"), &s, &CheckBudget::exhaustive()).unwrap();
        assert_eq!(c.verdict, Verdict::Equivalent);
    }
    let s = build_space([
        ("a", FeatureVector::from([1, 2])),
        ("b", FeatureVector::from([1, 5])),
        ("c", FeatureVector::from([3, 2])),
    ])
    .unwrap();
    let beta = classify_vs_peters(&rel("beta"), &s, &CheckBudget::exhaustive()).unwrap();
    assert_eq!(beta.verdict, Verdict::Weaker);
    let w = beta.near_not_peters.unwrap();
    let (a, b) = (s.point_set(&w.a).unwrap(), s.point_set(&w.b).unwrap());
    assert!(rel("beta").near(&s, &a, &b).unwrap() && !rel("peters").near(&s, &a, &b).unwrap());

    let first: FeatureSet = s.full_image().iter().take(1).cloned().collect();
    let strong = classify_vs_peters(&RelationSpec::strong("S", first), &s, &CheckBudget::exhaustive()).unwrap();
    assert_eq!(strong.verdict, Verdict::Stronger);
    assert!(strong.peters_not_near.is_some());
}

#[test]
fn enlargement_laws() {
    let line = build_space([("p", FeatureVector::from([0])), ("q", FeatureVector::from([2]))]).unwrap();
    let hull: Arc<dyn Enlargement> = Arc::new(HullEnlargement);
    let report = check_enlargement(hull.clone(), &line, &CheckBudget::exhaustive()).unwrap();
    let add = report.entry("additivity").unwrap();
    assert!(add.failed());
    let w = add.witness.as_ref().unwrap();
    assert!(w.detail.contains("at (1)"), "{}", w.detail);
    assert!(replay_witness(&RelationSpec::enlarge(hull), &line, "additivity", w).unwrap());
    assert!(report.entry("extensionality").unwrap().passed());

    for s in space_family(17, 10, 6, 2, 4) {
        for op in ["0", "1", "3", "1/2", "identity"] {
            let op = builtin_enlargement(op).unwrap();
            let r = check_enlargement(op, &s, &CheckBudget::exhaustive()).unwrap();
            assert!(r.all_pass(), "{}", r.to_canonical_json());
        }
    }
    let id: Arc<dyn Enlargement> = Arc::new(IdentityEnlargement);
    let sampled = check_enlargement(id, &seeded_space(1, 20, 2, 5), &CheckBudget::sampled(50, 3)).unwrap();
    assert!(sampled.all_pass());
}

#[derive(Debug)]
struct Opaque;

impl Enlargement for Opaque {
    fn name(&self) -> String {
        "opaque".into()
    }
    fn overlaps(&self, p: &FeatureSet, q: &FeatureSet) -> bool {
        p.meets(q)
    }
    fn contains(&self, _: &FeatureSet, _: &[num_rational::BigRational]) -> Option<bool> {
        None
    }
}

#[test]
fn operators_without_exact_tests_are_skipped() {
    let s = seeded_space(1, 3, 1, 3);
    let report = check_enlargement(Arc::new(Opaque), &s, &CheckBudget::exhaustive()).unwrap();
    assert!(report.entries.iter().all(|e| e.status == Status::Skipped));
}

#[test]
fn reports_are_canonical_json() {
    let s = seeded_space(3, 4, 2, 3);
    let report = check_cech(&rel("gamma"), &s, &CheckBudget::exhaustive()).unwrap();
    let json = report.to_canonical_json();
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["version"], "axiom-report/1");
    let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let back: AxiomReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
}
