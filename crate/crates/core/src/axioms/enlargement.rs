//! Additivity and extensionality of enlargement operators.
//!
//! Regions are compared on the finite probe set the operator supplies, so a
//! verdict is exact for operators whose regions are determined by it (balls,
//! identity, hulls of the sampled descriptions).

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use super::report::{AxiomEntry, AxiomReport, CheckBudget, Mode, Status, Witness};
use super::scan::rng_for;
use crate::error::{Error, Result};
use crate::exact::{format_point, RationalPoint};
use crate::relations::{Enlargement, RelationSpec};
use crate::space::{DescribedSpace, FeatureSet};

const ADDITIVITY: &str = "e(P ∪ Q) = e(P) ∪ e(Q)";
const EXTENSIONALITY: &str = "P ⊆ Q ⇒ e(P) ⊆ e(Q)";

struct Regions<'a> {
    op: &'a dyn Enlargement,
    space: &'a DescribedSpace,
    probes: Vec<RationalPoint>,
}

impl Regions<'_> {
    fn features(&self, classes: &[usize]) -> FeatureSet {
        classes
            .iter()
            .map(|&k| self.space.class_description(k).clone())
            .collect()
    }

    /// Membership of every probe point in `e(P)`; `e(∅) = ∅`.
    fn region(&self, classes: &[usize]) -> Option<Vec<bool>> {
        if classes.is_empty() {
            return Some(vec![false; self.probes.len()]);
        }
        let p = self.features(classes);
        self.probes.iter().map(|w| self.op.contains(&p, w)).collect()
    }

    fn representatives(&self, classes: &[usize]) -> Vec<String> {
        classes
            .iter()
            .map(|&k| self.space.id(self.space.class_members(k)[0]).to_string())
            .collect()
    }

    fn witness(&self, p: &[usize], q: &[usize], at: usize, detail: &str) -> Witness {
        Witness {
            a: self.representatives(p),
            b: self.representatives(q),
            c: None,
            detail: format!(
                "P = {}, Q = {}: {detail} at {}",
                self.features(p),
                self.features(q),
                format_point(&self.probes[at])
            ),
        }
    }
}

fn members(mask: usize, k: usize) -> Vec<usize> {
    (0..k).filter(|&c| mask >> c & 1 == 1).collect()
}

fn additivity_gap(pq: &[bool], p: &[bool], q: &[bool]) -> Option<usize> {
    (0..pq.len()).find(|&w| pq[w] != (p[w] || q[w]))
}

fn extensionality_gap(p: &[bool], q: &[bool]) -> Option<usize> {
    (0..p.len()).find(|&w| p[w] && !q[w])
}

/// Checks an enlargement operator on subsets of the descriptions present in `space`.
pub fn check_enlargement(
    op: Arc<dyn Enlargement>,
    space: &DescribedSpace,
    budget: &CheckBudget,
) -> Result<AxiomReport> {
    budget.validate()?;
    op.validate(space.arity())?;
    let relation = RelationSpec::Enlarge(op.clone()).name();
    let mut report = AxiomReport::new(relation, "enlargement", space.len(), budget);
    let k = space.class_count();
    let regions = Regions {
        op: op.as_ref(),
        space,
        probes: op.probe_points(&space.full_image()),
    };

    if regions.region(&(0..k).collect::<Vec<_>>()).is_none() {
        let skipped = |axiom: &str, statement: &str| AxiomEntry {
            axiom: axiom.into(),
            statement: statement.into(),
            status: Status::Skipped,
            witness: None,
            pairs_checked: 0,
            exhaustive: false,
            note: Some(format!("operator {} has no exact membership test", op.name())),
        };
        report.entries = vec![
            skipped("additivity", ADDITIVITY),
            skipped("extensionality", EXTENSIONALITY),
        ];
        return Ok(report);
    }

    report.entries = match budget.mode {
        Mode::Exhaustive => {
            if k > budget.subset_cap {
                return Err(Error::BudgetExceeded {
                    size: k,
                    cap: budget.subset_cap,
                });
            }
            exhaustive(&regions, k)
        }
        Mode::Sampled => sampled(&regions, k, budget.samples, budget.seed),
    };
    report.notes.push(format!(
        "P and Q range over subsets of the {k} distinct descriptions; regions compared on {} probe points",
        regions.probes.len()
    ));
    Ok(report)
}

fn exhaustive(regions: &Regions, k: usize) -> Vec<AxiomEntry> {
    let size = 1usize << k;
    let table: Vec<Vec<bool>> = (0..size)
        .into_par_iter()
        .map(|m| regions.region(&members(m, k)).expect("exact tests were confirmed"))
        .collect();
    let total = (size * size) as u64;

    let add = (0..size).into_par_iter().find_map_first(|p| {
        (0..size).find_map(|q| {
            additivity_gap(&table[p | q], &table[p], &table[q]).map(|w| (p * size + q, p, q, w))
        })
    });
    let ext = (0..size).into_par_iter().find_map_first(|p| {
        (0..size)
            .filter(|&q| p & !q == 0)
            .find_map(|q| extensionality_gap(&table[p], &table[q]).map(|w| (p * size + q, p, q, w)))
    });

    let entry = |axiom: &str, statement: &str, found: Option<(usize, usize, usize, usize)>, detail: &str| {
        let (witness, checked) = match found {
            Some((index, p, q, w)) => (
                Some(regions.witness(&members(p, k), &members(q, k), w, detail)),
                index as u64 + 1,
            ),
            None => (None, total),
        };
        AxiomEntry {
            axiom: axiom.into(),
            statement: statement.into(),
            status: if witness.is_some() { Status::Fail } else { Status::Pass },
            witness,
            pairs_checked: checked,
            exhaustive: true,
            note: None,
        }
    };
    vec![
        entry(
            "additivity",
            ADDITIVITY,
            add,
            "e(P ∪ Q) and e(P) ∪ e(Q) disagree",
        ),
        entry(
            "extensionality",
            EXTENSIONALITY,
            ext,
            "P ⊆ Q but e(P) is not inside e(Q)",
        ),
    ]
}

fn sampled(regions: &Regions, k: usize, samples: u64, seed: u64) -> Vec<AxiomEntry> {
    let region = |m: &[usize]| regions.region(m).expect("exact tests were confirmed");
    let entry = |axiom: &str, statement: &str, witness: Option<Witness>, checked: u64| AxiomEntry {
        axiom: axiom.into(),
        statement: statement.into(),
        status: if witness.is_some() { Status::Fail } else { Status::Pass },
        witness,
        pairs_checked: checked,
        exhaustive: false,
        note: None,
    };

    let mut rng = rng_for(seed, "additivity");
    let mut add = (None, samples);
    for t in 0..samples {
        let p: Vec<usize> = (0..k).filter(|_| rng.gen::<bool>()).collect();
        let q: Vec<usize> = (0..k).filter(|_| rng.gen::<bool>()).collect();
        let pq: Vec<usize> = (0..k).filter(|c| p.contains(c) || q.contains(c)).collect();
        if let Some(w) = additivity_gap(&region(&pq), &region(&p), &region(&q)) {
            add = (Some(regions.witness(&p, &q, w, "e(P ∪ Q) and e(P) ∪ e(Q) disagree")), t + 1);
            break;
        }
    }

    let mut rng = rng_for(seed, "extensionality");
    let mut ext = (None, samples);
    for t in 0..samples {
        let q: Vec<usize> = (0..k).filter(|_| rng.gen::<bool>()).collect();
        let p: Vec<usize> = q.iter().copied().filter(|_| rng.gen::<bool>()).collect();
        if let Some(w) = extensionality_gap(&region(&p), &region(&q)) {
            ext = (Some(regions.witness(&p, &q, w, "P ⊆ Q but e(P) is not inside e(Q)")), t + 1);
            break;
        }
    }

    vec![
        entry("additivity", ADDITIVITY, add.0, add.1),
        entry("extensionality", EXTENSIONALITY, ext.0, ext.1),
    ]
}
