use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const REPORT_VERSION: &str = "axiom-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

/// How much of the subset lattice a check may visit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckBudget {
    pub mode: Mode,
    /// Instances drawn per axiom in sampled mode.
    pub samples: u64,
    pub seed: u64,
    /// Largest space exhaustive mode accepts.
    pub subset_cap: usize,
}

impl Default for CheckBudget {
    fn default() -> Self {
        CheckBudget {
            mode: Mode::Exhaustive,
            samples: 10_000,
            seed: 0,
            subset_cap: 8,
        }
    }
}

impl CheckBudget {
    pub fn exhaustive() -> Self {
        Self::default()
    }

    pub fn sampled(samples: u64, seed: u64) -> Self {
        CheckBudget {
            mode: Mode::Sampled,
            samples,
            seed,
            ..Self::default()
        }
    }

    pub fn with_subset_cap(mut self, cap: usize) -> Self {
        self.subset_cap = cap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode == Mode::Sampled && self.samples == 0 {
            return Err(Error::InvalidBudget("sample count must be positive".into()));
        }
        if self.subset_cap > super::universe::MAX_TABLE_POINTS {
            return Err(Error::InvalidBudget(format!(
                "subset cap {} exceeds the maximum of {}",
                self.subset_cap,
                super::universe::MAX_TABLE_POINTS
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Sets exhibiting a violation, by point id in space order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: Vec<String>,
    pub b: Vec<String>,
    /// The third set of ternary axioms (`C`, or the separator `E`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<String>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomEntry {
    pub axiom: String,
    pub statement: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Instances examined (pairs or triples); on failure, up to and including the witness.
    pub pairs_checked: u64,
    pub exhaustive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl AxiomEntry {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub version: String,
    pub relation: String,
    pub suite: String,
    pub points: usize,
    pub budget: CheckBudget,
    pub entries: Vec<AxiomEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<serde_json::Value>,
}

impl AxiomReport {
    pub(crate) fn new(relation: String, suite: &str, points: usize, budget: &CheckBudget) -> Self {
        AxiomReport {
            version: REPORT_VERSION.to_string(),
            relation,
            suite: suite.to_string(),
            points,
            budget: budget.clone(),
            entries: Vec::new(),
            notes: Vec::new(),
            config: None,
        }
    }

    pub fn entry(&self, axiom: &str) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    /// True when no entry failed. Skipped entries do not count as failures.
    pub fn all_pass(&self) -> bool {
        !self.entries.iter().any(AxiomEntry::failed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomEntry> {
        self.entries.iter().filter(|e| e.failed())
    }

    /// Pretty JSON with object keys in sorted order.
    pub fn to_canonical_json(&self) -> String {
        canonical_json(self)
    }
}

/// Serializes through `serde_json::Value`, whose maps keep keys sorted.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("report types serialize to JSON");
    serde_json::to_string_pretty(&value).expect("JSON values always render")
}
