use std::collections::BTreeMap;
use std::path::PathBuf;

use dprox::axioms::{CheckBudget, Mode};
use dprox::ingest::{self, CsvOptions, ProbeKind, ProbeSpec};
use dprox::random::seeded_space;
use dprox::{DescribedSpace, PointSet};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Where the points come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpaceSource {
    Csv {
        path: PathBuf,
        id_column: String,
        feature_columns: Option<Vec<String>>,
        scale: u64,
    },
    Image { path: PathBuf, probe: ProbeSpec },
    Random { size: usize, arity: usize, levels: i64, seed: u64 },
}

impl SpaceSource {
    pub fn load(&self) -> Result<DescribedSpace, CliError> {
        Ok(match self {
            SpaceSource::Csv {
                path,
                id_column,
                feature_columns,
                scale,
            } => {
                let opts = CsvOptions {
                    id_column: id_column.clone(),
                    feature_columns: feature_columns.clone(),
                    scale: *scale,
                };
                ingest::load_csv(path, &opts)?
            }
            SpaceSource::Image { path, probe } => ingest::load_image(path, probe)?,
            SpaceSource::Random {
                size,
                arity,
                levels,
                seed,
            } => {
                if *size == 0 || *arity == 0 || *levels <= 0 {
                    return Err(CliError::Usage("--random needs positive N:ARITY:LEVELS".into()));
                }
                seeded_space(*seed, *size, *arity, *levels)
            }
        })
    }
}

/// Named point sets: a region file, inline definitions, or both.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSource {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
    /// Name to point ids; these shadow file entries of the same name.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub inline: BTreeMap<String, Vec<String>>,
}

impl SetSource {
    pub fn resolve(&self, space: &DescribedSpace) -> Result<BTreeMap<String, PointSet>, CliError> {
        let mut specs = match &self.file {
            Some(path) => ingest::load_regions(path)?,
            None => Vec::new(),
        };
        specs.retain(|s| !self.inline.contains_key(&s.name));
        specs.extend(self.inline.iter().map(|(name, ids)| {
            let mut spec = ingest::RegionSpec::ids(name.clone(), ids.iter().cloned());
            spec.allow_empty = true;
            spec
        }));
        Ok(ingest::resolve_regions(space, &specs)?)
    }
}

/// Everything a run depends on. Reports embed it so a run can be repeated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub space: SpaceSource,
    #[serde(default)]
    pub sets: SetSource,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    /// Operands: two set names for `eval`, one for `closure`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub operands: Vec<String>,
    pub budget: CheckBudget,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

pub(crate) fn probe(kind: &str, quantize: u32, position: bool) -> Result<ProbeSpec, CliError> {
    let kind = match kind {
        "grey" | "gray" => ProbeKind::Grey,
        "rgb" => ProbeKind::Rgb,
        other => return Err(CliError::Usage(format!("unknown probe {other:?}, expected grey or rgb"))),
    };
    Ok(ProbeSpec {
        kind,
        quantize,
        include_position: position,
    })
}

pub(crate) fn budget(samples: Option<u64>, seed: u64, subset_cap: usize) -> CheckBudget {
    let mode = if samples.is_some() { Mode::Sampled } else { Mode::Exhaustive };
    CheckBudget {
        mode,
        samples: samples.unwrap_or(CheckBudget::default().samples),
        seed,
        subset_cap,
    }
}
