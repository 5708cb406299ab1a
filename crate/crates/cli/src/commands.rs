use std::collections::BTreeMap;
use std::io::Write;

use dprox::axioms::{self, canonical_json, AxiomReport, REPORT_VERSION};
use dprox::relations::{shared_description, EnlargementRegistry};
use dprox::topology::{self, ClosureOperator};
use dprox::{phi_classes, phi_image, DescribedSpace, PointSet, RelationSpec};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::CliError;

/// Rendered JSON and whether the run found a counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub json: String,
    pub counterexample: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.counterexample {
            1
        } else {
            0
        }
    }
}

/// Runs `config` and writes its JSON to `config.out` or standard output.
pub fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    let outcome = render(config)?;
    match &config.out {
        Some(path) => std::fs::write(path, format!("{}\n", outcome.json)).map_err(|source| {
            CliError::Write {
                path: path.clone(),
                source,
            }
        })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = writeln!(stdout, "{}", outcome.json) {
                // a closed pipe (`dprox ... | head`) is not an error
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(CliError::Write {
                        path: "<stdout>".into(),
                        source: e,
                    });
                }
            }
        }
    }
    Ok(outcome)
}

/// Runs `config` without writing anything.
pub fn render(config: &RunConfig) -> Result<Outcome, CliError> {
    let space = config.space.load()?;
    let embedded = serde_json::to_value(config).expect("configs serialize");
    let plain = |value: Value| Outcome {
        json: canonical_json(&value),
        counterexample: false,
    };
    match config.command.as_str() {
        "eval" => {
            let sets = config.sets.resolve(&space)?;
            let rel = relation(config, &space, &sets)?;
            let [a, b] = [&config.operands[0], &config.operands[1]].map(|n| named(&sets, n));
            let (a, b) = (a?, b?);
            let near = rel.near(&space, a, b)?;
            let witness = match (&rel, near) {
                (RelationSpec::Peters | RelationSpec::Strong { .. }, true) => {
                    shared_description(&rel, &space, a, b)?
                }
                _ => None,
            };
            Ok(plain(json!({
                "relation": rel.name(),
                "pair": config.operands,
                "near": near,
                "witness": witness,
                "config": embedded,
            })))
        }
        "closure" => {
            let sets = config.sets.resolve(&space)?;
            let rel = relation(config, &space, &sets)?;
            let a = named(&sets, &config.operands[0])?;
            let op = ClosureOperator::new(&rel, &space)?;
            let cl = op.apply(a)?;
            Ok(plain(json!({
                "relation": rel.name(),
                "set": config.operands[0],
                "closure": space.ids_of(&cl),
                "closed": &cl == a,
                "config": embedded,
            })))
        }
        "classes" => {
            let partition = phi_classes(&space);
            let classes: Vec<Value> = partition
                .classes()
                .iter()
                .zip(partition.descriptions())
                .map(|(members, d)| json!({ "description": d, "members": space.ids_of(members) }))
                .collect();
            Ok(plain(json!({
                "points": space.len(),
                "count": classes.len(),
                "injective": space.is_injective(),
                "classes": classes,
                "config": embedded,
            })))
        }
        "check" => check(config, &space, embedded),
        other => Err(CliError::Usage(format!("unknown command {other:?}"))),
    }
}

fn check(config: &RunConfig, space: &DescribedSpace, embedded: Value) -> Result<Outcome, CliError> {
    let suite = config.suite.as_deref().unwrap_or_default();
    let sets = config.sets.resolve(space)?;
    let rel = relation(config, space, &sets)?;
    let budget = &config.budget;
    let mut report: AxiomReport = match suite {
        "cech" => axioms::check_cech(&rel, space, budget)?,
        "lodato" => axioms::check_lodato(&rel, space, budget)?,
        "strong" => axioms::check_strong(&rel, space, budget)?,
        "kuratowski" => axioms::check_kuratowski(&rel, space, budget)?,
        "ef" => axioms::check_ef(&rel, space, budget)?,
        "betweenness" => axioms::check_ef_betweenness(&rel, space, budget)?,
        "separated" => axioms::check_separated(&rel, space)?,
        "separation" => topology::separation_checks(&rel, space)?,
        "enlargement" => match &rel {
            RelationSpec::Enlarge(op) => axioms::check_enlargement(op.clone(), space, budget)?,
            _ => return Err(CliError::Usage("the enlargement suite needs --relation enlarge:OP".into())),
        },
        "topology" => match rel {
            RelationSpec::Peters => topology::verify_closed_iff_saturated(space, budget)?,
            _ => return Err(CliError::Usage("the topology suite is defined for peters only".into())),
        },
        "classify" => {
            let c = axioms::classify_vs_peters(&rel, space, budget)?;
            let value = json!({
                "version": REPORT_VERSION,
                "suite": "classify",
                "classification": c,
                "config": embedded,
            });
            return Ok(Outcome {
                json: canonical_json(&value),
                counterexample: false,
            });
        }
        other => return Err(CliError::Usage(format!("unknown suite {other:?}"))),
    };
    report.config = Some(embedded);
    Ok(Outcome {
        counterexample: !report.all_pass(),
        json: report.to_canonical_json(),
    })
}

fn relation(
    config: &RunConfig,
    space: &DescribedSpace,
    sets: &BTreeMap<String, PointSet>,
) -> Result<RelationSpec, CliError> {
    let name = config.relation.as_deref().unwrap_or("peters");
    let rel = RelationSpec::parse_with(name, &EnlargementRegistry::new(), |s| {
        let set = sets.get(s).ok_or_else(|| dprox::Error::UnknownSet(s.to_string()))?;
        phi_image(space, set)
    })?;
    Ok(rel)
}

fn named<'a>(sets: &'a BTreeMap<String, PointSet>, name: &str) -> Result<&'a PointSet, CliError> {
    sets.get(name)
        .ok_or_else(|| CliError::Library(dprox::Error::UnknownSet(name.to_string())))
}
