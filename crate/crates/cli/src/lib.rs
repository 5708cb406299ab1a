//! The `dprox` command line: argument parsing, run configuration, and the
//! four subcommands. Every verdict comes straight from the library.

mod commands;
mod config;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{execute, render, Outcome};
pub use config::{RunConfig, SetSource, SpaceSource};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] dprox::Error),
    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Parser)]
#[command(name = "dprox", version, about = "Descriptive proximity relations and axiom checks on finite spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether two named sets are near.
    Eval {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        sets: SetArgs,
        /// Two set names, comma separated.
        #[arg(long, value_name = "A,B")]
        pair: String,
        #[arg(long, default_value = "peters")]
        relation: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check an axiom suite and write a report.
    Check {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        sets: SetArgs,
        #[arg(long, default_value = "peters")]
        relation: String,
        /// cech, lodato, ef, betweenness, separated, strong, kuratowski,
        /// classify, enlargement, topology or separation.
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List the description classes.
    Classes {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closure of a named set under a relation.
    Closure {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        sets: SetArgs,
        #[arg(long, value_name = "NAME")]
        set: String,
        #[arg(long, default_value = "peters")]
        relation: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct SpaceArgs {
    /// Feature table (CSV with a header row).
    #[arg(long, value_name = "FILE", group = "source")]
    pub space: Option<PathBuf>,
    /// PGM or PPM image; one point per pixel.
    #[arg(long, value_name = "FILE", group = "source")]
    pub image: Option<PathBuf>,
    /// Seeded random space.
    #[arg(long, value_name = "N:ARITY:LEVELS", group = "source")]
    pub random: Option<String>,
    #[arg(long, default_value = "grey")]
    pub probe: String,
    #[arg(long, value_name = "Q", default_value_t = 1)]
    pub quantize: u32,
    /// Append pixel coordinates to each description.
    #[arg(long)]
    pub position: bool,
    #[arg(long, value_name = "COL", default_value = "id")]
    pub csv_id: String,
    #[arg(long, value_name = "COLS", value_delimiter = ',')]
    pub csv_features: Option<Vec<String>>,
    /// Multiply cells by this factor before requiring integers.
    #[arg(long, value_name = "K", default_value_t = 1)]
    pub csv_scale: u64,
    /// Seed for --random and for sampled checks.
    #[arg(long, value_name = "S", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SetArgs {
    /// JSON region file mapping names to {"ids": [...]} or {"rect": [x0,y0,x1,y1]}.
    #[arg(long, value_name = "FILE")]
    pub sets: Option<PathBuf>,
    /// Inline set, e.g. `A=a+b+c`; repeatable.
    #[arg(long, value_name = "NAME=IDS")]
    pub define: Vec<String>,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Visit every subset (the default).
    #[arg(long, conflicts_with = "samples")]
    pub exhaustive: bool,
    /// Draw N random instances per axiom instead.
    #[arg(long, value_name = "N")]
    pub samples: Option<u64>,
    #[arg(long, value_name = "K", default_value_t = 8)]
    pub subset_cap: usize,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write JSON here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

impl SpaceArgs {
    fn source(&self) -> Result<SpaceSource, CliError> {
        if let Some(path) = &self.space {
            return Ok(SpaceSource::Csv {
                path: path.clone(),
                id_column: self.csv_id.clone(),
                feature_columns: self.csv_features.clone(),
                scale: self.csv_scale,
            });
        }
        if let Some(path) = &self.image {
            return Ok(SpaceSource::Image {
                path: path.clone(),
                probe: config::probe(&self.probe, self.quantize, self.position)?,
            });
        }
        if let Some(spec) = &self.random {
            let parts: Vec<&str> = spec.split(':').collect();
            let bad = || CliError::Usage(format!("--random expects N:ARITY:LEVELS, got {spec:?}"));
            let [n, arity, levels] = parts[..] else { return Err(bad()) };
            return Ok(SpaceSource::Random {
                size: n.parse().map_err(|_| bad())?,
                arity: arity.parse().map_err(|_| bad())?,
                levels: levels.parse().map_err(|_| bad())?,
                seed: self.seed,
            });
        }
        Err(CliError::Usage("one of --space, --image or --random is required".into()))
    }
}

impl SetArgs {
    fn source(&self) -> Result<SetSource, CliError> {
        let mut inline = BTreeMap::new();
        for def in &self.define {
            let (name, ids) = def
                .split_once('=')
                .filter(|(n, _)| !n.is_empty())
                .ok_or_else(|| CliError::Usage(format!("--define expects NAME=id+id, got {def:?}")))?;
            let ids = ids.split('+').filter(|s| !s.is_empty()).map(str::to_string).collect();
            inline.insert(name.to_string(), ids);
        }
        Ok(SetSource {
            file: self.sets.clone(),
            inline,
        })
    }
}

impl Cli {
    /// Folds the parsed arguments into a reproducible configuration.
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let none = SetArgs {
            sets: None,
            define: Vec::new(),
        };
        let (command, space, sets, relation, suite, operands, budget, out) = match self.command {
            Command::Eval {
                space,
                sets,
                pair,
                relation,
                output,
            } => {
                let operands: Vec<String> = pair.split(',').map(|s| s.trim().to_string()).collect();
                if operands.len() != 2 || operands.iter().any(String::is_empty) {
                    return Err(CliError::Usage(format!("--pair expects A,B, got {pair:?}")));
                }
                let budget = config::budget(None, space.seed, 8);
                ("eval", space, sets, Some(relation), None, operands, budget, output.out)
            }
            Command::Check {
                space,
                sets,
                relation,
                suite,
                budget,
                output,
            } => {
                let b = config::budget(budget.samples, space.seed, budget.subset_cap);
                ("check", space, sets, Some(relation), Some(suite), Vec::new(), b, output.out)
            }
            Command::Classes { space, output } => {
                let budget = config::budget(None, space.seed, 8);
                ("classes", space, none, None, None, Vec::new(), budget, output.out)
            }
            Command::Closure {
                space,
                sets,
                set,
                relation,
                output,
            } => {
                let budget = config::budget(None, space.seed, 8);
                ("closure", space, sets, Some(relation), None, vec![set], budget, output.out)
            }
        };
        Ok(RunConfig {
            command: command.to_string(),
            space: space.source()?,
            sets: sets.source()?,
            relation,
            suite,
            operands,
            budget,
            out,
        })
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match cli.into_config().and_then(|c| commands::execute(&c)) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            eprintln!("dprox: {e}");
            2
        }
    }
}
