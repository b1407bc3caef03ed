//! Command-line front end.
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 search budget
//! exhausted (report still written), 4 I/O failure.

mod config;
mod output;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

pub use config::{ConfigArgs, EffectiveConfig, PartialConfig};
pub use output::{trace_text, write_pgm};

use crate::ann::{build_ann, LayeredTopology};
use crate::ca::{build_ca, rule_from_number, CaConfig};
use crate::experiments::rng::{stream_rng, RNG_ALGORITHM};
use crate::experiments::{
    ann_search, ca_rule_search, multi_seed_study, rule_census, AnnSearch, CaSearch, Discovery,
    ModelKind, ReportRecord, SearchReport, SearchSpec,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_BUDGET_EXHAUSTED: u8 = 3;
pub const EXIT_IO: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "allagmatic", version, about = "Cellular automaton and feedforward network experiments on a shared metamodel")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate one model and write its trace.
    Run(ConfigArgs),
    /// Random-restart search for parameters reproducing the target.
    Search(ConfigArgs),
    /// Score all 256 elementary rules against the target.
    Census(ConfigArgs),
    /// Repeat a search over several derived seeds.
    Study(ConfigArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Run(_) => "run",
            Command::Search(_) => "search",
            Command::Census(_) => "census",
            Command::Study(_) => "study",
        }
    }

    fn args(&self) -> &ConfigArgs {
        match self {
            Command::Run(a) | Command::Search(a) | Command::Census(a) | Command::Study(a) => a,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid config field `{field}`: {message}")]
    Config { field: &'static str, message: String },
    #[error("{0}")]
    Model(#[from] crate::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } | CliError::Model(_) => EXIT_CONFIG,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

/// Exit code and a one-line summary for stdout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub summary: String,
}

impl Outcome {
    fn ok(summary: String) -> Self {
        Self {
            code: EXIT_OK,
            summary,
        }
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Resolves the configuration and runs one subcommand. Completed runs
/// return exit code 0, or 3 for an exhausted search.
pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    let cfg = command.args().resolve(command.name())?;
    fs::create_dir_all(&cfg.output_dir).map_err(|source| CliError::Io {
        path: cfg.output_dir.display().to_string(),
        source,
    })?;
    match command {
        Command::Run(_) => cmd_run(&cfg),
        Command::Search(_) => cmd_search(&cfg),
        Command::Census(_) => cmd_census(&cfg),
        Command::Study(_) => cmd_study(&cfg),
    }
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn to_toml<T: Serialize>(value: &T) -> String {
    toml::to_string(value).expect("output records serialize to TOML")
}

pub fn cmd_run(cfg: &EffectiveConfig) -> Result<Outcome, CliError> {
    let initial = cfg.initial_state()?;
    let snapshots = match cfg.model {
        ModelKind::Ca => {
            let mut ca = build_ca(
                CaConfig::new(cfg.width)?,
                rule_from_number(cfg.rule)?,
                initial,
            )?;
            ca.run(cfg.steps).snapshots().to_vec()
        }
        ModelKind::Ann => {
            let topology = LayeredTopology::new(cfg.width, cfg.steps)?;
            let mut net = build_ann(topology, &mut stream_rng(cfg.seed, 0));
            let layers = net.forward_layers(&initial)?;
            write_file(&cfg.output_dir.join("weights.txt"), net.weights().to_text(&topology))?;
            layers
        }
    };
    let text = trace_text(&snapshots);
    write_file(&cfg.output_dir.join("trace.txt"), &text)?;
    if cfg.pgm {
        let mut buf = Vec::new();
        write_pgm(&snapshots, &mut buf).expect("writing to a Vec cannot fail");
        write_file(&cfg.output_dir.join("trace.pgm"), buf)?;
    }
    write_file(&cfg.output_dir.join("config.toml"), to_toml(cfg))?;
    Ok(Outcome::ok(
        snapshots.last().map(|s| s.to_string()).unwrap_or_default(),
    ))
}

#[derive(Serialize)]
struct SearchFile<'a> {
    config: &'a EffectiveConfig,
    report: ReportRecord,
}

pub(crate) fn ca_search_of(cfg: &EffectiveConfig) -> Result<CaSearch, CliError> {
    Ok(CaSearch {
        initial: cfg.initial_state()?,
        target: cfg.target_state()?,
        criterion: cfg.criterion()?,
        steps: cfg.steps,
        budget: cfg.budget,
        seed: cfg.seed,
    })
}

pub(crate) fn ann_search_of(cfg: &EffectiveConfig) -> Result<AnnSearch, CliError> {
    Ok(AnnSearch {
        initial: cfg.initial_state()?,
        target: cfg.target_state()?,
        criterion: cfg.criterion()?,
        layers: cfg.steps,
        learning: cfg.learning()?,
        budget: cfg.budget,
        seed: cfg.seed,
    })
}

pub fn cmd_search(cfg: &EffectiveConfig) -> Result<Outcome, CliError> {
    let report: SearchReport = match cfg.model {
        ModelKind::Ca => ca_rule_search(&ca_search_of(cfg)?, cfg.workers)?,
        ModelKind::Ann => ann_search(&ann_search_of(cfg)?, cfg.workers)?,
    };
    if let Some(Discovery::Network { weights, .. }) = &report.discovered {
        let topology = LayeredTopology::new(cfg.width, cfg.steps)?;
        write_file(&cfg.output_dir.join("weights.txt"), weights.to_text(&topology))?;
    }
    let file = SearchFile {
        config: cfg,
        report: report.to_record(),
    };
    write_file(&cfg.output_dir.join("report.toml"), to_toml(&file))?;
    let mut summary = format!(
        "{} search: {} iterations, terminated={}",
        report.model, report.iterations, report.terminated
    );
    if let Some(m) = report.matches {
        summary += &format!(", matches {m}/{}", report.width);
    }
    if let Some(rule) = report.rule() {
        summary += &format!(", rule {rule}");
    }
    summary += &format!(" ({:.3?})", report.duration);
    Ok(Outcome {
        code: if report.terminated {
            EXIT_OK
        } else {
            EXIT_BUDGET_EXHAUSTED
        },
        summary,
    })
}

pub fn cmd_census(cfg: &EffectiveConfig) -> Result<Outcome, CliError> {
    let census = rule_census(&cfg.initial_state()?, &cfg.target_state()?, cfg.steps)?;
    write_file(&cfg.output_dir.join("census.txt"), census.to_text())?;
    write_file(&cfg.output_dir.join("config.toml"), to_toml(cfg))?;
    let passing = census.passing(&cfg.criterion()?);
    Ok(Outcome::ok(format!(
        "passing rules: {}",
        passing.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ")
    )))
}

#[derive(Serialize)]
struct StudyFile<'a> {
    config: &'a EffectiveConfig,
    summary: StudyAggregate,
    runs: Vec<ReportRecord>,
}

#[derive(Serialize)]
struct StudyAggregate {
    seeds: usize,
    median_iterations: f64,
    pass_count: usize,
    pass_rate: f64,
    exact_matches: usize,
    terminated_below_1000: usize,
    rng: &'static str,
}

pub fn cmd_study(cfg: &EffectiveConfig) -> Result<Outcome, CliError> {
    let spec = match cfg.model {
        ModelKind::Ca => SearchSpec::Ca(ca_search_of(cfg)?),
        ModelKind::Ann => SearchSpec::Ann(ann_search_of(cfg)?),
    };
    let study = multi_seed_study(&spec, cfg.seed, cfg.seeds_count, cfg.workers)?;
    let file = StudyFile {
        config: cfg,
        summary: StudyAggregate {
            seeds: study.reports.len(),
            median_iterations: study.median_iterations(),
            pass_count: study.pass_count(),
            pass_rate: study.pass_rate(),
            exact_matches: study.exact_matches(),
            terminated_below_1000: study.terminated_below(1000),
            rng: RNG_ALGORITHM,
        },
        runs: study.reports.iter().map(SearchReport::to_record).collect(),
    };
    write_file(&cfg.output_dir.join("study.toml"), to_toml(&file))?;
    Ok(Outcome::ok(format!(
        "median iterations {}, passed {}/{}, exact {}",
        file.summary.median_iterations,
        file.summary.pass_count,
        file.summary.seeds,
        file.summary.exact_matches
    )))
}
