use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::ann::LearningParams;
use crate::ca::{build_ca, parse_state_string, rule_from_number, CaConfig};
use crate::experiments::{
    centered_seed, MatchCriterion, ModelKind, DEFAULT_BUDGET, STANDARD_STEPS, STANDARD_THRESHOLD,
    STANDARD_WIDTH,
};
use crate::{Bit, EntityTuple};

/// Experiment settings as given on the command line or in a config file.
/// Every field is optional; flags override file values and unset fields
/// fall back to defaults.
#[derive(Clone, Debug, Default, PartialEq, clap::Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct PartialConfig {
    /// Model kind: ca or ann.
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    /// Number of cells, or neurons per layer.
    #[arg(long)]
    pub width: Option<usize>,
    /// CA time steps, or number of computed network layers.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Wolfram rule number for `run` with the CA model.
    #[arg(long)]
    pub rule: Option<i64>,
    /// Search seed, or master seed for studies.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Fraction of positions that must match the target.
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Maximum search iterations.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Number of seeds in a study.
    #[arg(long)]
    pub seeds_count: Option<usize>,
    /// Perceptron learning rate
    #[arg(long)]
    pub learning_rate: Option<f64>,
    /// Perceptron epochs per candidate network.
    #[arg(long)]
    pub epochs: Option<u32>,
    /// Directory for trace, report and config files
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
    /// Worker threads for searches and studies.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Initial state as a 0/1 string (default: one live cell at width/2).
    #[arg(long)]
    pub initial: Option<String>,
    /// Target state as a 0/1 string (default: rule 110 applied `steps`
    /// times to the initial state).
    #[arg(long)]
    pub target: Option<String>,
    /// Also write the trace as a binary PGM space-time diagram.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub pgm: Option<bool>,
    /// Subcommand that produced an echoed config; ignored on input.
    #[arg(skip)]
    pub command: Option<String>,
}

#[derive(Clone, Debug, clap::Args)]
pub struct ConfigArgs {
    /// TOML file with the same keys as the flags (kebab-case).
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub flags: PartialConfig,
}

macro_rules! overlay {
    ($base:ident, $top:ident, $($field:ident),* $(,)?) => {
        PartialConfig { $($field: $top.$field.or($base.$field),)* }
    };
}

impl PartialConfig {
    /// `other` wins wherever it is set.
    pub fn overlaid_with(self, other: PartialConfig) -> PartialConfig {
        overlay!(
            self, other, model, width, steps, rule, seed, threshold, budget, seeds_count,
            learning_rate, epochs, output_dir, workers, initial, target, pgm, command,
        )
    }
}

impl ConfigArgs {
    pub fn resolve(&self, command: &str) -> Result<EffectiveConfig, CliError> {
        let file = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                toml::from_str::<PartialConfig>(&text).map_err(|e| CliError::Config {
                    field: "config",
                    message: e.to_string(),
                })?
            }
            None => PartialConfig::default(),
        };
        EffectiveConfig::resolve(command, file.overlaid_with(self.flags.clone()))
    }
}

/// Fully resolved and validated settings. Serialized verbatim into output
/// files so every artifact can be reproduced with `--config`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct EffectiveConfig {
    pub command: String,
    pub model: ModelKind,
    pub width: usize,
    pub steps: usize,
    pub rule: i64,
    pub seed: u64,
    pub threshold: f64,
    pub budget: u64,
    pub seeds_count: usize,
    pub learning_rate: f64,
    pub epochs: u32,
    pub output_dir: PathBuf,
    pub workers: usize,
    pub initial: String,
    pub target: String,
    pub pgm: bool,
}

fn invalid(field: &'static str, message: impl ToString) -> CliError {
    CliError::Config {
        field,
        message: message.to_string(),
    }
}

impl EffectiveConfig {
    pub fn resolve(command: &str, p: PartialConfig) -> Result<Self, CliError> {
        let width = p.width.unwrap_or(STANDARD_WIDTH);
        CaConfig::new(width).map_err(|e| invalid("width", e))?;
        let steps = p.steps.unwrap_or(STANDARD_STEPS);
        let model = p.model.unwrap_or(ModelKind::Ca);
        if model == ModelKind::Ann && steps == 0 {
            return Err(invalid("steps", "a network needs at least one layer"));
        }
        let rule = p.rule.unwrap_or(110);
        rule_from_number(rule).map_err(|e| invalid("rule", e))?;
        let threshold = p.threshold.unwrap_or(STANDARD_THRESHOLD);
        MatchCriterion::new(threshold, width).map_err(|e| invalid("threshold", e))?;
        let learning_rate = p.learning_rate.unwrap_or(LearningParams::DEFAULT_RATE);
        let epochs = p.epochs.unwrap_or(LearningParams::DEFAULT_EPOCHS);
        LearningParams::new(learning_rate, epochs).map_err(|e| invalid("learning-rate", e))?;
        let seeds_count = p.seeds_count.unwrap_or(20);
        if seeds_count == 0 {
            return Err(invalid("seeds-count", "must be at least 1"));
        }
        let seed = p.seed.unwrap_or(0);
        if seed > i64::MAX as u64 {
            return Err(invalid("seed", "must fit a signed 64-bit integer"));
        }
        let workers = p.workers.unwrap_or(1);
        if workers == 0 {
            return Err(invalid("workers", "must be at least 1"));
        }

        let initial = match p.initial {
            Some(s) => checked_state("initial", &s, width)?,
            None => centered_seed(width),
        };
        let target = match p.target {
            Some(s) => checked_state("target", &s, width)?,
            None => {
                let mut ca = build_ca(
                    CaConfig::new(width)?,
                    rule_from_number(110)?,
                    initial.clone(),
                )?;
                ca.advance(steps);
                ca.entities().clone()
            }
        };

        Ok(Self {
            command: command.to_owned(),
            model,
            width,
            steps,
            rule,
            seed,
            threshold,
            budget: p.budget.unwrap_or(DEFAULT_BUDGET),
            seeds_count,
            learning_rate,
            epochs,
            output_dir: p.output_dir.unwrap_or_else(|| PathBuf::from("out")),
            workers,
            initial: initial.to_string(),
            target: target.to_string(),
            pgm: p.pgm.unwrap_or(false),
        })
    }

    pub fn initial_state(&self) -> Result<EntityTuple<Bit>, CliError> {
        checked_state("initial", &self.initial, self.width)
    }

    pub fn target_state(&self) -> Result<EntityTuple<Bit>, CliError> {
        checked_state("target", &self.target, self.width)
    }

    pub fn criterion(&self) -> Result<MatchCriterion, CliError> {
        MatchCriterion::new(self.threshold, self.width).map_err(|e| invalid("threshold", e))
    }

    pub fn learning(&self) -> Result<LearningParams, CliError> {
        LearningParams::new(self.learning_rate, self.epochs).map_err(|e| invalid("learning-rate", e))
    }
}

fn checked_state(field: &'static str, s: &str, width: usize) -> Result<EntityTuple<Bit>, CliError> {
    let state = parse_state_string(s).map_err(|e| invalid(field, e))?;
    if state.len() != width {
        return Err(invalid(
            field,
            format!("has {} cells but width is {width}", state.len()),
        ));
    }
    Ok(state)
}
