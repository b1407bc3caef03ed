use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rng::{stream_rng, RNG_ALGORITHM};
use super::{count_matches, MatchCriterion};
use crate::ann::{build_ann, LayeredTopology, LearningParams, Network, WeightAssignment};
use crate::ca::{build_ca, rule_from_number, CaConfig};
use crate::{Bit, EntityTuple, Error, Result};

/// Iterations handed to the worker pool at a time, per worker.
const CHUNK_PER_WORKER: u64 = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Ca,
    Ann,
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ModelKind::Ca => "ca",
            ModelKind::Ann => "ann",
        })
    }
}

/// Random rule search: each iteration draws a rule number uniformly from
/// 0..=255 and runs the CA from `initial` for `steps` steps.
#[derive(Clone, Debug)]
pub struct CaSearch {
    pub initial: EntityTuple<Bit>,
    pub target: EntityTuple<Bit>,
    pub criterion: MatchCriterion,
    pub steps: usize,
    pub budget: u64,
    pub seed: u64,
}

impl CaSearch {
    /// Single-cell start, rule-110 target, 90% criterion.
    pub fn standard(seed: u64) -> Self {
        Self {
            initial: super::standard_initial(),
            target: super::standard_target(),
            criterion: MatchCriterion::new(super::STANDARD_THRESHOLD, super::STANDARD_WIDTH)
                .expect("valid threshold"),
            steps: super::STANDARD_STEPS,
            budget: super::DEFAULT_BUDGET,
            seed,
        }
    }
}

/// Random-restart network search: each iteration builds a fresh network
/// from its own random stream, trains the output layer, and evaluates it.
#[derive(Clone, Debug)]
pub struct AnnSearch {
    pub initial: EntityTuple<Bit>,
    pub target: EntityTuple<Bit>,
    pub criterion: MatchCriterion,
    pub layers: usize,
    pub learning: LearningParams,
    pub budget: u64,
    pub seed: u64,
}

impl AnnSearch {
    pub fn standard(seed: u64) -> Self {
        Self {
            initial: super::standard_initial(),
            target: super::standard_target(),
            criterion: MatchCriterion::new(super::STANDARD_THRESHOLD, super::STANDARD_WIDTH)
                .expect("valid threshold"),
            layers: super::STANDARD_STEPS,
            learning: LearningParams::default(),
            budget: super::DEFAULT_BUDGET,
            seed,
        }
    }
}

/// Parameters of the reported candidate.
#[derive(Clone, PartialEq, Debug)]
pub enum Discovery {
    Rule(u8),
    /// Trained network found at the given iteration.
    Network {
        iteration: u64,
        weights: WeightAssignment,
    },
}

/// Outcome of one search.
///
/// When the search terminates, the reported candidate is the lowest passing
/// iteration. When the budget runs out, it is the best candidate seen
/// (lowest index among ties), and `terminated` is false.
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub model: ModelKind,
    pub seed: u64,
    pub budget: u64,
    pub iterations: u64,
    pub terminated: bool,
    pub discovered: Option<Discovery>,
    pub output: Option<EntityTuple<Bit>>,
    pub matches: Option<usize>,
    pub width: usize,
    pub min_matches: usize,
    pub rng: &'static str,
    /// Wall-clock time; excluded from equality and from serialized records.
    pub duration: Duration,
}

impl PartialEq for SearchReport {
    fn eq(&self, other: &Self) -> bool {
        self.model == other.model
            && self.seed == other.seed
            && self.budget == other.budget
            && self.iterations == other.iterations
            && self.terminated == other.terminated
            && self.discovered == other.discovered
            && self.output == other.output
            && self.matches == other.matches
            && self.width == other.width
            && self.min_matches == other.min_matches
            && self.rng == other.rng
    }
}

impl SearchReport {
    /// Fraction of matching positions of the reported candidate; `None` when
    /// no iteration ran.
    pub fn match_fraction(&self) -> Option<f64> {
        self.matches.map(|m| m as f64 / self.width as f64)
    }

    pub fn is_exact(&self) -> bool {
        self.matches == Some(self.width)
    }

    pub fn rule(&self) -> Option<u8> {
        match self.discovered {
            Some(Discovery::Rule(r)) => Some(r),
            _ => None,
        }
    }

    pub fn to_record(&self) -> ReportRecord {
        let (rule, network_iteration) = match &self.discovered {
            Some(Discovery::Rule(r)) => (Some(*r), None),
            Some(Discovery::Network { iteration, .. }) => (None, Some(*iteration)),
            None => (None, None),
        };
        ReportRecord {
            model: self.model,
            seed: self.seed,
            budget: self.budget,
            iterations: self.iterations,
            terminated: self.terminated,
            rule,
            network_iteration,
            matches: self.matches,
            width: self.width,
            min_matches: self.min_matches,
            match_fraction: self.match_fraction(),
            output: self.output.as_ref().map(|o| o.to_string()),
            rng: self.rng.to_owned(),
        }
    }
}

/// Flat key/value form of a [`SearchReport`], serialized as TOML. Absent
/// optional keys are omitted.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ReportRecord {
    pub model: ModelKind,
    pub seed: u64,
    pub budget: u64,
    pub iterations: u64,
    pub terminated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub network_iteration: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches: Option<usize>,
    pub width: usize,
    pub min_matches: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub match_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub rng: String,
}

struct Scan {
    iterations: u64,
    passed: bool,
    best: Option<(u64, usize)>,
}

/// Evaluates iterations `0..budget` and returns the lowest passing index,
/// or the best candidate when none passes. `eval` returns the number of
/// matching positions of iteration `i`.
fn scan<E>(budget: u64, workers: usize, criterion: &MatchCriterion, eval: E) -> Result<Scan>
where
    E: Fn(u64) -> Result<usize> + Sync,
{
    let mut best: Option<(u64, usize)> = None;
    let mut consider = |i: u64, m: usize| -> bool {
        if best.is_none_or(|(_, bm)| m > bm) {
            best = Some((i, m));
        }
        criterion.passes(m)
    };

    if workers <= 1 {
        for i in 0..budget {
            if consider(i, eval(i)?) {
                return Ok(Scan {
                    iterations: i + 1,
                    passed: true,
                    best,
                });
            }
        }
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        let chunk = CHUNK_PER_WORKER * workers as u64;
        let mut start = 0;
        while start < budget {
            let end = budget.min(start + chunk);
            let results: Vec<usize> =
                pool.install(|| (start..end).into_par_iter().map(&eval).collect::<Result<_>>())?;
            for (i, m) in (start..end).zip(results) {
                if consider(i, m) {
                    return Ok(Scan {
                        iterations: i + 1,
                        passed: true,
                        best,
                    });
                }
            }
            start = end;
        }
    }
    Ok(Scan {
        iterations: budget,
        passed: false,
        best,
    })
}

fn check_widths(initial: usize, target: usize, criterion: &MatchCriterion) -> Result<()> {
    for actual in [target, criterion.width()] {
        if actual != initial {
            return Err(Error::LengthMismatch {
                expected: initial,
                actual,
            });
        }
    }
    Ok(())
}

fn draw_rule(seed: u64, iteration: u64) -> u8 {
    stream_rng(seed, iteration).random_range(0..=255u8)
}

fn run_rule(search: &CaSearch, cfg: CaConfig, rule: u8) -> Result<EntityTuple<Bit>> {
    let mut ca = build_ca(cfg, rule_from_number(rule as i64)?, search.initial.clone())?;
    ca.advance(search.steps);
    Ok(ca.entities().clone())
}

/// Random-restart search over the 256 elementary rules.
pub fn ca_rule_search(search: &CaSearch, workers: usize) -> Result<SearchReport> {
    let started = Instant::now();
    let width = search.initial.len();
    check_widths(width, search.target.len(), &search.criterion)?;
    let cfg = CaConfig::new(width)?;

    let scan = scan(search.budget, workers, &search.criterion, |i| {
        let out = run_rule(search, cfg, draw_rule(search.seed, i))?;
        count_matches(&out, &search.target)
    })?;

    let (discovered, output, matches) = match scan.best {
        Some((i, m)) => {
            let rule = draw_rule(search.seed, i);
            (
                Some(Discovery::Rule(rule)),
                Some(run_rule(search, cfg, rule)?),
                Some(m),
            )
        }
        None => (None, None, None),
    };
    Ok(SearchReport {
        model: ModelKind::Ca,
        seed: search.seed,
        budget: search.budget,
        iterations: scan.iterations,
        terminated: scan.passed,
        discovered,
        output,
        matches,
        width,
        min_matches: search.criterion.min_matches(),
        rng: RNG_ALGORITHM,
        duration: started.elapsed(),
    })
}

/// Builds, trains and evaluates the candidate network of `iteration`.
pub(crate) fn ann_candidate(search: &AnnSearch, iteration: u64) -> Result<(Network, EntityTuple<Bit>)> {
    let topology = LayeredTopology::new(search.initial.len(), search.layers)?;
    let mut net = build_ann(topology, &mut stream_rng(search.seed, iteration));
    net.train(&search.initial, &search.target, search.learning)?;
    let out = net.forward(&search.initial)?;
    Ok((net, out))
}

/// Random-restart search over freshly initialized, output-trained networks.
pub fn ann_search(search: &AnnSearch, workers: usize) -> Result<SearchReport> {
    let started = Instant::now();
    let width = search.initial.len();
    check_widths(width, search.target.len(), &search.criterion)?;
    LayeredTopology::new(width, search.layers)?;

    let scan = scan(search.budget, workers, &search.criterion, |i| {
        let (_, out) = ann_candidate(search, i)?;
        count_matches(&out, &search.target)
    })?;

    let (discovered, output, matches) = match scan.best {
        Some((i, m)) => {
            let (net, out) = ann_candidate(search, i)?;
            (
                Some(Discovery::Network {
                    iteration: i,
                    weights: net.weights(),
                }),
                Some(out),
                Some(m),
            )
        }
        None => (None, None, None),
    };
    Ok(SearchReport {
        model: ModelKind::Ann,
        seed: search.seed,
        budget: search.budget,
        iterations: scan.iterations,
        terminated: scan.passed,
        discovered,
        output,
        matches,
        width,
        min_matches: search.criterion.min_matches(),
        rng: RNG_ALGORITHM,
        duration: started.elapsed(),
    })
}
