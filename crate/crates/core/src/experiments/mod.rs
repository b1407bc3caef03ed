//! Random-restart searches over both models, the exhaustive rule census and
//! multi-seed studies.
//!
//! Every random draw comes from a per-iteration ChaCha8 stream keyed by the
//! search seed (see [`rng`]), so a search visits the same candidates in the
//! same order no matter how many workers evaluate them. The reported
//! success is always the lowest passing iteration index.

mod census;
mod criterion;
pub mod rng;
mod search;
mod study;

pub use census::{rule_census, CensusEntry, RuleCensus};
pub use criterion::{count_matches, match_fraction, MatchCriterion};
pub use search::{
    ann_search, ca_rule_search, AnnSearch, CaSearch, Discovery, ModelKind, ReportRecord,
    SearchReport,
};
pub use study::{multi_seed_study, SearchSpec, StudySummary};

use crate::ca::parse_state_string;
use crate::{Bit, EntityTuple};

/// Single live cell in the middle of a 31-cell ring.
pub const STANDARD_INITIAL: &str = "0000000000000001000000000000000";
/// Rule 110's configuration 15 steps after [`STANDARD_INITIAL`].
pub const STANDARD_TARGET: &str = "1101011001111101000000000000000";
pub const STANDARD_WIDTH: usize = 31;
pub const STANDARD_STEPS: usize = 15;
pub const STANDARD_THRESHOLD: f64 = 0.9;
pub const DEFAULT_BUDGET: u64 = 100_000;

pub fn standard_initial() -> EntityTuple<Bit> {
    parse_state_string(STANDARD_INITIAL).expect("constant is a valid state string")
}

pub fn standard_target() -> EntityTuple<Bit> {
    parse_state_string(STANDARD_TARGET).expect("constant is a valid state string")
}

/// Single live cell at `width / 2`.
pub fn centered_seed(width: usize) -> EntityTuple<Bit> {
    (0..width)
        .map(|i| Bit::from_bool(i == width / 2))
        .collect()
}
