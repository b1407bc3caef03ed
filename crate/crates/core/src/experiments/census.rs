use std::fmt::Write;

use super::{count_matches, MatchCriterion};
use crate::ca::{build_ca, rule_from_number, CaConfig, RULE_COUNT};
use crate::{Bit, EntityTuple, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CensusEntry {
    pub rule: u8,
    pub matches: usize,
}

/// How close every elementary rule gets to a target.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RuleCensus {
    width: usize,
    entries: Vec<CensusEntry>,
}

/// Runs all 256 rules from `initial` for `steps` steps and scores each
/// output against `target`.
pub fn rule_census(
    initial: &EntityTuple<Bit>,
    target: &EntityTuple<Bit>,
    steps: usize,
) -> Result<RuleCensus> {
    let cfg = CaConfig::new(initial.len())?;
    let entries = (0..RULE_COUNT)
        .map(|rule| {
            let mut ca = build_ca(cfg, rule_from_number(rule as i64)?, initial.clone())?;
            ca.advance(steps);
            Ok(CensusEntry {
                rule: rule as u8,
                matches: count_matches(ca.entities(), target)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(RuleCensus {
        width: initial.len(),
        entries,
    })
}

impl RuleCensus {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn entries(&self) -> &[CensusEntry] {
        &self.entries
    }

    pub fn matches(&self, rule: u8) -> usize {
        self.entries[rule as usize].matches
    }

    pub fn fraction(&self, rule: u8) -> f64 {
        self.matches(rule) as f64 / self.width as f64
    }

    /// Rules meeting the criterion, ascending.
    pub fn passing(&self, criterion: &MatchCriterion) -> Vec<u8> {
        self.entries
            .iter()
            .filter(|e| criterion.passes(e.matches))
            .map(|e| e.rule)
            .collect()
    }

    /// 256 lines of `rule matches/width fraction`, fraction to six places.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{} {}/{} {:.6}",
                e.rule,
                e.matches,
                self.width,
                e.matches as f64 / self.width as f64
            );
        }
        out
    }
}
