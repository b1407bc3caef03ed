use rayon::prelude::*;

use super::rng::derive_seed;
use super::{ann_search, ca_rule_search, AnnSearch, CaSearch, SearchReport};
use crate::{Error, Result};

/// A search template; its own seed is replaced per study member.
#[derive(Clone, Debug)]
pub enum SearchSpec {
    Ca(CaSearch),
    Ann(AnnSearch),
}

impl SearchSpec {
    fn run(&self, seed: u64) -> Result<SearchReport> {
        match self {
            SearchSpec::Ca(s) => ca_rule_search(&CaSearch { seed, ..s.clone() }, 1),
            SearchSpec::Ann(s) => ann_search(&AnnSearch { seed, ..s.clone() }, 1),
        }
    }
}

/// Reports of a multi-seed study, ordered by seed index.
#[derive(Clone, PartialEq, Debug)]
pub struct StudySummary {
    pub master_seed: u64,
    pub reports: Vec<SearchReport>,
}

impl StudySummary {
    pub fn median_iterations(&self) -> f64 {
        let mut its: Vec<u64> = self.reports.iter().map(|r| r.iterations).collect();
        its.sort_unstable();
        let n = its.len();
        if n == 0 {
            return 0.0;
        }
        if n % 2 == 1 {
            its[n / 2] as f64
        } else {
            (its[n / 2 - 1] + its[n / 2]) as f64 / 2.0
        }
    }

    pub fn pass_count(&self) -> usize {
        self.reports.iter().filter(|r| r.terminated).count()
    }

    pub fn pass_rate(&self) -> f64 {
        self.pass_count() as f64 / self.reports.len().max(1) as f64
    }

    /// Terminated runs whose iteration count is strictly below `limit`.
    pub fn terminated_below(&self, limit: u64) -> usize {
        self.reports
            .iter()
            .filter(|r| r.terminated && r.iterations < limit)
            .count()
    }

    /// Runs whose reported candidate matches the target everywhere.
    pub fn exact_matches(&self) -> usize {
        self.reports.iter().filter(|r| r.is_exact()).count()
    }
}

/// Runs `spec` once per derived seed. With more than one worker, seeds run
/// concurrently; results are identical either way.
pub fn multi_seed_study(
    spec: &SearchSpec,
    master_seed: u64,
    n_seeds: usize,
    workers: usize,
) -> Result<StudySummary> {
    if n_seeds == 0 {
        return Err(Error::OutOfRange {
            value: 0,
            min: 1,
            max: i64::MAX,
        });
    }
    let seeds: Vec<u64> = (0..n_seeds as u64).map(|k| derive_seed(master_seed, k)).collect();
    let reports = if workers <= 1 {
        seeds.iter().map(|&s| spec.run(s)).collect::<Result<Vec<_>>>()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool")
            .install(|| seeds.par_iter().map(|&s| spec.run(s)).collect::<Result<Vec<_>>>())?
    };
    Ok(StudySummary {
        master_seed,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_seed_study_is_that_search() {
        let spec = SearchSpec::Ca(CaSearch::standard(0));
        let study = multi_seed_study(&spec, 11, 1, 1).unwrap();
        let direct = ca_rule_search(&CaSearch::standard(derive_seed(11, 0)), 1).unwrap();
        assert_eq!(study.reports, vec![direct.clone()]);
        assert_eq!(study.median_iterations(), direct.iterations as f64);
    }

    #[test]
    fn zero_seeds_rejected() {
        let spec = SearchSpec::Ca(CaSearch::standard(0));
        assert!(multi_seed_study(&spec, 0, 0, 1).is_err());
    }
}
