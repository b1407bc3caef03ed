use crate::{EntityTuple, Error, Result, State};

/// Pass/fail rule for comparing a candidate output with a target: at least
/// `ceil(threshold * width)` positions must agree.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct MatchCriterion {
    threshold: f64,
    width: usize,
}

impl MatchCriterion {
    pub fn new(threshold: f64, width: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&threshold) {
            return Err(Error::InvalidThreshold(threshold));
        }
        Ok(Self { threshold, width })
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Smallest passing number of matching positions. The product is nudged
    /// down by 1e-9 before rounding up so that e.g. `0.9 * 10` stays 9.
    pub fn min_matches(&self) -> usize {
        (self.threshold * self.width as f64 - 1e-9).ceil().max(0.0) as usize
    }

    pub fn passes(&self, matches: usize) -> bool {
        matches >= self.min_matches()
    }
}

/// Number of positions at which `a` and `b` hold equal states.
pub fn count_matches<S: State>(a: &EntityTuple<S>, b: &EntityTuple<S>) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(a.iter().zip(b.iter()).filter(|(x, y)| x == y).count())
}

pub fn match_fraction<S: State>(a: &EntityTuple<S>, b: &EntityTuple<S>) -> Result<f64> {
    let matches = count_matches(a, b)?;
    Ok(if a.is_empty() {
        1.0
    } else {
        matches as f64 / a.len() as f64
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{standard_initial, standard_target};

    #[test]
    fn ceiling_semantics() {
        let c = MatchCriterion::new(0.9, 31).unwrap();
        assert_eq!(c.min_matches(), 28);
        assert!(c.passes(28));
        assert!(!c.passes(27));
        assert_eq!(MatchCriterion::new(0.9, 10).unwrap().min_matches(), 9);
        assert_eq!(MatchCriterion::new(1.0, 31).unwrap().min_matches(), 31);
        assert_eq!(MatchCriterion::new(0.0, 31).unwrap().min_matches(), 0);
        assert!(MatchCriterion::new(1.1, 31).is_err());
    }

    #[test]
    fn fractions() {
        let t = standard_target();
        assert_eq!(match_fraction(&t, &t).unwrap(), 1.0);
        assert_eq!(match_fraction(&t, &t.complement()).unwrap(), 0.0);
        assert_eq!(count_matches(&standard_initial(), &t).unwrap(), 21);
        assert_eq!(match_fraction(&standard_initial(), &t).unwrap(), 21.0 / 31.0);
        let short = EntityTuple::filled(30, crate::Bit::Zero);
        assert!(matches!(
            match_fraction(&t, &short),
            Err(Error::LengthMismatch { expected: 31, actual: 30 })
        ));
    }
}
