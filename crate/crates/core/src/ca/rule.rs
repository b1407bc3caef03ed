use crate::{Bit, Error, Result};

/// Number of distinct elementary rule tables.
pub const RULE_COUNT: usize = 256;

/// Truth table of an elementary rule. Entry `b` holds the output for the
/// neighbourhood whose `(left, center, right)` bits read as the binary
/// number `b`, so entry 7 is the `(1,1,1)` pattern.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RuleTable([Bit; 8]);

impl RuleTable {
    pub fn new(outputs: [Bit; 8]) -> Self {
        Self(outputs)
    }

    /// Builds a table from raw outputs indexed by pattern value. Anything
    /// other than exactly eight binary outputs is rejected.
    pub fn from_outputs(outputs: &[u8]) -> Result<Self> {
        if outputs.len() != 8 {
            return Err(Error::IncompleteParameters(format!(
                "rule table needs 8 outputs, got {}",
                outputs.len()
            )));
        }
        let mut table = [Bit::Zero; 8];
        for (position, (&value, slot)) in outputs.iter().zip(table.iter_mut()).enumerate() {
            *slot = match value {
                0 => Bit::Zero,
                1 => Bit::One,
                _ => return Err(Error::NonBinaryState { value, position }),
            };
        }
        Ok(Self(table))
    }

    pub fn outputs(&self) -> [Bit; 8] {
        self.0
    }

    #[inline]
    pub fn lookup(&self, left: Bit, center: Bit, right: Bit) -> Bit {
        let pattern = (left.as_u8() << 2) | (center.as_u8() << 1) | right.as_u8();
        self.0[pattern as usize]
    }

    pub fn number(&self) -> u8 {
        rule_to_number(self)
    }
}

/// Decodes a Wolfram rule number: bit `b` of `n` is the output for pattern
/// value `b`.
pub fn rule_from_number(n: i64) -> Result<RuleTable> {
    if !(0..=255).contains(&n) {
        return Err(Error::OutOfRange {
            value: n,
            min: 0,
            max: 255,
        });
    }
    let mut table = [Bit::Zero; 8];
    for (b, slot) in table.iter_mut().enumerate() {
        *slot = Bit::from_bool((n >> b) & 1 == 1);
    }
    Ok(RuleTable(table))
}

pub fn rule_to_number(table: &RuleTable) -> u8 {
    table
        .0
        .iter()
        .enumerate()
        .fold(0u8, |acc, (b, bit)| acc | (bit.as_u8() << b))
}

/// Local transition: output of `table` for the neighbourhood
/// `(left, center, right)`.
pub fn ca_transition(left: Bit, center: Bit, right: Bit, table: &RuleTable) -> Bit {
    table.lookup(left, center, right)
}

impl From<u8> for RuleTable {
    fn from(n: u8) -> Self {
        rule_from_number(n as i64).expect("every u8 is a rule number")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Bit::{One as I, Zero as O};

    #[test]
    fn rule_110_truth_table() {
        let t = rule_from_number(110).unwrap();
        let expected = [
            ((O, O, O), O),
            ((O, O, I), I),
            ((O, I, O), I),
            ((O, I, I), I),
            ((I, O, O), O),
            ((I, O, I), I),
            ((I, I, O), I),
            ((I, I, I), O),
        ];
        for ((l, c, r), out) in expected {
            assert_eq!(ca_transition(l, c, r, &t), out, "pattern {l:?}{c:?}{r:?}");
        }
        assert_eq!(rule_to_number(&t), 110);
    }

    #[test]
    fn extreme_rules() {
        assert!(rule_from_number(0).unwrap().outputs().iter().all(|b| *b == O));
        assert!(rule_from_number(255).unwrap().outputs().iter().all(|b| *b == I));
        assert_eq!(rule_to_number(&RuleTable::new([O; 8])), 0);
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(rule_from_number(256), Err(Error::OutOfRange { .. })));
        assert!(matches!(rule_from_number(-1), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn exhaustive_round_trip() {
        for k in 0..=255u8 {
            assert_eq!(rule_to_number(&rule_from_number(k as i64).unwrap()), k);
        }
    }

    #[test]
    fn from_outputs_requires_eight_entries() {
        assert!(matches!(
            RuleTable::from_outputs(&[0, 1, 1, 1]),
            Err(Error::IncompleteParameters(_))
        ));
        let t = RuleTable::from_outputs(&[0, 1, 1, 1, 0, 1, 1, 0]).unwrap();
        assert_eq!(t.number(), 110);
    }
}
