use super::RuleTable;
use crate::metamodel::{compose_system, MetastableSystem, MilieuBuilder, MilieuMatrix, Neighbor};
use crate::{Bit, EntityTuple, Error, Result, System, UpdateFunction};

/// Narrowest ring on which every cell has distinct left and right neighbours.
pub const MIN_WIDTH: usize = 3;

/// Lattice shape. Only the periodic boundary is supported.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CaConfig {
    width: usize,
}

impl CaConfig {
    pub fn new(width: usize) -> Result<Self> {
        if width < MIN_WIDTH {
            return Err(Error::WidthTooSmall(width));
        }
        Ok(Self { width })
    }

    pub fn width(&self) -> usize {
        self.width
    }
}

/// Rule-table lookup over a `(left, self, right)` milieu.
#[derive(Clone, Copy, Debug, Default)]
pub struct ElementaryRule;

impl UpdateFunction for ElementaryRule {
    type State = Bit;
    type Params = RuleTable;

    fn arity(&self) -> usize {
        3
    }

    #[inline]
    fn apply(&self, table: &RuleTable, _own: Bit, milieu: &[Neighbor<Bit>]) -> Bit {
        table.lookup(milieu[0].state, milieu[1].state, milieu[2].state)
    }
}

pub type CaSystem = MetastableSystem<ElementaryRule>;

/// Ring milieu: row `i` is `(i-1, i, i+1)` modulo `width`, unit weights.
pub fn ring_milieu(width: usize) -> MilieuMatrix {
    let mut b = MilieuBuilder::new(width);
    for i in 0..width {
        for j in [(i + width - 1) % width, i, (i + 1) % width] {
            b.connect(i, j, 1.0).expect("ring indices are in range");
        }
    }
    b.build()
}

/// The virtual-regime CA: ring structure plus rule-lookup operation.
pub fn ca_system(cfg: CaConfig) -> System<ElementaryRule> {
    compose_system(cfg.width, ring_milieu(cfg.width), ElementaryRule)
        .expect("ring rows have degree 3")
}

/// Builds a ready-to-run CA from a rule table and initial cells.
pub fn build_ca(cfg: CaConfig, table: RuleTable, initial: EntityTuple<Bit>) -> Result<CaSystem> {
    ca_system(cfg).parameterize(initial, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::{format_state, parse_state_string, rule_from_number};

    const SEED: &str = "0000000000000001000000000000000";

    fn rule(n: i64) -> RuleTable {
        rule_from_number(n).unwrap()
    }

    #[test]
    fn width_below_three_rejected() {
        assert_eq!(CaConfig::new(2), Err(Error::WidthTooSmall(2)));
        assert!(CaConfig::new(3).is_ok());
    }

    #[test]
    fn first_step_of_rule_110() {
        let mut ca = build_ca(CaConfig::new(31).unwrap(), rule(110), parse_state_string(SEED).unwrap()).unwrap();
        ca.step();
        let ones: Vec<usize> = (0..31).filter(|&i| ca.entities()[i].is_one()).collect();
        assert_eq!(ones, vec![14, 15]);
    }

    #[test]
    fn ring_of_three_ones_dies_under_110() {
        let mut ca = build_ca(CaConfig::new(3).unwrap(), rule(110), parse_state_string("111").unwrap()).unwrap();
        ca.step();
        assert_eq!(format_state(ca.entities()), "000");
    }

    #[test]
    fn length_mismatch() {
        let err = build_ca(CaConfig::new(31).unwrap(), rule(110), EntityTuple::filled(30, Bit::Zero)).unwrap_err();
        assert_eq!(err, Error::LengthMismatch { expected: 31, actual: 30 });
    }

    #[test]
    fn rule_zero_on_zero_state_is_valid() {
        let mut ca = build_ca(CaConfig::new(31).unwrap(), rule(0), EntityTuple::filled(31, Bit::Zero)).unwrap();
        assert_eq!(ca.run(3).last().count_ones(), 0);
    }

    #[test]
    fn milieu_order_is_left_self_right() {
        let ca = build_ca(CaConfig::new(31).unwrap(), rule(110), EntityTuple::filled(31, Bit::Zero)).unwrap();
        let idx = |i| ca.milieu_of(i).unwrap().iter().map(|n| n.index).collect::<Vec<_>>();
        assert_eq!(idx(0), vec![30, 0, 1]);
        assert_eq!(idx(15), vec![14, 15, 16]);
        assert_eq!(idx(30), vec![29, 30, 0]);
        assert!(ca.milieu_of(0).unwrap().iter().all(|n| n.weight == 1.0));
    }
}
