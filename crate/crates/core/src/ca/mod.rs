//! Two-state, radius-one cellular automata on a periodic ring.
//!
//! Cells are entities; each cell's milieu row is `(left, self, right)` with
//! unit weights, so row degree is 3 and the rule table is looked up in that
//! order.

mod model;
mod rule;
mod state_string;

pub use model::{build_ca, ca_system, ring_milieu, CaConfig, CaSystem, ElementaryRule, MIN_WIDTH};
pub use rule::{ca_transition, rule_from_number, rule_to_number, RuleTable, RULE_COUNT};
pub use state_string::{format_state, parse_state_string};
