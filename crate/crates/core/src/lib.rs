//! A small metamodel engine for discrete complex systems.
//!
//! Models are assembled from three building blocks: an [`EntityTuple`] of
//! states, a [`MilieuMatrix`] describing which entities influence which (with
//! a weight per connection), and an [`UpdateFunction`] mapping an entity's own
//! state plus its milieu to its next state. Pairing structure with operation
//! gives a [`System`]; feeding a system initial states and concrete parameters
//! gives a [`MetastableSystem`] that can be stepped synchronously.
//!
//! Two instantiations ship with the crate:
//!
//! * [`ca`]: two-state, radius-one cellular automata on a periodic ring with
//!   Wolfram rule numbering.
//! * [`ann`]: locally connected multilayer feedforward networks with threshold
//!   units and the perceptron learning rule.
//!
//! The [`experiments`] module drives random-restart searches over both models
//! and an exhaustive census of all 256 elementary rules.

pub mod ann;
pub mod ca;
pub mod cli;
mod error;
pub mod experiments;
pub mod metamodel;

pub use error::{Error, Result};
pub use metamodel::{
    compose_system, Bit, EntityTuple, MetastableSystem, MilieuBuilder, MilieuMatrix, Neighbor,
    State, System, Trace, UpdateFunction,
};
