//! Model-agnostic building blocks: entities, milieus, update functions and
//! the system lifecycle. Nothing in here knows about concrete models.

mod entity;
mod milieu;
mod system;
mod update;

pub use entity::{Bit, EntityTuple, State};
pub use milieu::{MilieuBuilder, MilieuMatrix, Neighbor};
pub use system::{compose_system, MetastableSystem, System, Trace};
pub use update::{from_fn, FnUpdate, UpdateFunction};
