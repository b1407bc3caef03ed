//! Locally connected multilayer feedforward networks built on the metamodel.
//!
//! Neurons are entities laid out layer by layer. Each neuron past the input
//! layer listens to the three nearest neurons of the previous layer (columns
//! wrap around), and the connection weights live in the milieu matrix.
//! Because every layer only reads the one before it, `layers` synchronous
//! steps of the metastable system settle a full forward pass.

mod network;
mod neuron;
mod topology;
mod weights;

pub use network::{build_ann, LearningParams, Network, ThresholdUnit};
pub use neuron::{input_sum, perceptron_update, threshold_activation, ACTIVATION_THRESHOLD};
pub use topology::LayeredTopology;
pub use weights::WeightAssignment;
