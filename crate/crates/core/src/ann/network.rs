use rand::Rng;

use super::neuron::{perceptron_update, threshold_activation, weighted_sum};
use super::{LayeredTopology, WeightAssignment};
use crate::metamodel::{compose_system, MetastableSystem, MilieuMatrix, Neighbor};
use crate::{Bit, EntityTuple, Error, Result, UpdateFunction};

/// Threshold neuron: weighted sum of the milieu followed by the step
/// activation. Entities without a milieu (the input layer) hold their state.
#[derive(Clone, Copy, Debug, Default)]
pub struct ThresholdUnit;

impl UpdateFunction for ThresholdUnit {
    type State = Bit;
    type Params = WeightAssignment;

    fn arity(&self) -> usize {
        3
    }

    fn admits_degree(&self, degree: usize) -> bool {
        degree == 3 || degree == 0
    }

    fn actualize(&self, params: &WeightAssignment, milieu: &mut MilieuMatrix) -> Result<()> {
        if params.len() != milieu.edge_count() {
            return Err(Error::IncompleteParameters(format!(
                "expected {} weights, got {}",
                milieu.edge_count(),
                params.len()
            )));
        }
        milieu.weights_mut().copy_from_slice(params.as_slice());
        Ok(())
    }

    #[inline]
    fn apply(&self, _params: &WeightAssignment, own: Bit, milieu: &[Neighbor<Bit>]) -> Bit {
        if milieu.is_empty() {
            return own;
        }
        threshold_activation(weighted_sum(
            milieu.iter().map(|n| (n.weight, n.state.as_f64())),
        ))
    }
}

/// Perceptron training settings.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct LearningParams {
    rate: f64,
    epochs: u32,
}

impl LearningParams {
    pub const DEFAULT_RATE: f64 = 0.1;
    pub const DEFAULT_EPOCHS: u32 = 10;

    pub fn new(rate: f64, epochs: u32) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::InvalidLearningRate(rate));
        }
        Ok(Self { rate, epochs })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn epochs(&self) -> u32 {
        self.epochs
    }
}

impl Default for LearningParams {
    fn default() -> Self {
        Self {
            rate: Self::DEFAULT_RATE,
            epochs: Self::DEFAULT_EPOCHS,
        }
    }
}

/// A metastable layered network together with its topology.
#[derive(Clone, Debug)]
pub struct Network {
    topology: LayeredTopology,
    system: MetastableSystem<ThresholdUnit>,
}

/// Builds a network with weights drawn uniformly from `[0, 1)` and all
/// neuron states at zero.
pub fn build_ann<R: Rng + ?Sized>(topology: LayeredTopology, rng: &mut R) -> Network {
    let weights = WeightAssignment::new(
        (0..topology.weight_count())
            .map(|_| rng.random::<f64>())
            .collect(),
    );
    Network::with_weights(topology, weights).expect("weight count matches topology")
}

impl Network {
    pub fn with_weights(topology: LayeredTopology, weights: WeightAssignment) -> Result<Self> {
        let system = compose_system(topology.entity_count(), topology.milieu(), ThresholdUnit)?
            .parameterize(EntityTuple::filled(topology.entity_count(), Bit::Zero), weights)?;
        Ok(Self { topology, system })
    }

    pub fn topology(&self) -> &LayeredTopology {
        &self.topology
    }

    pub fn metastable(&self) -> &MetastableSystem<ThresholdUnit> {
        &self.system
    }

    /// Current weights, reflecting any training.
    pub fn weights(&self) -> WeightAssignment {
        WeightAssignment::new(self.system.milieu().weights().to_vec())
    }

    /// States of one layer.
    pub fn layer(&self, depth: usize) -> EntityTuple<Bit> {
        let start = self.topology.index(depth, 0);
        self.system.entities().as_slice()[start..start + self.topology.width()]
            .iter()
            .copied()
            .collect()
    }

    /// Clamps `input` onto the input layer and settles the network. Returns
    /// the output layer.
    pub fn forward(&mut self, input: &EntityTuple<Bit>) -> Result<EntityTuple<Bit>> {
        let width = self.topology.width();
        if input.len() != width {
            return Err(Error::LengthMismatch {
                expected: width,
                actual: input.len(),
            });
        }
        self.system.states_mut()[..width].copy_from_slice(input.as_slice());
        self.system.advance(self.topology.layers());
        Ok(self.layer(self.topology.layers()))
    }

    /// Every layer from input to output after a forward pass.
    pub fn forward_layers(&mut self, input: &EntityTuple<Bit>) -> Result<Vec<EntityTuple<Bit>>> {
        self.forward(input)?;
        Ok((0..=self.topology.layers()).map(|d| self.layer(d)).collect())
    }

    /// Perceptron training of the connections into the output layer; all
    /// earlier weights stay as they are. Each epoch runs a forward pass and
    /// then updates every output neuron against its target bit.
    pub fn train(
        &mut self,
        input: &EntityTuple<Bit>,
        target: &EntityTuple<Bit>,
        lp: LearningParams,
    ) -> Result<()> {
        let width = self.topology.width();
        if target.len() != width {
            return Err(Error::LengthMismatch {
                expected: width,
                actual: target.len(),
            });
        }
        for _ in 0..lp.epochs() {
            let output = self.forward(input)?;
            if output == *target {
                // zero error everywhere: further epochs cannot change anything
                break;
            }
            for column in 0..width {
                let desired = target[column];
                let actual = output[column];
                if desired == actual {
                    continue;
                }
                let neuron = self.topology.index(self.topology.layers(), column);
                let sources: [usize; 3] = self
                    .system
                    .milieu()
                    .row_targets(neuron)
                    .try_into()
                    .expect("computed neurons have three inputs");
                let incoming = sources.map(|s| self.system.entities()[s]);
                let weights = self.system.milieu_mut().row_weights_mut(neuron);
                for (w, a_i) in weights.iter_mut().zip(incoming) {
                    *w = perceptron_update(*w, lp.rate(), desired, actual, a_i);
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bits(s: &str) -> EntityTuple<Bit> {
        crate::ca::parse_state_string(s).unwrap()
    }

    #[test]
    fn zero_input_gives_zero_output() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut net = build_ann(LayeredTopology::standard(), &mut rng);
        let out = net.forward(&EntityTuple::filled(31, Bit::Zero)).unwrap();
        assert_eq!(out.count_ones(), 0);
    }

    #[test]
    fn same_seed_same_weights() {
        let a = build_ann(LayeredTopology::standard(), &mut ChaCha8Rng::seed_from_u64(9));
        let b = build_ann(LayeredTopology::standard(), &mut ChaCha8Rng::seed_from_u64(9));
        let c = build_ann(LayeredTopology::standard(), &mut ChaCha8Rng::seed_from_u64(10));
        assert_eq!(a.weights(), b.weights());
        assert_ne!(a.weights(), c.weights());
        assert!(a.weights().as_slice().iter().all(|w| (0.0..1.0).contains(w)));
    }

    #[test]
    fn center_copy_is_identity() {
        let t = LayeredTopology::new(31, 1).unwrap();
        let w = WeightAssignment::from_fn(&t, |_, _, off| if off == 0 { 1.0 } else { 0.0 });
        let mut net = Network::with_weights(t, w).unwrap();
        let input = bits("0110100111010001110101100101101");
        assert_eq!(net.forward(&input).unwrap(), input);
    }

    #[test]
    fn input_length_checked() {
        let mut net = build_ann(LayeredTopology::standard(), &mut ChaCha8Rng::seed_from_u64(0));
        assert!(matches!(
            net.forward(&EntityTuple::filled(30, Bit::Zero)),
            Err(Error::LengthMismatch { expected: 31, actual: 30 })
        ));
    }

    #[test]
    fn one_epoch_raises_all_active_weights() {
        // Every weight 0.1: a single active column never reaches 0.5, so
        // nothing past the input layer fires except where three ones meet.
        let t = LayeredTopology::new(3, 1).unwrap();
        let mut net = Network::with_weights(t, WeightAssignment::from_fn(&t, |_, _, _| 0.1)).unwrap();
        let input = bits("111");
        let target = bits("111");
        assert_eq!(net.forward(&input).unwrap(), bits("000"));
        net.train(&input, &target, LearningParams::new(0.2, 1).unwrap()).unwrap();
        for w in net.weights().as_slice() {
            assert_eq!(*w, 0.1 + 0.2);
        }
    }

    #[test]
    fn zero_epochs_is_identity() {
        let mut net = build_ann(LayeredTopology::standard(), &mut ChaCha8Rng::seed_from_u64(1));
        let before = net.weights();
        let input = bits("0000000000000001000000000000000");
        let target = bits("1101011001111101000000000000000");
        net.train(&input, &target, LearningParams::new(0.1, 0).unwrap()).unwrap();
        assert_eq!(net.weights(), before);
    }

    #[test]
    fn learning_rate_must_be_positive() {
        assert!(LearningParams::new(0.0, 1).is_err());
        assert!(LearningParams::new(f64::NAN, 1).is_err());
        assert!(LearningParams::new(-0.1, 1).is_err());
    }

    #[test]
    fn wrong_weight_count() {
        let t = LayeredTopology::new(3, 1).unwrap();
        assert!(matches!(
            Network::with_weights(t, WeightAssignment::new(vec![0.5; 8])),
            Err(Error::IncompleteParameters(_))
        ));
    }
}
