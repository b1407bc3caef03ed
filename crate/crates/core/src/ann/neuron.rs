use crate::{Bit, Error, Result};

/// Input sums at or above this value fire.
pub const ACTIVATION_THRESHOLD: f64 = 0.5;

/// Weighted sum of incoming activations.
pub fn input_sum(weights: &[f64], activations: &[f64]) -> Result<f64> {
    if weights.len() != activations.len() {
        return Err(Error::LengthMismatch {
            expected: weights.len(),
            actual: activations.len(),
        });
    }
    Ok(weighted_sum(weights.iter().copied().zip(activations.iter().copied())))
}

#[inline]
pub(crate) fn weighted_sum(pairs: impl Iterator<Item = (f64, f64)>) -> f64 {
    pairs.fold(0.0, |acc, (w, a)| acc + w * a)
}

/// Step function: fires iff `in_j >= 0.5`, compared on the raw sum.
#[inline]
pub fn threshold_activation(in_j: f64) -> Bit {
    Bit::from_bool(in_j >= ACTIVATION_THRESHOLD)
}

/// Perceptron rule `w + r * (y - a_j) * a_i`.
#[inline]
pub fn perceptron_update(weight: f64, rate: f64, desired: Bit, actual: Bit, incoming: Bit) -> f64 {
    weight + rate * (desired.as_f64() - actual.as_f64()) * incoming.as_f64()
}
