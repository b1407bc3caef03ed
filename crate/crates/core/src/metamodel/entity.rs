use std::fmt;
use std::ops::Index;

use crate::{Error, Result};

/// A value an entity can hold. Equality must be decidable so traces can be
/// compared and match metrics computed.
pub trait State: Copy + Eq + fmt::Debug + Send + Sync + 'static {}

impl<T: Copy + Eq + fmt::Debug + Send + Sync + 'static> State for T {}

/// Binary state domain shared by both shipped models.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub enum Bit {
    #[default]
    Zero,
    One,
}

impl Bit {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Bit::One
        } else {
            Bit::Zero
        }
    }

    pub fn is_one(self) -> bool {
        self == Bit::One
    }

    /// Activation value used when a bit enters a weighted sum.
    pub fn as_f64(self) -> f64 {
        match self {
            Bit::Zero => 0.0,
            Bit::One => 1.0,
        }
    }

    pub fn as_u8(self) -> u8 {
        self as u8
    }

    pub fn complement(self) -> Self {
        match self {
            Bit::Zero => Bit::One,
            Bit::One => Bit::Zero,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Bit::Zero => '0',
            Bit::One => '1',
        }
    }
}

impl TryFrom<u8> for Bit {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        match value {
            0 => Ok(Bit::Zero),
            1 => Ok(Bit::One),
            _ => Err(Error::NonBinaryState { value, position: 0 }),
        }
    }
}

impl From<Bit> for u8 {
    fn from(b: Bit) -> u8 {
        b.as_u8()
    }
}

/// Ordered, fixed-length collection of entity states. Index 0 is the first
/// entity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct EntityTuple<S>(Vec<S>);

impl<S: State> EntityTuple<S> {
    pub fn new(states: Vec<S>) -> Self {
        Self(states)
    }

    pub fn filled(len: usize, state: S) -> Self {
        Self(vec![state; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<S> {
        self.0.get(i).copied()
    }

    pub fn as_slice(&self) -> &[S] {
        &self.0
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = S> + '_ {
        self.0.iter().copied()
    }

    pub fn into_vec(self) -> Vec<S> {
        self.0
    }

    /// Cyclic rotation: entity `i` of the result is entity `(i + k) mod len`
    /// of `self`.
    pub fn rotated_left(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let n = v.len();
            v.rotate_left(k % n);
        }
        Self(v)
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [S] {
        &mut self.0
    }
}

impl EntityTuple<Bit> {
    /// Builds a binary tuple from raw 0/1 bytes.
    pub fn from_bits(raw: &[u8]) -> Result<Self> {
        raw.iter()
            .enumerate()
            .map(|(position, &value)| match value {
                0 => Ok(Bit::Zero),
                1 => Ok(Bit::One),
                _ => Err(Error::NonBinaryState { value, position }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|b| b.is_one()).count()
    }

    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|b| b.complement()).collect())
    }
}

impl<S> Index<usize> for EntityTuple<S> {
    type Output = S;

    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S> FromIterator<S> for EntityTuple<S> {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<S> From<Vec<S>> for EntityTuple<S> {
    fn from(v: Vec<S>) -> Self {
        Self(v)
    }
}

impl fmt::Display for EntityTuple<Bit> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{}", b.as_char())?;
        }
        Ok(())
    }
}
