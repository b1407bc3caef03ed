use crate::{Bit, EntityTuple, Error, Result};

/// Parses a string of `'0'`/`'1'` characters; the leftmost character becomes
/// entity 0.
pub fn parse_state_string(s: &str) -> Result<EntityTuple<Bit>> {
    if s.is_empty() {
        return Err(Error::Empty);
    }
    s.chars()
        .enumerate()
        .map(|(position, ch)| match ch {
            '0' => Ok(Bit::Zero),
            '1' => Ok(Bit::One),
            _ => Err(Error::InvalidCharacter { ch, position }),
        })
        .collect()
}

pub fn format_state(e: &EntityTuple<Bit>) -> String {
    e.to_string()
}
