//! Seeded, splittable randomness.
//!
//! A search with seed `s` draws iteration `i`'s randomness from a ChaCha8
//! generator keyed by `seed_from_u64(s)` on stream `i`. Streams are
//! independent, so iterations can be evaluated in any order or in parallel.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Recorded in every report so results can be regenerated.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng(rand_chacha 0.9) key=seed_from_u64(seed) stream=iteration";

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Seed of the `index`-th member of a study with the given master seed
/// (SplitMix64 finalizer over a Weyl sequence). Kept to 63 bits so seeds
/// fit signed 64-bit integers in report files.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    (z ^ (z >> 31)) >> 1
}
