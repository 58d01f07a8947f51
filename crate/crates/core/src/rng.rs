//! Deterministic random streams.
//!
//! Every random draw in the crate is keyed by `(seed, stream)` so that a
//! sample can be regenerated independently of the order in which samples
//! are processed. Parallel and serial runs therefore agree bit for bit.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for the sample with the given index under `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Mixes several keys into one stream id (splitmix64 finalizer).
pub fn mix(keys: &[u64]) -> u64 {
    let mut h: u64 = 0x9e37_79b9_7f4a_7c15;
    for &k in keys {
        h ^= k
            .wrapping_add(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(h << 6)
            .wrapping_add(h >> 2);
        h = (h ^ (h >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        h = (h ^ (h >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        h ^= h >> 31;
    }
    h
}
