//! Seeded randomness.
//!
//! Every random choice in the crate draws from ChaCha8 seeded with
//! `ChaCha8Rng::seed_from_u64`, so a seed pins the whole run on every
//! platform.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for a labelled sub-task.
pub fn substream(seed: u64, label: u64) -> ChaCha8Rng {
    let mut s = seed ^ label.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    s = s.rotate_left(17) ^ label;
    ChaCha8Rng::seed_from_u64(s)
}
