#![allow(dead_code)]

pub mod golden;
pub mod oracles;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Seed from `DERIVLAB_SEED`, or a fixed default.
pub fn seed() -> u64 {
    std::env::var("DERIVLAB_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed())
}
