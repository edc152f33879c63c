//! Seeded sampling.
//!
//! Every sampled stream derives item `i` from `(seed, i)` alone through
//! ChaCha8, so results do not depend on consumption order or platform.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub type SampleRng = ChaCha8Rng;

/// Generator for item `index` of the stream identified by `seed`.
pub fn rng_for(seed: u64, index: u64) -> SampleRng {
    let mut rng = SampleRng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform integer in `[0, bound)`; `bound` must be positive.
pub fn below(rng: &mut SampleRng, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    let zone = u64::MAX - (u64::MAX % bound);
    loop {
        let v = rng.next_u64();
        if v < zone {
            return v % bound;
        }
    }
}
