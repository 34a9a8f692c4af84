//! Reproducible randomness.
//!
//! All seeded procedures use ChaCha8 (`rand_chacha`), a portable generator
//! whose output does not depend on platform or word size. Per-step streams
//! are derived from one user seed with `set_stream(step)`, so step `t` of a
//! run draws the same numbers regardless of how many draws earlier steps
//! made.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `step` under `seed`.
pub fn step_stream(seed: u64, step: u64) -> Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(step);
    r
}
