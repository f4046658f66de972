//! Deterministic seeded randomness for the trial loops. Every sampler takes
//! an explicit `u64` seed; per-trial streams are derived so trials can run
//! concurrently without sharing state.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactla::{rat, Rat};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index.wrapping_add(1));
    r
}

/// Uniform integer in `[-9, 9]`, the coordinate distribution of every
/// random point drawn in the crate.
pub fn small_int(rng: &mut impl Rng) -> i64 {
    rng.gen_range(-9..=9)
}

#[cfg_attr(not(test), allow(dead_code))]
pub fn small_nonzero_int(rng: &mut impl Rng) -> i64 {
    loop {
        let x = small_int(rng);
        if x != 0 {
            return x;
        }
    }
}

pub fn small_rat_vec(rng: &mut impl Rng, len: usize) -> Vec<Rat> {
    (0..len).map(|_| rat(small_int(rng))).collect()
}
