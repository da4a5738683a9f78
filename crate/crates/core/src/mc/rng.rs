//! Reproducible per-trial random streams.
//!
//! The generator contract is frozen: ChaCha with 8 rounds (the
//! `rand_chacha` implementation), keyed by the 64-bit run seed expanded
//! through `SeedableRng::seed_from_u64`, with the ChaCha stream id set to
//! the trial index. Every trial therefore owns an independent,
//! position-zero keystream that can be regenerated from `(seed, trial)`
//! alone, so any partition of the trial space across workers draws
//! identical numbers.
//!
//! Uniform integers in `[1, n]` come from 64-bit draws with rejection of
//! the biased top segment (no modulo bias). Draw order inside a trial is
//! point-major, coordinate-minor.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independent stream for one trial of one seeded run.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform draw from `[1, n]` by rejection: accept a 64-bit word `v` only
/// below the largest multiple of `n`, then reduce.
pub fn uniform_1_to_n(rng: &mut ChaCha8Rng, n: u64) -> u64 {
    debug_assert!(n >= 1);
    let usable: u128 = ((1u128 << 64) / n as u128) * n as u128;
    loop {
        let v = rng.next_u64();
        if (v as u128) < usable {
            return v % n + 1;
        }
    }
}
