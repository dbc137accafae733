//! Reproducible draws for seeded trials.
//!
//! The generator is SplitMix64 with its state initialised to the seed:
//! each draw adds `0x9e3779b97f4a7c15` to the state and returns the
//! standard mixing of the new state. A residue modulo `m` is `draw % m`.

use rand_core::{RngCore, SeedableRng};
pub use rand_xoshiro::SplitMix64;

pub fn seeded(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Uniform-ish residue in `0..m` (modulo bias is below `m / 2^64`).
pub fn below(rng: &mut SplitMix64, m: u64) -> u64 {
    rng.next_u64() % m
}

/// Integer in `lo..=hi`.
pub fn in_range(rng: &mut SplitMix64, lo: i64, hi: i64) -> i64 {
    lo + below(rng, (hi - lo + 1) as u64) as i64
}
