//! Seed derivation.
//!
//! Every random stream in the crate is a `ChaCha8Rng` seeded through
//! `rand_core`'s `seed_from_u64`. Seeds for sub-streams are derived from a
//! parent seed and a list of integer tags with the SplitMix64 finalizer, so
//! a stream is fully identified by `(master_seed, tags...)` regardless of
//! how work is scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function. A bijection on `u64`.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of episode `episode_index` under `master_seed`.
///
/// `splitmix64(master ^ splitmix64(index))` is a bijection in each argument
/// with the other held fixed, so distinct indices (or distinct masters)
/// never collide.
pub fn derive_episode_seed(master_seed: u64, episode_index: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(episode_index))
}

/// Folds `tags` into `seed` one at a time.
pub fn derive_seed(seed: u64, tags: &[u64]) -> u64 {
    tags.iter().fold(seed, |acc, &tag| derive_episode_seed(acc, tag))
}

pub fn stream(seed: u64, tags: &[u64]) -> SimRng {
    SimRng::seed_from_u64(derive_seed(seed, tags))
}
