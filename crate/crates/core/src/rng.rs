//! Seeded randomness for measurement sampling.
//!
//! Every shot draws from its own ChaCha8 stream: the key comes from
//! `ChaCha8Rng::seed_from_u64(seed)` and the 64-bit stream id is the shot
//! index. Shots are therefore independent of execution order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Identifier recorded in run results so shot sequences can be reproduced.
pub const RNG_ID: &str = "chacha8-seed_from_u64-stream_per_shot-v1";

pub type ShotRng = ChaCha8Rng;

/// Generator for shot `shot` of a run seeded with `seed`.
pub fn shot_rng(seed: u64, shot: u64) -> ShotRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    rng
}
