//! Seeded random substreams.
//!
//! Every consumer of randomness derives its own generator from a root seed and
//! a tag path (matrix id, trial index, ...). Results are therefore independent
//! of evaluation order and of the worker-pool size.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub const TAG_SAMPLE: u64 = 0x5341_4d50;
pub const TAG_TRIAL: u64 = 0x5452_4941;
pub const TAG_SHOTS: u64 = 0x5348_4f54;
pub const TAG_MATRIX: u64 = 0x4d41_5458;
pub const TAG_REFINE: u64 = 0x5245_4649;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a seed and tag path into a single 64-bit key.
pub fn derive_seed(seed: u64, tags: &[u64]) -> u64 {
    let mut state = seed;
    let mut acc = splitmix64(&mut state);
    for &t in tags {
        state ^= t.wrapping_mul(0xd6e8_feb8_6659_fd93).rotate_left(17) ^ acc;
        acc = splitmix64(&mut state);
    }
    acc
}

pub fn substream(seed: u64, tags: &[u64]) -> Rng {
    let mut state = derive_seed(seed, tags);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}
