//! Reproducible random streams.
//!
//! Every `(master seed, replicate, purpose)` triple maps to an independent
//! counter-based generator, so results do not depend on scheduling order and
//! replicates can run on any number of threads.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// What a derived stream is consumed for. Keeping purposes separate means a
/// policy change in one consumer can never shift another's draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamPurpose {
    /// The uniformly random first pull of an episode.
    InitArm,
    /// Reward noise for an episode.
    Rewards,
    /// Environment draws in random-configuration mode.
    ConfigDraw,
}

impl StreamPurpose {
    fn tag(self) -> u64 {
        match self {
            StreamPurpose::InitArm => 1,
            StreamPurpose::Rewards => 2,
            StreamPurpose::ConfigDraw => 3,
        }
    }
}

const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive the independent stream for one `(seed, replicate, purpose)` cell.
pub fn derive_stream(master_seed: u64, replicate: u64, purpose: StreamPurpose) -> ChaCha8Rng {
    let mut state = master_seed;
    let a = splitmix64(&mut state);
    state ^= replicate;
    let b = splitmix64(&mut state);
    state ^= purpose.tag();
    let mut seed = [0u8; 32];
    seed[0..8].copy_from_slice(&a.to_le_bytes());
    seed[8..16].copy_from_slice(&b.to_le_bytes());
    seed[16..24].copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    seed[24..32].copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    ChaCha8Rng::from_seed(seed)
}
