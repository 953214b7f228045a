//! Counter-based random streams.
//!
//! Every Monte Carlo trial owns a ChaCha key derived from `(seed, trial)`.
//! Independent quantities draw from distinct ChaCha stream ids under that
//! key, so the values a trial sees never depend on evaluation order or on
//! which worker thread runs it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream carrying the geometry and the per-RRH channel vectors.
pub const MAIN_STREAM: u64 = 0;

/// Stream id reserved for the inter-RRH matrix between UL RRH `ul` and DL RRH `dl`.
pub fn pair_stream(ul: usize, dl: usize) -> u64 {
    debug_assert!(ul < (1 << 31) && dl < (1 << 31));
    (1 << 63) | ((ul as u64) << 31) | dl as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialStreams {
    key: [u8; 32],
}

impl TrialStreams {
    pub fn new(seed: u64, trial: u64) -> Self {
        let mut state = seed ^ trial.wrapping_mul(0xD1B5_4A32_D192_ED03);
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        Self { key }
    }

    pub fn stream(&self, id: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(self.key);
        rng.set_stream(id);
        rng
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
