use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TWO_POW_MINUS_53: f64 = 1.0 / (1u64 << 53) as f64;
const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Seeded stream of uniforms on `[0, 1)`.
///
/// The generator is ChaCha8 keyed by `seed_from_u64(seed)`, and each uniform
/// is the top 53 bits of one 64-bit output scaled by `2^-53`. Both choices
/// are part of the output format: changing either changes every stream.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
    drawn: u64,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource { seed, rng: ChaCha8Rng::seed_from_u64(seed), drawn: 0 }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniforms consumed so far.
    pub fn drawn(&self) -> u64 {
        self.drawn
    }

    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.drawn += 1;
        (self.rng.next_u64() >> 11) as f64 * TWO_POW_MINUS_53
    }
}

/// Child seed for trial `index` of a run seeded with `seed`: the SplitMix64
/// finalizer applied to `seed + (index + 1) · 0x9E3779B97F4A7C15`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
