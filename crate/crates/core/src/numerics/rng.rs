use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// A seedable, platform-independent stream of uniform reals.
///
/// Backed by ChaCha8, a counter-based generator: the 64-bit seed is expanded
/// to the key with `SeedableRng::seed_from_u64`, and independent shards use
/// the ChaCha stream id, so shard `k` of seed `s` is reproducible without
/// touching any other shard. A draw takes the top 53 bits of one 64-bit word.
#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    shard: u64,
    position: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        Self::shard(seed, 0)
    }

    /// The `index`-th independent stream derived from `seed`.
    pub fn shard(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self { seed, shard: index, position: 0, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn shard_index(&self) -> u64 {
        self.shard
    }

    /// Number of values drawn so far.
    pub fn position(&self) -> u64 {
        self.position
    }

    /// Uniform value on `[0, 1)` with 53 random bits.
    pub fn next_unit(&mut self) -> f64 {
        self.position += 1;
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform value on `[lo, hi)`.
    pub fn next_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        debug_assert!(lo < hi);
        let v = lo + (hi - lo) * self.next_unit();
        // Rounding in the affine map can land exactly on `hi`.
        if v >= hi {
            lo.max(hi - (hi - lo) * f64::EPSILON)
        } else {
            v
        }
    }
}
