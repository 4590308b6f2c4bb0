//! Deterministic, splittable random source.
//!
//! The generator is counter-based: raw output `k` of a stream is
//! `mix64(origin + (k + 1) * GOLDEN_GAMMA)`, where `mix64` is the SplitMix64
//! finalizer and `origin` is derived from the `(seed, stream_id)` pair by
//!
//! ```text
//! origin = mix64(seed ^ SEED_SALT) ^ mix64(stream_id ^ STREAM_SALT)
//! ```
//!
//! Everything is fixed-width integer arithmetic, so identical `(seed,
//! stream_id)` pairs produce identical output sequences on every platform.
//! `mix64` and `x ^ SALT` are bijections on `u64`, so for a fixed seed two
//! distinct stream ids have distinct origins and therefore already differ in
//! their first output: streams never share a prefix.
//!
//! Substreams are derived the same way:
//! `child_stream_id = mix64(stream_id ^ mix64(index ^ CHILD_SALT))`, which is
//! injective in `index` for a fixed parent. Monte Carlo drivers use this to
//! give every sample its own stream, making results independent of shard
//! layout and execution order.

use crate::math;

/// Weyl-sequence increment of SplitMix64 (odd, hence a bijection `k -> k*g`).
const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const SEED_SALT: u64 = 0xB5AD_4ECE_DA1C_E2A9;
const STREAM_SALT: u64 = 0x2545_F491_4F6C_DD1D;
const CHILD_SALT: u64 = 0x27D4_EB2F_1656_67C5;

/// SplitMix64 finalizer: a bijective avalanche mix of a 64-bit word.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Identifies one deterministic random stream: a seed plus a shard index.
///
/// `RngState` is a value, not a generator; it can be copied freely and turned
/// into any number of identical [`StreamRng`] instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngState {
    seed: u64,
    stream_id: u64,
}

impl RngState {
    /// Stream 0 of the given seed.
    pub const fn new(seed: u64) -> Self {
        RngState { seed, stream_id: 0 }
    }

    /// An explicit `(seed, stream_id)` pair.
    pub const fn with_stream(seed: u64, stream_id: u64) -> Self {
        RngState { seed, stream_id }
    }

    pub const fn seed(&self) -> u64 {
        self.seed
    }

    pub const fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Child stream `index` of this stream (see the module docs for the
    /// derivation). Children with distinct indices never share a prefix.
    #[must_use]
    pub fn substream(&self, index: u64) -> Self {
        RngState {
            seed: self.seed,
            stream_id: mix64(self.stream_id ^ mix64(index ^ CHILD_SALT)),
        }
    }

    /// Sequential view of this stream, starting from its first output.
    pub fn stream(&self) -> StreamRng {
        StreamRng {
            state: mix64(self.seed ^ SEED_SALT) ^ mix64(self.stream_id ^ STREAM_SALT),
            gauss_cache: None,
        }
    }
}

/// Sequential generator over one stream.
#[derive(Debug, Clone)]
pub struct StreamRng {
    state: u64,
    gauss_cache: Option<f64>,
}

impl StreamRng {
    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in `[0, 1)` with 53 random mantissa bits.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `(0, 1]`; safe as a logarithm argument.
    #[inline]
    pub fn next_open_f64(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal draw (Box-Muller; the paired value is cached).
    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(z) = self.gauss_cache.take() {
            return z;
        }
        let r = math::sqrt(-2.0 * math::ln(self.next_open_f64()));
        let theta = 2.0 * core::f64::consts::PI * self.next_f64();
        self.gauss_cache = Some(r * math::sin(theta));
        r * math::cos(theta)
    }

    /// Uniform integer in `[0, bound)` by rejection-free multiply-shift.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }
}
