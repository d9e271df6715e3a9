//! Seeded, platform-stable randomness.
//!
//! All stochastic machinery (Monte-Carlo shards, random rational parameter
//! points) flows through [`SeededRng`] so that a report is a pure function of
//! its seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{rat, GaussianRational, Rational};

/// Deterministic RNG: identical seed gives an identical stream on every
/// platform (ChaCha8 keystream, no OS entropy).
pub struct SeededRng(ChaCha8Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Stable per-shard seed derivation (SplitMix64 finalizer).
    pub fn shard_seed(seed: u64, shard: u64) -> u64 {
        let mut z = seed ^ shard.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.gen()
    }

    /// Uniform draw in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        // 53 random mantissa bits.
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller (deterministic, no cached spare).
    pub fn normal(&mut self) -> f64 {
        let mut u1 = self.uniform();
        if u1 <= 0.0 {
            u1 = f64::MIN_POSITIVE;
        }
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// Uniform integer in [lo, hi] inclusive.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.0.gen_range(lo..=hi)
    }

    /// Small random rational with numerator in [-bound, bound] and
    /// denominator in [1, den_bound], never a banned value.
    pub fn rational(&mut self, bound: i64, den_bound: i64) -> Rational {
        rat(self.int_in(-bound, bound), self.int_in(1, den_bound))
    }

    /// Random nonzero rational, avoiding the given denominators' poles.
    pub fn rational_avoiding(&mut self, bound: i64, den_bound: i64, banned: &[Rational]) -> Rational {
        loop {
            let r = self.rational(bound, den_bound);
            if !banned.contains(&r) {
                return r;
            }
        }
    }

    pub fn gaussian_rational(&mut self, bound: i64, den_bound: i64) -> GaussianRational {
        GaussianRational::new(self.rational(bound, den_bound), self.rational(bound, den_bound))
    }
}
