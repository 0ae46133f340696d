//! Small deterministic random source for randomized searches and tests.
//!
//! Seeds are plain `u64`s so every randomized run (library or CLI) can be
//! reproduced by quoting the seed it printed.

use alloc::vec::Vec;

use crate::opcore::BigNat;

/// A source of uniform `u64`s.
pub trait RandomSource {
    fn next_u64(&mut self) -> u64;
}

/// SplitMix64: tiny, fast, and good enough for search randomization.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }
}

impl RandomSource for SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

impl<T: RandomSource + ?Sized> RandomSourceExt for T {}

/// Derived draws every call site wants.
pub trait RandomSourceExt: RandomSource {
    /// Uniform in `[0, bound)`; `bound` must be nonzero.
    fn below_u64(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        // Rejection sampling on the top of the range keeps it unbiased.
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// Uniform value with exactly `bits` binary digits (top bit set).
    fn nat_with_bits(&mut self, bits: u64) -> BigNat {
        if bits == 0 {
            return BigNat::zero();
        }
        let n_words = bits.div_ceil(64) as usize;
        let mut bytes = Vec::with_capacity(n_words * 8);
        for _ in 0..n_words {
            bytes.extend_from_slice(&self.next_u64().to_le_bytes());
        }
        let mut v = BigNat::from_le_bytes(&bytes);
        let excess = n_words as u64 * 64 - bits;
        if excess > 0 {
            v = &v >> excess;
        }
        // Force the leading bit so the width is exact.
        let top = BigNat::pow2(bits - 1);
        if !v.bit(bits - 1) {
            v = &v + &top;
        }
        v
    }

    /// Uniform in `[0, bound)` for arbitrary-precision bounds.
    fn nat_below(&mut self, bound: &BigNat) -> BigNat {
        assert!(!bound.is_zero(), "empty range");
        let bits = bound.bit_len();
        loop {
            let mut v = self.nat_with_bits(bits);
            // Clear the forced top bit half of the time to cover low values.
            if self.next_u64() & 1 == 0 {
                v = v.checked_sub(&BigNat::pow2(bits - 1)).unwrap();
            }
            if v < *bound {
                return v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_seed() {
        let mut a = SplitMix64::new(123);
        let mut b = SplitMix64::new(123);
        for _ in 0..16 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn nat_with_bits_has_exact_width() {
        let mut rng = SplitMix64::new(5);
        for bits in [1u64, 2, 63, 64, 65, 100, 1000] {
            assert_eq!(rng.nat_with_bits(bits).bit_len(), bits);
        }
    }

    #[test]
    fn nat_below_respects_bound() {
        let mut rng = SplitMix64::new(17);
        let bound: BigNat = BigNat::from(1000u32);
        for _ in 0..200 {
            assert!(rng.nat_below(&bound) < bound);
        }
    }
}
