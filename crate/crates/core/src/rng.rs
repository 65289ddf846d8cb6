//! Deterministic, portable pseudo-randomness for suites and estimators.
//!
//! The generator is SplitMix64: the state advances by the 64-bit golden
//! ratio constant `0x9E3779B97F4A7C15` and each output is finalized with
//! David Stafford's "variant 13" mixer (`>> 30, * 0xBF58476D1CE4E5B9,
//! >> 27, * 0x94D049BB133111EB, >> 31`). The same seed produces the same
//! stream on every platform, so seeded reports reproduce byte for byte.

use num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[-1, 1)`.
    pub fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }

    /// Uniform integer in `[lo, hi]` (inclusive). The modulo bias is
    /// irrelevant at the spans used here.
    pub fn next_i64_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % span) as i64
    }

    pub fn next_usize_in(&mut self, lo: usize, hi: usize) -> usize {
        self.next_i64_in(lo as i64, hi as i64) as usize
    }

    /// Uniform on the closed unit disc, by rejection from the square.
    pub fn next_unit_disc(&mut self) -> Complex64 {
        loop {
            let re = self.next_symmetric();
            let im = self.next_symmetric();
            if re * re + im * im <= 1.0 {
                return Complex64::new(re, im);
            }
        }
    }
}
