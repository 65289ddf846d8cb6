//! Shared fixtures for the criterion benchmarks.

use nctorus_core::{
    random_element, random_theta, LatticeElement, Parity, SplitMix64, SuiteConfig, ThetaMatrix,
};

pub fn fixture_theta(n: usize) -> ThetaMatrix {
    let mut rng = SplitMix64::new(0xBE7C);
    random_theta(&mut rng, n, 0.5)
}

pub fn fixture_element(n: usize, max_modes: i64, terms: usize, seed: u64) -> LatticeElement {
    let cfg = SuiteConfig {
        seed,
        n,
        max_modes,
        max_terms: terms,
        ..SuiteConfig::default()
    };
    let mut rng = SplitMix64::new(seed);
    random_element(&cfg, &mut rng, Parity::Any)
}
