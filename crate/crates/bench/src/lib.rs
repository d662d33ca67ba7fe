//! Benchmark helpers: the pattern classes the spectrum scan is measured on.

use infometer_core::corpus::{generate, GeneratorSpec};
use infometer_core::Pattern;

pub fn random_binary(len: usize, seed: u64) -> Pattern {
    generate(&GeneratorSpec::uniform_random("01", len, seed)).expect("valid spec")
}

pub fn periodic_binary(len: usize) -> Pattern {
    generate(&GeneratorSpec::repeat("1011000111001010", len)).expect("valid spec")
}

pub fn noisy_periodic_binary(len: usize, seed: u64) -> Pattern {
    generate(&GeneratorSpec::repeat_with_errors("1011000111001010", "01", 0.02, len, seed))
        .expect("valid spec")
}
