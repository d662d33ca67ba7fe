//! Multi-scale Shannon information measures for discrete patterns.
//!
//! Plain Shannon information `I_S` only sees symbol frequencies, so it
//! overestimates the information content of patterns with repeating
//! structure. This crate re-symbolizes a pattern into blocks of every length
//! `r` up to half the pattern, measures the Shannon information of each
//! block sequence (the information spectrum), normalizes the spectrum by the
//! maximum it could attain, and takes the minimum over all scales. That
//! minimum, the SSM information, is a sharper estimate of internal
//! information content.
//!
//! The crate also ships reproducible ingestion of files into patterns,
//! compression baselines to compare the measures against, and an embedded
//! corpus of reference patterns with seeded generators.

pub mod baselines;
pub mod corpus;
mod error;
mod freq;
pub mod ingest;
mod measures;
mod pattern;
mod rolling;
mod spectrum;
mod symbol;

pub use error::MeasureError;
pub use freq::{frequencies, FrequencyTable};
pub use measures::{
    max_information, measure, measure_with_alphabet, measure_with_options, relative_information,
    round_bits, shannon_information, ssm_information, ssm_information_with_alphabet,
    MeasureReport,
};
pub use pattern::{partition, Block, Partition, Pattern};
pub use spectrum::{
    analyze_spectra, max_spectrum, normalized_spectrum, normalized_spectrum_with_alphabet,
    spectrum, ScaleStats, Spectrum, SpectrumKind, SpectrumOptions, SpectrumSet,
};
pub use symbol::{Alphabet, Symbol};
