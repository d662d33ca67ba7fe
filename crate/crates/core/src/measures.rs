//! Scalar information measures and the bundled report.
//!
//! All values are carried as full-precision bits; rounding to integer bits
//! (half-up) happens only at the reporting boundary via [`round_bits`].

use serde::Serialize;

use crate::error::MeasureError;
use crate::freq::frequencies;
use crate::pattern::Pattern;
use crate::spectrum::{analyze_spectra, SpectrumOptions};

/// Shannon information `I_S(X) = Σ_i log2(1/p(x_i)) = Σ_x f(x)·log2(N/f(x))`.
///
/// Zero for the empty pattern and for single-symbol alphabets.
pub fn shannon_information(pattern: &Pattern) -> f64 {
    let table = frequencies(pattern);
    let n = table.total() as f64;
    table
        .counts()
        .iter()
        .map(|&count| {
            let c = count as f64;
            c * (n / c).log2()
        })
        .sum()
}

/// Maximum information content `I_MAX = n·log2(k)` of a length-`n` pattern
/// over `k` symbols. Zero when `n = 0` or `k ≤ 1`.
pub fn max_information(n: usize, k: usize) -> f64 {
    if n == 0 || k <= 1 {
        return 0.0;
    }
    n as f64 * (k as f64).log2()
}

/// Relative information `i / i_max`; defined as 0 for degenerate patterns
/// where `i_max = 0`.
pub fn relative_information(i: f64, i_max: f64) -> f64 {
    if i_max > 0.0 {
        i / i_max
    } else {
        0.0
    }
}

/// SSM information: the minimum of the normalized spectrum, together with
/// the smallest scale attaining it.
///
/// Patterns with an empty spectrum (`N < 2`) report `(0.0, 0)`.
pub fn ssm_information(pattern: &Pattern) -> (f64, usize) {
    let set = analyze_spectra(pattern, &SpectrumOptions::default())
        .expect("observed alphabet is always valid");
    match set.normalized.min_entry() {
        Some((scale, bits)) => (bits, scale),
        None => (0.0, 0),
    }
}

/// [`ssm_information`] with a declared alphabet size (`k` must cover the
/// observed alphabet).
pub fn ssm_information_with_alphabet(
    pattern: &Pattern,
    k: usize,
) -> Result<(f64, usize), MeasureError> {
    let options = SpectrumOptions { declared_alphabet: Some(k), ..Default::default() };
    let set = analyze_spectra(pattern, &options)?;
    Ok(match set.normalized.min_entry() {
        Some((scale, bits)) => (bits, scale),
        None => (0.0, 0),
    })
}

/// Every scalar measure of one pattern, at full precision.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    /// Pattern length N.
    pub n: usize,
    /// Alphabet size K (observed, unless declared larger).
    pub k: usize,
    /// `N·log2(K)` in bits.
    pub i_max: f64,
    /// Shannon information in bits.
    pub i_shannon: f64,
    /// SSM information in bits.
    pub i_ssm: f64,
    /// Smallest scale attaining the normalized-spectrum minimum; 0 when the
    /// spectrum is empty.
    pub argmin_scale: usize,
    /// `I_S / I_MAX` (0 when `I_MAX = 0`).
    pub i_shannon_rel: f64,
    /// `I_SSM / I_MAX` (0 when `I_MAX = 0`).
    pub i_ssm_rel: f64,
}

impl MeasureReport {
    pub fn i_max_bits(&self) -> u64 {
        round_bits(self.i_max)
    }

    pub fn i_shannon_bits(&self) -> u64 {
        round_bits(self.i_shannon)
    }

    pub fn i_ssm_bits(&self) -> u64 {
        round_bits(self.i_ssm)
    }
}

/// Rounds a non-negative bit value half-up for display.
pub fn round_bits(bits: f64) -> u64 {
    debug_assert!(bits >= 0.0);
    (bits + 0.5).floor() as u64
}

/// Bundles `I_MAX`, `I_S`, `I_SSM` and their relative values for a pattern,
/// using the observed alphabet.
pub fn measure(pattern: &Pattern) -> MeasureReport {
    measure_with_options(pattern, &SpectrumOptions::default())
        .expect("observed alphabet is always valid")
}

/// [`measure`] with a declared alphabet size.
pub fn measure_with_alphabet(pattern: &Pattern, k: usize) -> Result<MeasureReport, MeasureError> {
    let options = SpectrumOptions { declared_alphabet: Some(k), ..Default::default() };
    measure_with_options(pattern, &options)
}

/// [`measure`] with full control over alphabet and scale cap.
pub fn measure_with_options(
    pattern: &Pattern,
    options: &SpectrumOptions,
) -> Result<MeasureReport, MeasureError> {
    let set = analyze_spectra(pattern, options)?;
    let n = pattern.len();
    let k = options.declared_alphabet.unwrap_or_else(|| pattern.alphabet_size());
    let i_max = max_information(n, k);
    let i_shannon = shannon_information(pattern);
    let (i_ssm, argmin_scale) = match set.normalized.min_entry() {
        Some((scale, bits)) => (bits, scale),
        None => (0.0, 0),
    };
    Ok(MeasureReport {
        n,
        k,
        i_max,
        i_shannon,
        i_ssm,
        argmin_scale,
        i_shannon_rel: relative_information(i_shannon, i_max),
        i_ssm_rel: relative_information(i_ssm, i_max),
    })
}
