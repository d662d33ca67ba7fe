//! Information spectra across block scales.
//!
//! For every scale `r` in `1 ..= ⌊N/2⌋` the pattern is re-symbolized into
//! blocks of `r` symbols and measured:
//!
//! - raw: `I_SP(r)` — the Shannon information of the block sequence;
//! - maximal: `I_SMS(r) = m · log2(min(K^r, m))` — the supremum any pattern
//!   with the same length and alphabet can reach at that scale;
//! - normalized: the raw spectrum rescaled by the maximal one into the
//!   `[0, N·log2(K)]` range, with a dedicated branch for single-block
//!   partitions.
//!
//! Block frequencies are counted through O(1) rolling fingerprints plus
//! full-content confirmation inside each fingerprint bucket, so one scale
//! costs O(m) expected block operations. Scales are scanned in parallel;
//! results are assembled by scale index and are bit-identical to a
//! sequential scan.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::MeasureError;
use crate::measures::{max_information, shannon_information};
use crate::pattern::Pattern;
use crate::rolling::{FingerprintState, PrefixHashes};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumKind {
    Raw,
    Maximal,
    Normalized,
}

impl SpectrumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SpectrumKind::Raw => "raw",
            SpectrumKind::Maximal => "maximal",
            SpectrumKind::Normalized => "normalized",
        }
    }
}

impl std::fmt::Display for SpectrumKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A per-scale series of bit values. The domain is `1 ..= ⌊N/2⌋` (possibly
/// subsampled when a scale cap was requested) and is empty for `N < 2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    kind: SpectrumKind,
    entries: Vec<(usize, f64)>,
}

impl Spectrum {
    fn new(kind: SpectrumKind, entries: Vec<(usize, f64)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        Spectrum { kind, entries }
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Value at `scale`, if that scale was computed.
    pub fn get(&self, scale: usize) -> Option<f64> {
        self.entries
            .binary_search_by_key(&scale, |&(r, _)| r)
            .ok()
            .map(|i| self.entries[i].1)
    }

    /// `(scale, bits)` pairs in increasing scale order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    /// The minimum value and the smallest scale attaining it.
    pub fn min_entry(&self) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for &(r, v) in &self.entries {
            match best {
                Some((_, b)) if v >= b => {}
                _ => best = Some((r, v)),
            }
        }
        best
    }
}

/// Per-scale accounting from a spectrum scan. `block_ops` is `m = ⌊N/r⌋`,
/// the unit-cost block operations the scale performed.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScaleStats {
    pub scale: usize,
    pub block_ops: u64,
    pub distinct_blocks: u64,
    pub nanos: u64,
}

/// Knobs for a spectrum scan.
#[derive(Debug, Clone, Default)]
pub struct SpectrumOptions {
    /// Declared alphabet size; must be at least the observed size. `None`
    /// uses the observed alphabet.
    pub declared_alphabet: Option<usize>,
    /// Cap the number of scales that get scanned. When set, scales are
    /// log-spaced over `1 ..= ⌊N/2⌋` (small scales stay dense). Off by
    /// default: every scale is scanned.
    pub max_scales: Option<usize>,
}

/// All three spectra of a pattern, from one block-counting pass.
#[derive(Debug, Clone)]
pub struct SpectrumSet {
    pub raw: Spectrum,
    pub maximal: Spectrum,
    pub normalized: Spectrum,
    pub stats: Vec<ScaleStats>,
}

struct ScaleScan {
    scale: usize,
    i_sp: f64,
    distinct: u64,
    block_ops: u64,
    nanos: u64,
}

fn scan_one(ids: &[u32], hashes: &PrefixHashes, scale: usize) -> ScaleScan {
    let started = Instant::now();
    let m = ids.len() / scale;
    // Representatives in first-occurrence order: (position, count, index of
    // the next representative sharing the fingerprint).
    let mut reps: Vec<(u32, u64, u32)> = Vec::new();
    let mut buckets: HashMap<u128, u32, FingerprintState> =
        HashMap::with_capacity_and_hasher(m, FingerprintState);
    for j in 0..m {
        let pos = j * scale;
        let fp = hashes.fingerprint(pos, scale);
        match buckets.entry(fp) {
            Entry::Vacant(slot) => {
                slot.insert(reps.len() as u32);
                reps.push((pos as u32, 1, u32::MAX));
            }
            Entry::Occupied(slot) => {
                let mut idx = *slot.get() as usize;
                loop {
                    let (rep_pos, _, next) = reps[idx];
                    let rep_start = rep_pos as usize;
                    if ids[rep_start..rep_start + scale] == ids[pos..pos + scale] {
                        reps[idx].1 += 1;
                        break;
                    }
                    if next == u32::MAX {
                        reps[idx].2 = reps.len() as u32;
                        reps.push((pos as u32, 1, u32::MAX));
                        break;
                    }
                    idx = next as usize;
                }
            }
        }
    }
    let mf = m as f64;
    // Summed in first-occurrence order, which is fixed by the input alone.
    let i_sp: f64 = reps
        .iter()
        .map(|&(_, count, _)| {
            let c = count as f64;
            c * (mf / c).log2()
        })
        .sum();
    ScaleScan {
        scale,
        i_sp,
        distinct: reps.len() as u64,
        block_ops: m as u64,
        nanos: started.elapsed().as_nanos() as u64,
    }
}

/// Scale set for a pattern of length `n`: everything up to `⌊n/2⌋`, or a
/// log-spaced subsample when capped.
fn select_scales(n: usize, max_scales: Option<usize>) -> Vec<usize> {
    let top = n / 2;
    if n < 2 || top == 0 {
        return Vec::new();
    }
    match max_scales {
        Some(cap) if cap.max(1) < top => {
            let cap = cap.max(1);
            let span = (top as f64).ln();
            let mut scales: Vec<usize> = (0..cap)
                .map(|i| {
                    let t = if cap == 1 { 0.0 } else { i as f64 / (cap - 1) as f64 };
                    ((t * span).exp().round() as usize).clamp(1, top)
                })
                .collect();
            scales.dedup();
            scales
        }
        _ => (1..=top).collect(),
    }
}

fn scan_scales(pattern: &Pattern, scales: &[usize]) -> Vec<ScaleScan> {
    assert!(
        pattern.len() <= u32::MAX as usize,
        "patterns longer than u32::MAX symbols are not supported"
    );
    if pattern.alphabet_size() <= 1 {
        // Single-symbol patterns: every block at every scale is identical.
        return scales
            .iter()
            .map(|&r| ScaleScan {
                scale: r,
                i_sp: 0.0,
                distinct: 1,
                block_ops: (pattern.len() / r) as u64,
                nanos: 0,
            })
            .collect();
    }
    let ids = pattern.ids();
    let hashes = PrefixHashes::new(ids);
    scales.par_iter().map(|&r| scan_one(ids, &hashes, r)).collect()
}

/// `m · log2(min(K^r, m))` with the minimum taken in log space so `K^r`
/// never materializes.
fn max_spectrum_value(m: usize, k: usize, r: usize) -> f64 {
    debug_assert!(k >= 1);
    let mf = m as f64;
    let per_block = r as f64 * (k.max(1) as f64).log2(); // log2(K^r)
    let cap = mf.log2(); // log2(m)
    if per_block <= cap {
        mf * per_block
    } else {
        mf * cap
    }
}

fn effective_alphabet(pattern: &Pattern, declared: Option<usize>) -> Result<usize, MeasureError> {
    let observed = pattern.alphabet_size();
    match declared {
        Some(k) if k < observed => {
            Err(MeasureError::DeclaredAlphabetTooSmall { declared: k, observed })
        }
        Some(k) => Ok(k),
        None => Ok(observed),
    }
}

/// Computes raw, maximal and normalized spectra in one pass.
pub fn analyze_spectra(
    pattern: &Pattern,
    options: &SpectrumOptions,
) -> Result<SpectrumSet, MeasureError> {
    let k = effective_alphabet(pattern, options.declared_alphabet)?;
    let n = pattern.len();
    let scales = select_scales(n, options.max_scales);
    let scans = scan_scales(pattern, &scales);

    let i_s = shannon_information(pattern);
    let i_max = max_information(n, k);

    let mut raw = Vec::with_capacity(scans.len());
    let mut maximal = Vec::with_capacity(scans.len());
    let mut normalized = Vec::with_capacity(scans.len());
    let mut stats = Vec::with_capacity(scans.len());
    for scan in &scans {
        let r = scan.scale;
        let m = scan.block_ops as usize;
        let sms = max_spectrum_value(m, k, r);
        let sns = if scan.distinct > 1 {
            // ≥2 distinct blocks forces m ≥ 2 and K ≥ 2, so the maximal
            // spectrum cannot vanish here.
            assert!(sms > 0.0, "maximal spectrum must be positive at scale {r}");
            scan.i_sp / sms * i_max
        } else {
            r as f64 * (i_s / n as f64)
        };
        raw.push((r, scan.i_sp));
        maximal.push((r, sms));
        normalized.push((r, sns));
        stats.push(ScaleStats {
            scale: r,
            block_ops: scan.block_ops,
            distinct_blocks: scan.distinct,
            nanos: scan.nanos,
        });
    }

    Ok(SpectrumSet {
        raw: Spectrum::new(SpectrumKind::Raw, raw),
        maximal: Spectrum::new(SpectrumKind::Maximal, maximal),
        normalized: Spectrum::new(SpectrumKind::Normalized, normalized),
        stats,
    })
}

/// The Shannon information spectrum: `I_SP(r) = I_S(X^(r))` for every scale.
/// Empty (not an error) when `N < 2`.
pub fn spectrum(pattern: &Pattern) -> Spectrum {
    let scales = select_scales(pattern.len(), None);
    let scans = scan_scales(pattern, &scales);
    Spectrum::new(
        SpectrumKind::Raw,
        scans.iter().map(|s| (s.scale, s.i_sp)).collect(),
    )
}

/// The maximal Shannon information spectrum `I_SMS(r) = m · log2(min(K^r, m))`
/// for an alphabet of size `k`.
pub fn max_spectrum(pattern: &Pattern, k: usize) -> Spectrum {
    let k = k.max(1);
    let n = pattern.len();
    let entries = select_scales(n, None)
        .into_iter()
        .map(|r| (r, max_spectrum_value(n / r, k, r)))
        .collect();
    Spectrum::new(SpectrumKind::Maximal, entries)
}

/// The normalized information spectrum over the observed alphabet.
pub fn normalized_spectrum(pattern: &Pattern) -> Spectrum {
    analyze_spectra(pattern, &SpectrumOptions::default())
        .expect("observed alphabet is always valid")
        .normalized
}

/// The normalized information spectrum with a declared alphabet size.
pub fn normalized_spectrum_with_alphabet(
    pattern: &Pattern,
    k: usize,
) -> Result<Spectrum, MeasureError> {
    let options = SpectrumOptions { declared_alphabet: Some(k), ..Default::default() };
    Ok(analyze_spectra(pattern, &options)?.normalized)
}
