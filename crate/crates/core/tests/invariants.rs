//! Property and axiom tests for the information measures.
//!
//! The reference oracle here is a deliberately naive transcription of the
//! defining formulas (string blocks, linear-scan counting) sharing no code
//! with the library's interned-id / rolling-fingerprint path.

use infometer_core::corpus::{fixture, generate, FixtureId, GeneratorSpec};
use infometer_core::{
    analyze_spectra, frequencies, max_information, max_spectrum, measure, shannon_information,
    spectrum, ssm_information, Pattern, SpectrumOptions, Symbol,
};
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

// ---------------------------------------------------------------------------
// Naive oracle
// ---------------------------------------------------------------------------

mod oracle {
    pub fn shannon(symbols: &[String]) -> f64 {
        let n = symbols.len() as f64;
        let mut seen: Vec<&String> = Vec::new();
        let mut sum = 0.0;
        for s in symbols {
            if seen.contains(&s) {
                continue;
            }
            seen.push(s);
            let f = symbols.iter().filter(|t| *t == s).count() as f64;
            sum += f * (n / f).log2();
        }
        sum
    }

    pub fn blocks(symbols: &[String], r: usize) -> Vec<String> {
        let m = symbols.len() / r;
        (0..m).map(|j| symbols[j * r..(j + 1) * r].concat()).collect()
    }

    pub fn i_sp(symbols: &[String], r: usize) -> f64 {
        shannon(&blocks(symbols, r))
    }

    pub fn i_sms(n: usize, k: usize, r: usize) -> f64 {
        let m = (n / r) as f64;
        m * (k as f64).powi(r as i32).min(m).log2()
    }

    pub fn i_sns(symbols: &[String], r: usize, k: usize) -> f64 {
        let n = symbols.len();
        let bl = blocks(symbols, r);
        let mut distinct: Vec<&String> = Vec::new();
        for b in &bl {
            if !distinct.contains(&b) {
                distinct.push(b);
            }
        }
        if distinct.len() > 1 {
            i_sp(symbols, r) / i_sms(n, k, r) * (n as f64 * (k as f64).log2())
        } else {
            r as f64 * (i_sp(symbols, 1) / n as f64)
        }
    }

    pub fn ssm(symbols: &[String], k: usize) -> (f64, usize) {
        let n = symbols.len();
        if n < 2 {
            return (0.0, 0);
        }
        let mut best = f64::INFINITY;
        let mut best_r = 0;
        for r in 1..=n / 2 {
            let v = i_sns(symbols, r, k);
            if v < best {
                best = v;
                best_r = r;
            }
        }
        (best, best_r)
    }
}

fn to_strings(p: &Pattern) -> Vec<String> {
    p.iter().map(|s| s.to_string()).collect()
}

fn small_pattern() -> impl Strategy<Value = Pattern> {
    (1usize..=4, proptest::collection::vec(0u8..4, 0..24)).prop_map(|(k, raw)| {
        Pattern::from_symbols(
            raw.into_iter().map(|v| Symbol::from_byte(b'a' + v % k as u8)),
        )
    })
}

proptest! {
    #[test]
    fn frequency_conservation(p in small_pattern()) {
        let table = frequencies(&p);
        let total: u64 = table.iter().map(|(_, c)| c).sum();
        prop_assert_eq!(total, p.len() as u64);
        prop_assert_eq!(table.total(), p.len() as u64);
    }

    #[test]
    fn shannon_matches_the_naive_oracle(p in small_pattern()) {
        let expect = oracle::shannon(&to_strings(&p));
        prop_assert!((shannon_information(&p) - expect).abs() < 1e-9);
    }

    #[test]
    fn spectra_match_the_naive_oracle(p in small_pattern()) {
        let symbols = to_strings(&p);
        let k = p.alphabet_size();
        let set = analyze_spectra(&p, &SpectrumOptions::default()).unwrap();
        for (r, v) in set.raw.iter() {
            prop_assert!((v - oracle::i_sp(&symbols, r)).abs() < 1e-9, "raw at {}", r);
        }
        for (r, v) in set.maximal.iter() {
            prop_assert!((v - oracle::i_sms(p.len(), k, r)).abs() < 1e-9, "maximal at {}", r);
        }
        for (r, v) in set.normalized.iter() {
            prop_assert!((v - oracle::i_sns(&symbols, r, k)).abs() < 1e-9, "normalized at {}", r);
        }
        if p.len() >= 2 {
            let (bits, scale) = ssm_information(&p);
            let (expect_bits, expect_scale) = oracle::ssm(&symbols, k);
            prop_assert!((bits - expect_bits).abs() < 1e-9);
            prop_assert_eq!(scale, expect_scale);
        }
    }

    #[test]
    fn raw_spectrum_never_exceeds_maximal(p in small_pattern()) {
        let raw = spectrum(&p);
        let maximal = max_spectrum(&p, p.alphabet_size().max(1));
        for ((r, v), (_, cap)) in raw.iter().zip(maximal.iter()) {
            prop_assert!(v <= cap + 1e-9, "scale {}", r);
        }
    }

    #[test]
    fn reversal_preserves_shannon_exactly(p in small_pattern()) {
        prop_assert_eq!(
            shannon_information(&p).to_bits(),
            shannon_information(&p.reversed()).to_bits()
        );
    }
}

// ---------------------------------------------------------------------------
// Seeded axiom checks
// ---------------------------------------------------------------------------

fn seeded_pattern(rng: &mut ChaCha8Rng, alphabet: &[char], len: usize) -> Pattern {
    Pattern::from_symbols(
        (0..len).map(|_| Symbol::from_char(alphabet[rng.next_u32() as usize % alphabet.len()])),
    )
}

#[test]
fn permutation_degeneracy_of_shannon() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for id in [FixtureId::XA, FixtureId::XD, FixtureId::XH] {
        let p = fixture(id);
        let reference = shannon_information(&p);
        let mut symbols: Vec<Symbol> = p.iter().cloned().collect();
        for _ in 0..5 {
            // Fisher-Yates with the seeded stream.
            for i in (1..symbols.len()).rev() {
                let j = rng.next_u32() as usize % (i + 1);
                symbols.swap(i, j);
            }
            let shuffled = Pattern::from_symbols(symbols.iter().cloned());
            assert_eq!(shannon_information(&shuffled).to_bits(), reference.to_bits());
        }
    }
}

#[test]
fn reversal_preserves_spectrum_at_divisor_scales() {
    for id in [FixtureId::XA, FixtureId::XC, FixtureId::XD] {
        let p = fixture(id);
        let forward = spectrum(&p);
        let backward = spectrum(&p.reversed());
        for (r, v) in forward.iter() {
            if p.len().is_multiple_of(r) {
                let w = backward.get(r).unwrap();
                assert!((v - w).abs() < 1e-9, "{id} at divisor scale {r}: {v} vs {w}");
            }
        }
    }
}

#[test]
fn condition_1_zero_iff_trivial_alphabet() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let alphabets: [&[char]; 4] = [&['a'], &['0', '1'], &['x', 'y', 'z'], &['a', 'b', 'c', 'd']];
    for case in 0..100 {
        let alphabet = alphabets[case % alphabets.len()];
        let len = 2 + (rng.next_u32() as usize % 63);
        let p = seeded_pattern(&mut rng, alphabet, len);
        let (bits, _) = ssm_information(&p);
        if p.alphabet_size() < 2 {
            assert_eq!(bits, 0.0, "constant pattern must measure zero");
        } else {
            assert!(bits > 0.0, "non-trivial pattern must measure positive, got {bits}");
        }
    }
    // Degenerate shapes.
    assert_eq!(ssm_information(&Pattern::empty()).0, 0.0);
    assert_eq!(ssm_information(&Pattern::from_text("q")).0, 0.0);
    assert_eq!(ssm_information(&Pattern::from_text("qqqqqqq")).0, 0.0);
    // Every appendix fixture has at least two symbols and measures positive.
    for f in infometer_core::corpus::all_fixtures() {
        assert!(ssm_information(&fixture(f.id)).0 > 0.0, "{}", f.id);
    }
}

#[test]
fn condition_2_repetition_is_bounded_by_one_period() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let len = 4 + rng.next_u32() as usize % 13;
        let base = seeded_pattern(&mut rng, &['0', '1', '2'], len);
        for k in 2..=4 {
            let repeated = base.repeat(k);
            let (bits, _) = ssm_information(&repeated);
            let bound = max_information(base.len(), repeated.alphabet_size());
            assert!(
                bits <= bound + 1e-9,
                "I_SSM(X^{k}) = {bits} exceeds one-period bound {bound}"
            );
        }
    }
}

#[test]
fn condition_4_disjoint_concatenation_is_superadditive() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..50 {
        let left_len = 1 + rng.next_u32() as usize % 32;
        let right_len = 1 + rng.next_u32() as usize % 32;
        let left = seeded_pattern(&mut rng, &['a', 'b', 'c'], left_len);
        let right = seeded_pattern(&mut rng, &['0', '1'], right_len);
        let joined = left.concat(&right);
        let sum = shannon_information(&left) + shannon_information(&right);
        assert!(
            shannon_information(&joined) > sum,
            "expected superadditivity: {} !> {}",
            shannon_information(&joined),
            sum
        );
    }
}

#[test]
fn condition_5_random_patterns_stay_near_maximal() {
    let mut total = 0.0;
    for seed in 0..20 {
        let p = generate(&GeneratorSpec::uniform_random("01", 48, seed)).unwrap();
        let report = measure(&p);
        total += report.i_ssm_rel;
    }
    let mean = total / 20.0;
    assert!(mean > 0.75, "mean relative SSM {mean} over 20 random patterns");
}

#[test]
fn ordering_chain_on_fixtures_and_random_patterns() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let check = |p: &Pattern, label: &str| {
        let report = measure(p);
        assert!(report.i_ssm <= report.i_shannon + 1e-9, "{label}: SSM > Shannon");
        assert!(report.i_shannon <= report.i_max + 1e-9, "{label}: Shannon > max");
    };
    for f in infometer_core::corpus::all_fixtures() {
        check(&fixture(f.id), f.id.as_str());
    }
    for case in 0..200 {
        let alphabet: Vec<char> = match case % 3 {
            0 => vec!['0', '1'],
            1 => vec!['a', 'b', 'c'],
            _ => vec!['a', 'b', 'c', 'd', 'e'],
        };
        let len = alphabet.len() + rng.next_u32() as usize % 60;
        let p = seeded_pattern(&mut rng, &alphabet, len);
        if p.alphabet_size() <= p.len() {
            check(&p, &format!("seeded case {case}"));
        }
    }
}

#[test]
fn repeat_with_errors_hits_exactly_one_substitution_at_the_chosen_seed() {
    let clean = generate(&GeneratorSpec::repeat("123456789 ", 29)).unwrap();
    assert_eq!(clean, fixture(FixtureId::T3Clean));
    let noisy = generate(&GeneratorSpec::repeat_with_errors(
        "123456789 ",
        "0123456789 ",
        1.0 / 29.0,
        29,
        1,
    ))
    .unwrap();
    let substitutions = clean.iter().zip(noisy.iter()).filter(|(a, b)| a != b).count();
    assert_eq!(substitutions, 1);
}

#[test]
fn parallel_spectrum_is_bit_identical_to_single_threaded() {
    let p = generate(&GeneratorSpec::uniform_random("01", 4096, 3)).unwrap();
    let default_pool = analyze_spectra(&p, &SpectrumOptions::default()).unwrap();
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| analyze_spectra(&p, &SpectrumOptions::default()).unwrap());
    for (kind, a, b) in [
        ("raw", &default_pool.raw, &single.raw),
        ("maximal", &default_pool.maximal, &single.maximal),
        ("normalized", &default_pool.normalized, &single.normalized),
    ] {
        assert_eq!(a.entries().len(), b.entries().len());
        for ((r1, v1), (r2, v2)) in a.iter().zip(b.iter()) {
            assert_eq!(r1, r2);
            assert_eq!(v1.to_bits(), v2.to_bits(), "{kind} differs at scale {r1}");
        }
    }
}

#[test]
fn byte_ingestion_round_trips() {
    use infometer_core::ingest::{ingest_bytes, SymbolMode, SymbolizationPolicy};
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut data = vec![0u8; 4096];
    rng.fill_bytes(&mut data);
    let report = ingest_bytes(&data, &SymbolizationPolicy::new(SymbolMode::Byte)).unwrap();
    assert_eq!(report.pattern.canonical_bytes(), data);
}
