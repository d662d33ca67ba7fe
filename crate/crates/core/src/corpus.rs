//! Embedded example patterns and seeded pattern generators.
//!
//! The fixture texts are stored as explicit content (newlines included where
//! the source had line breaks) so the measured lengths and alphabets are
//! frozen here rather than re-derived from prose.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::pattern::Pattern;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixtureId {
    XA,
    XB,
    XC,
    XD,
    XE,
    XF,
    XG,
    XH,
    XI,
    /// Clean repeated digit string (sensitivity demo, first row).
    T3Clean,
    /// Same string with its first character corrupted (second row).
    T3Corrupt,
}

impl FixtureId {
    pub fn all() -> [FixtureId; 11] {
        use FixtureId::*;
        [XA, XB, XC, XD, XE, XF, XG, XH, XI, T3Clean, T3Corrupt]
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FixtureId::XA => "X_A",
            FixtureId::XB => "X_B",
            FixtureId::XC => "X_C",
            FixtureId::XD => "X_D",
            FixtureId::XE => "X_E",
            FixtureId::XF => "X_F",
            FixtureId::XG => "X_G",
            FixtureId::XH => "X_H",
            FixtureId::XI => "X_I",
            FixtureId::T3Clean => "T3a",
            FixtureId::T3Corrupt => "T3b",
        }
    }
}

impl std::fmt::Display for FixtureId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FixtureId {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase().replace('_', "");
        let id = match norm.as_str() {
            "XA" => FixtureId::XA,
            "XB" => FixtureId::XB,
            "XC" => FixtureId::XC,
            "XD" => FixtureId::XD,
            "XE" => FixtureId::XE,
            "XF" => FixtureId::XF,
            "XG" => FixtureId::XG,
            "XH" => FixtureId::XH,
            "XI" => FixtureId::XI,
            "T3A" => FixtureId::T3Clean,
            "T3B" => FixtureId::T3Corrupt,
            _ => return Err(CorpusError::UnknownFixture(s.to_string())),
        };
        Ok(id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureUnit {
    Bit,
    Character,
}

impl FixtureUnit {
    pub fn as_str(self) -> &'static str {
        match self {
            FixtureUnit::Bit => "bit",
            FixtureUnit::Character => "character",
        }
    }
}

/// Published reference values for one fixture (rounded bits).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoldenValues {
    pub i_max: u64,
    pub i_s: u64,
    pub i_ssm: u64,
}

/// One embedded example pattern.
#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub id: FixtureId,
    pub content: &'static str,
    pub unit: FixtureUnit,
    pub description: &'static str,
    /// Reference (I_MAX, I_S, I_SSM) triple where published.
    pub golden: Option<GoldenValues>,
    /// Published I_SSM for the sensitivity pair; kept separate because those
    /// rows print no I_MAX/I_S and do not re-derive exactly (see README).
    pub reference_ssm: Option<u64>,
}

const X_D_TEXT: &str = "The sky is blue. The sky is blue. The sky is blue. \
The sky is blue. The sky is blue. The sky is blue.";

const X_E_TEXT: &str = "The sky is blue. The sky is blue. The sky is blue. \
The sky is blue. The sky is glue. The sky is blue.";

const X_F_TEXT: &str = "cagtttctagctatattagcgggcacgactccactgcgcctatgcggaag\n\
cttgatcaaattttgaccagatcttaggtaacctgaacaagtcagttcgt\n\
aggcgtcgattggccgacgggtgcgaagaaaaaagtgatcgttgtccaac\n\
atctctagtacccaccgttgtgatgtacgttatacggacacgagcatatt";

const X_G_TEXT: &str = "cggcagtgaggacaatcagacaactactattcaaacaattgttgaggttc\n\
aacctcaattagagatggaacttacaccagttgttcagactattgaagtg\n\
aatagttttagtggttatttaaaacttactgacaatgtatacattaaaaa\n\
tgcagacattgtggaagaagctaaaaaggtaaaaccaacagtggttgtta";

const X_H_TEXT: &str = "EK8Pi5sv2npTfzoaMNp87QtT5kbIUQkTJzHwICCstSmg4aksHT\n\
MwztgHFg3j8AoIobN3FycCLidGeyROiNyG5itB9kxyez1LZjFF\n\
HIBjipE7hidZyiJmilXM0mwnxzlzWSfQ0xP1OuFpWosMwS1cjY\n\
t4nyv4ONx1FceWkAf8SdvDGZVzeVzq2EmOqRF6Im2iudcYRswj";

const X_I_TEXT: &str = "I think it was the beginning of Mrs. Bond's \n\
unquestioning faith in me when she saw me \n\
quickly enveloping the cat till all you could \n\
see of him was a small black and white head \n\
protruding from an immovable cocoon of cloth.";

static FIXTURES: [Fixture; 11] = [
    Fixture {
        id: FixtureId::XA,
        content: "001101101010111001110010001001000100001000010000",
        unit: FixtureUnit::Bit,
        description: "Random binary pattern",
        golden: Some(GoldenValues { i_max: 48, i_s: 46, i_ssm: 40 }),
        reference_ssm: None,
    },
    Fixture {
        id: FixtureId::XB,
        content: "101010101010101010101010101010101010101010101010",
        unit: FixtureUnit::Bit,
        description: "Repeating binary pattern",
        golden: Some(GoldenValues { i_max: 48, i_s: 48, i_ssm: 2 }),
        reference_ssm: None,
    },
    Fixture {
        id: FixtureId::XC,
        content: "111111110000000011111111000000001111111100000000",
        unit: FixtureUnit::Bit,
        description: "Repeating binary pattern",
        golden: Some(GoldenValues { i_max: 48, i_s: 48, i_ssm: 13 }),
        reference_ssm: None,
    },
    Fixture {
        id: FixtureId::XD,
        content: X_D_TEXT,
        unit: FixtureUnit::Character,
        description: "Repeating text",
        golden: Some(GoldenValues { i_max: 362, i_s: 343, i_ssm: 58 }),
        reference_ssm: None,
    },
    Fixture {
        id: FixtureId::XE,
        content: X_E_TEXT,
        unit: FixtureUnit::Character,
        description: "Duplicate text with one character error",
        golden: Some(GoldenValues { i_max: 374, i_s: 347, i_ssm: 116 }),
        reference_ssm: None,
    },
    Fixture {
        id: FixtureId::XF,
        content: X_F_TEXT,
        unit: FixtureUnit::Character,
        description: "Random DNA pattern",
        golden: Some(GoldenValues { i_max: 471, i_s: 422, i_ssm: 409 }),
        reference_ssm: None,
    },
    Fixture {
        id: FixtureId::XG,
        content: X_G_TEXT,
        unit: FixtureUnit::Character,
        description: "DNA segment of COVID virus",
        golden: Some(GoldenValues { i_max: 471, i_s: 405, i_ssm: 388 }),
        reference_ssm: None,
    },
    Fixture {
        id: FixtureId::XH,
        content: X_H_TEXT,
        unit: FixtureUnit::Character,
        description: "Random string (0-9, a-z, A-Z)",
        golden: Some(GoldenValues { i_max: 1209, i_s: 1174, i_ssm: 1174 }),
        reference_ssm: None,
    },
    Fixture {
        id: FixtureId::XI,
        content: X_I_TEXT,
        unit: FixtureUnit::Character,
        description: "English text (James Herriot's Cat Stories)",
        golden: Some(GoldenValues { i_max: 1104, i_s: 971, i_ssm: 971 }),
        reference_ssm: None,
    },
    Fixture {
        id: FixtureId::T3Clean,
        content: "123456789 123456789 123456789",
        unit: FixtureUnit::Character,
        description: "Clean repeated digit string",
        golden: None,
        reference_ssm: Some(29),
    },
    Fixture {
        id: FixtureId::T3Corrupt,
        content: "223456789 123456789 123456789",
        unit: FixtureUnit::Character,
        description: "Repeated digit string with one substitution",
        golden: None,
        reference_ssm: Some(50),
    },
];

/// Metadata and raw content for one fixture.
pub fn fixture_record(id: FixtureId) -> &'static Fixture {
    FIXTURES.iter().find(|f| f.id == id).expect("every id is embedded")
}

/// All embedded fixtures.
pub fn all_fixtures() -> &'static [Fixture] {
    &FIXTURES
}

/// The fixture as a pattern: one symbol per character of the embedded
/// content. Bit-unit fixtures are stored as '0'/'1' characters, so the two
/// views coincide.
pub fn fixture(id: FixtureId) -> Pattern {
    Pattern::from_text(fixture_record(id).content)
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("unknown fixture id {0:?}")]
    UnknownFixture(String),

    #[error("generator alphabet must not be empty")]
    EmptyAlphabet,

    #[error("generator period must not be empty")]
    EmptyPeriod,

    #[error("generator period uses symbols outside the declared alphabet")]
    PeriodOutsideAlphabet,

    #[error("error rate {0} is outside [0, 1]")]
    InvalidErrorRate(f64),

    #[error("substitution errors need an alphabet of at least two symbols")]
    AlphabetTooSmallForErrors,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorKind {
    /// Independent uniform draws from the alphabet.
    UniformRandom,
    /// `period` cycled to the requested length.
    Repeat { period: String },
    /// `period` cycled, then each position substituted with probability
    /// `error_rate` by a uniformly chosen *different* alphabet symbol.
    RepeatWithErrors { period: String, error_rate: f64 },
    /// The alphabet cycled in declaration order.
    Ramp,
}

/// A deterministic pattern recipe: identical specs produce identical
/// patterns, on every platform.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub alphabet: Vec<char>,
    pub length: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn uniform_random(alphabet: &str, length: usize, seed: u64) -> Self {
        GeneratorSpec {
            kind: GeneratorKind::UniformRandom,
            alphabet: alphabet.chars().collect(),
            length,
            seed,
        }
    }

    pub fn repeat(period: &str, length: usize) -> Self {
        GeneratorSpec {
            kind: GeneratorKind::Repeat { period: period.to_string() },
            alphabet: period.chars().collect(),
            length,
            seed: 0,
        }
    }

    pub fn repeat_with_errors(period: &str, alphabet: &str, error_rate: f64, length: usize, seed: u64) -> Self {
        GeneratorSpec {
            kind: GeneratorKind::RepeatWithErrors { period: period.to_string(), error_rate },
            alphabet: alphabet.chars().collect(),
            length,
            seed,
        }
    }

    pub fn ramp(alphabet: &str, length: usize) -> Self {
        GeneratorSpec {
            kind: GeneratorKind::Ramp,
            alphabet: alphabet.chars().collect(),
            length,
            seed: 0,
        }
    }
}

/// Index sampling uses `next_u32 % k` on a ChaCha8 stream: the modulo bias
/// is immaterial here and the draw sequence is fixed by the seed alone.
fn uniform_index(rng: &mut ChaCha8Rng, k: usize) -> usize {
    (rng.next_u32() as usize) % k
}

/// Produces the pattern described by `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<Pattern, CorpusError> {
    let alphabet = &spec.alphabet;
    if alphabet.is_empty() {
        return Err(CorpusError::EmptyAlphabet);
    }
    let k = alphabet.len();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let chars: Vec<char> = match &spec.kind {
        GeneratorKind::UniformRandom => {
            (0..spec.length).map(|_| alphabet[uniform_index(&mut rng, k)]).collect()
        }
        GeneratorKind::Ramp => (0..spec.length).map(|i| alphabet[i % k]).collect(),
        GeneratorKind::Repeat { period } => {
            let period = validated_period(period, alphabet)?;
            (0..spec.length).map(|i| period[i % period.len()]).collect()
        }
        GeneratorKind::RepeatWithErrors { period, error_rate } => {
            if !(0.0..=1.0).contains(error_rate) {
                return Err(CorpusError::InvalidErrorRate(*error_rate));
            }
            if *error_rate > 0.0 && k < 2 {
                return Err(CorpusError::AlphabetTooSmallForErrors);
            }
            let period = validated_period(period, alphabet)?;
            let threshold = (*error_rate * 4_294_967_296.0) as u64;
            (0..spec.length)
                .map(|i| {
                    let clean = period[i % period.len()];
                    if (rng.next_u32() as u64) < threshold {
                        // Substitute with a different symbol: draw from the
                        // k-1 alternatives and skip over the clean one.
                        let clean_idx =
                            alphabet.iter().position(|&c| c == clean).expect("validated");
                        let j = uniform_index(&mut rng, k - 1);
                        alphabet[if j >= clean_idx { j + 1 } else { j }]
                    } else {
                        clean
                    }
                })
                .collect()
        }
    };

    Ok(Pattern::from_symbols(chars.into_iter().map(crate::symbol::Symbol::from_char)))
}

fn validated_period(period: &str, alphabet: &[char]) -> Result<Vec<char>, CorpusError> {
    if period.is_empty() {
        return Err(CorpusError::EmptyPeriod);
    }
    let chars: Vec<char> = period.chars().collect();
    if chars.iter().any(|c| !alphabet.contains(c)) {
        return Err(CorpusError::PeriodOutsideAlphabet);
    }
    Ok(chars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{measure, round_bits};

    #[test]
    fn fixture_lengths_match_the_published_table() {
        let expect = [
            (FixtureId::XA, 48),
            (FixtureId::XB, 48),
            (FixtureId::XC, 48),
            (FixtureId::XD, 101),
            (FixtureId::XE, 101),
            (FixtureId::XF, 203),
            (FixtureId::XG, 203),
            (FixtureId::XH, 203),
            (FixtureId::XI, 225),
            (FixtureId::T3Clean, 29),
            (FixtureId::T3Corrupt, 29),
        ];
        for (id, len) in expect {
            assert_eq!(fixture(id).len(), len, "length of {id}");
        }
    }

    #[test]
    fn small_fixtures_re_measure_to_golden_values() {
        for id in [FixtureId::XA, FixtureId::XB, FixtureId::XC, FixtureId::XD, FixtureId::XE] {
            let golden = fixture_record(id).golden.unwrap();
            let report = measure(&fixture(id));
            assert_eq!(report.i_max_bits(), golden.i_max, "I_MAX of {id}");
            assert_eq!(report.i_shannon_bits(), golden.i_s, "I_S of {id}");
            assert_eq!(report.i_ssm_bits(), golden.i_ssm, "I_SSM of {id}");
        }
    }

    #[test]
    fn large_fixtures_track_golden_shannon_within_two_percent() {
        for id in [FixtureId::XF, FixtureId::XG, FixtureId::XH, FixtureId::XI] {
            let golden = fixture_record(id).golden.unwrap();
            let report = measure(&fixture(id));
            let dev = (report.i_shannon - golden.i_s as f64).abs() / golden.i_s as f64;
            assert!(dev < 0.02, "I_S of {id} deviates {:.2}%", dev * 100.0);
            assert!(report.i_ssm <= report.i_shannon + 1e-9, "ordering for {id}");
            assert_eq!(report.i_max_bits(), golden.i_max, "I_MAX of {id}");
        }
    }

    #[test]
    fn sensitivity_pair_shows_the_jump() {
        let clean = measure(&fixture(FixtureId::T3Clean));
        let corrupt = measure(&fixture(FixtureId::T3Corrupt));
        assert!(corrupt.i_ssm / clean.i_ssm > 1.3);
        // Our computed values; the published ones (29, 50) are reference only.
        assert_eq!(round_bits(clean.i_ssm), 33);
        assert_eq!(round_bits(corrupt.i_ssm), 63);
    }

    #[test]
    fn repeating_fixture_partitions_into_identical_periods() {
        let x_c = fixture(FixtureId::XC);
        let part = crate::partition(&x_c, 16).unwrap();
        assert_eq!(part.num_blocks(), 3);
        let first = part.block(0).canonical_bytes();
        assert_eq!(first, b"1111111100000000".to_vec());
        assert!(part.blocks().all(|b| b.canonical_bytes() == first));
    }

    #[test]
    fn repeat_reconstructs_the_alternating_fixture() {
        let spec = GeneratorSpec::repeat("10", 48);
        assert_eq!(generate(&spec).unwrap(), fixture(FixtureId::XB));
    }

    #[test]
    fn generators_are_deterministic() {
        let spec = GeneratorSpec::uniform_random("01", 48, 7);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let other_seed = GeneratorSpec::uniform_random("01", 48, 8);
        assert_ne!(generate(&spec).unwrap(), generate(&other_seed).unwrap());
    }

    #[test]
    fn generators_stay_inside_the_alphabet() {
        for spec in [
            GeneratorSpec::uniform_random("abc", 500, 3),
            GeneratorSpec::repeat_with_errors("abcabc", "abc", 0.2, 500, 3),
            GeneratorSpec::ramp("abc", 500),
        ] {
            let p = generate(&spec).unwrap();
            for symbol in p.alphabet().symbols() {
                let c = std::str::from_utf8(symbol.as_bytes()).unwrap().chars().next().unwrap();
                assert!(spec.alphabet.contains(&c));
            }
        }
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(matches!(
            generate(&GeneratorSpec::uniform_random("", 10, 0)),
            Err(CorpusError::EmptyAlphabet)
        ));
        assert!(matches!(
            generate(&GeneratorSpec::repeat_with_errors("ab", "ab", 1.5, 10, 0)),
            Err(CorpusError::InvalidErrorRate(_))
        ));
        assert!(generate(&GeneratorSpec::repeat("xy", 10)).is_ok());
        let bad_period = GeneratorSpec {
            kind: GeneratorKind::Repeat { period: "xz".into() },
            alphabet: vec!['x', 'y'],
            length: 10,
            seed: 0,
        };
        assert!(matches!(generate(&bad_period), Err(CorpusError::PeriodOutsideAlphabet)));
    }

    #[test]
    fn fixture_ids_parse_back() {
        for f in all_fixtures() {
            let round: FixtureId = f.id.as_str().parse().unwrap();
            assert_eq!(round, f.id);
        }
        assert!("X_Z".parse::<FixtureId>().is_err());
    }
}
