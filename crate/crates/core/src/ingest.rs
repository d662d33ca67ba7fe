//! Turning bytes and files into patterns under an explicit symbolization
//! policy.
//!
//! Nothing is sniffed: the caller always states how bytes become symbols
//! ("bit", "byte", one Unicode code point, or fixed-width tokens) and what
//! happens to line breaks, so every view of an input is reproducible.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::pattern::Pattern;
use crate::symbol::Symbol;

/// How bytes become symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolMode {
    /// Eight symbols per byte, most significant bit first, as '0'/'1'.
    Bit,
    /// One symbol per byte.
    Byte,
    /// One symbol per decoded Unicode code point; combining sequences are
    /// not merged. Input must be well-formed UTF-8.
    Utf8Char,
    /// One symbol per `w`-byte chunk; a trailing partial chunk is dropped
    /// and recorded in the report.
    TokenWidth(usize),
}

impl SymbolMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SymbolMode::Bit => "bit",
            SymbolMode::Byte => "byte",
            SymbolMode::Utf8Char => "utf8-char",
            SymbolMode::TokenWidth(_) => "token",
        }
    }
}

impl std::fmt::Display for SymbolMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SymbolMode::TokenWidth(w) => write!(f, "token:{w}"),
            other => f.write_str(other.as_str()),
        }
    }
}

/// What happens to CR/LF before symbolization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NewlinePolicy {
    Keep,
    /// Remove every CR and LF.
    StripAll,
    /// CRLF and lone CR become a single LF.
    NormalizeToLf,
}

impl NewlinePolicy {
    pub fn as_str(&self) -> &'static str {
        match self {
            NewlinePolicy::Keep => "keep",
            NewlinePolicy::StripAll => "strip-all",
            NewlinePolicy::NormalizeToLf => "normalize-to-lf",
        }
    }
}

impl std::fmt::Display for NewlinePolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A complete symbolization recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolizationPolicy {
    pub mode: SymbolMode,
    pub newline: NewlinePolicy,
    /// Optional declared alphabet size, carried through to the measures.
    pub declared_alphabet: Option<usize>,
}

impl SymbolizationPolicy {
    /// Policy with the default newline handling for `mode`: text gets
    /// `strip-all`, binary views keep their bytes untouched.
    pub fn new(mode: SymbolMode) -> Self {
        let newline = match mode {
            SymbolMode::Utf8Char => NewlinePolicy::StripAll,
            _ => NewlinePolicy::Keep,
        };
        SymbolizationPolicy { mode, newline, declared_alphabet: None }
    }

    pub fn with_newline(mut self, newline: NewlinePolicy) -> Self {
        self.newline = newline;
        self
    }

    pub fn with_declared_alphabet(mut self, k: usize) -> Self {
        self.declared_alphabet = Some(k);
        self
    }
}

/// The outcome of one ingestion: the pattern plus the exact accounting of
/// what the policy did to the input.
#[derive(Debug, Clone)]
pub struct IngestReport {
    pub pattern: Pattern,
    /// Raw input size in bytes, before any policy was applied.
    pub source_bytes: usize,
    /// Symbols removed by the policy: newline symbols stripped or merged
    /// (eight per byte in bit mode) plus one for a dropped partial token.
    pub dropped_symbols: usize,
    pub policy: SymbolizationPolicy,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("token width must be at least 1")]
    InvalidTokenWidth,

    #[error("input is not valid UTF-8 at byte offset {offset}")]
    Decode { offset: usize },

    #[error("failed to read {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn apply_newline_bytes(data: &[u8], policy: NewlinePolicy) -> (Vec<u8>, usize) {
    match policy {
        NewlinePolicy::Keep => (data.to_vec(), 0),
        NewlinePolicy::StripAll => {
            let kept: Vec<u8> = data.iter().copied().filter(|&b| b != b'\n' && b != b'\r').collect();
            let dropped = data.len() - kept.len();
            (kept, dropped)
        }
        NewlinePolicy::NormalizeToLf => {
            let mut out = Vec::with_capacity(data.len());
            let mut dropped = 0;
            let mut i = 0;
            while i < data.len() {
                match data[i] {
                    b'\r' if data.get(i + 1) == Some(&b'\n') => {
                        out.push(b'\n');
                        dropped += 1;
                        i += 2;
                    }
                    b'\r' => {
                        out.push(b'\n');
                        i += 1;
                    }
                    b => {
                        out.push(b);
                        i += 1;
                    }
                }
            }
            (out, dropped)
        }
    }
}

/// Symbolizes `data` under `policy`.
pub fn ingest_bytes(data: &[u8], policy: &SymbolizationPolicy) -> Result<IngestReport, IngestError> {
    let source_bytes = data.len();

    let (pattern, dropped_symbols) = match policy.mode {
        SymbolMode::Utf8Char => {
            let text = std::str::from_utf8(data)
                .map_err(|e| IngestError::Decode { offset: e.valid_up_to() })?;
            let mut dropped = 0usize;
            let chars: Vec<char> = match policy.newline {
                NewlinePolicy::Keep => text.chars().collect(),
                NewlinePolicy::StripAll => {
                    let kept: Vec<char> =
                        text.chars().filter(|&c| c != '\n' && c != '\r').collect();
                    dropped = text.chars().count() - kept.len();
                    kept
                }
                NewlinePolicy::NormalizeToLf => {
                    let mut out = Vec::new();
                    let mut it = text.chars().peekable();
                    while let Some(c) = it.next() {
                        if c == '\r' {
                            if it.peek() == Some(&'\n') {
                                it.next();
                                dropped += 1;
                            }
                            out.push('\n');
                        } else {
                            out.push(c);
                        }
                    }
                    out
                }
            };
            (Pattern::from_symbols(chars.into_iter().map(Symbol::from_char)), dropped)
        }
        SymbolMode::Byte => {
            let (bytes, dropped) = apply_newline_bytes(data, policy.newline);
            (Pattern::from_bytes(&bytes), dropped)
        }
        SymbolMode::Bit => {
            let (bytes, dropped_bytes) = apply_newline_bytes(data, policy.newline);
            let mut bits = Vec::with_capacity(bytes.len() * 8);
            for &b in &bytes {
                for shift in (0..8).rev() {
                    bits.push(Symbol::from_byte(b'0' + ((b >> shift) & 1)));
                }
            }
            (Pattern::from_symbols(bits), dropped_bytes * 8)
        }
        SymbolMode::TokenWidth(width) => {
            if width == 0 {
                return Err(IngestError::InvalidTokenWidth);
            }
            let (bytes, dropped_bytes) = apply_newline_bytes(data, policy.newline);
            let tokens = bytes.chunks_exact(width);
            let partial = usize::from(!tokens.remainder().is_empty());
            let pattern =
                Pattern::from_symbols(tokens.map(|chunk| Symbol::new(chunk.to_vec())));
            (pattern, dropped_bytes + partial)
        }
    };

    Ok(IngestReport { pattern, source_bytes, dropped_symbols, policy: policy.clone() })
}

/// Reads `path` as raw bytes and symbolizes them; identical to
/// [`ingest_bytes`] on the file's contents.
pub fn ingest_file(
    path: impl AsRef<Path>,
    policy: &SymbolizationPolicy,
) -> Result<IngestReport, IngestError> {
    let path = path.as_ref();
    let data = std::fs::read(path)
        .map_err(|source| IngestError::Io { path: path.to_path_buf(), source })?;
    ingest_bytes(&data, policy)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_mode_is_msb_first() {
        let report = ingest_bytes(&[0xB0], &SymbolizationPolicy::new(SymbolMode::Bit)).unwrap();
        assert_eq!(report.pattern, Pattern::from_text("10110000"));
        assert_eq!(report.dropped_symbols, 0);
        assert_eq!(report.source_bytes, 1);
    }

    #[test]
    fn utf8_char_strip_reproduces_the_repeating_text_fixture() {
        let text = "The sky is blue. The sky is blue. The sky is blue. \
                    The sky is blue. The sky is blue. The sky is blue.";
        let policy = SymbolizationPolicy::new(SymbolMode::Utf8Char);
        assert_eq!(policy.newline, NewlinePolicy::StripAll);
        let report = ingest_bytes(text.as_bytes(), &policy).unwrap();
        assert_eq!(report.pattern.len(), 101);
        assert_eq!(report.pattern.alphabet_size(), 12);
    }

    #[test]
    fn token_mode_drops_the_partial_tail() {
        let policy = SymbolizationPolicy::new(SymbolMode::TokenWidth(2));
        let report = ingest_bytes(&[1, 2, 3, 4, 5], &policy).unwrap();
        assert_eq!(report.pattern.len(), 2);
        assert_eq!(report.dropped_symbols, 1);
        assert!(matches!(
            ingest_bytes(&[1], &SymbolizationPolicy::new(SymbolMode::TokenWidth(0))),
            Err(IngestError::InvalidTokenWidth)
        ));
    }

    #[test]
    fn malformed_utf8_reports_the_offset() {
        let policy = SymbolizationPolicy::new(SymbolMode::Utf8Char);
        match ingest_bytes(b"ok\xffrest", &policy) {
            Err(IngestError::Decode { offset }) => assert_eq!(offset, 2),
            other => panic!("expected decode error, got {other:?}"),
        }
    }

    #[test]
    fn byte_mode_is_the_identity_on_length() {
        let data: Vec<u8> = (0..=255).cycle().take(10_000).collect();
        let report = ingest_bytes(&data, &SymbolizationPolicy::new(SymbolMode::Byte)).unwrap();
        assert_eq!(report.pattern.len(), 10_000);
        assert_eq!(report.pattern.canonical_bytes(), data);
    }

    #[test]
    fn empty_input_gives_the_empty_report() {
        let report = ingest_bytes(&[], &SymbolizationPolicy::new(SymbolMode::Byte)).unwrap();
        assert!(report.pattern.is_empty());
        assert_eq!(report.source_bytes, 0);
        assert_eq!(report.dropped_symbols, 0);
    }

    #[test]
    fn bit_mode_length_is_eight_times_byte_mode() {
        let data = b"any bytes\nwith newline".to_vec();
        let bits = ingest_bytes(&data, &SymbolizationPolicy::new(SymbolMode::Bit)).unwrap();
        let bytes = ingest_bytes(&data, &SymbolizationPolicy::new(SymbolMode::Byte)).unwrap();
        assert_eq!(bits.pattern.len(), 8 * bytes.pattern.len());
    }

    #[test]
    fn newline_normalization_accounts_for_merged_crlf() {
        let policy =
            SymbolizationPolicy::new(SymbolMode::Byte).with_newline(NewlinePolicy::NormalizeToLf);
        let report = ingest_bytes(b"a\r\nb\rc\n", &policy).unwrap();
        assert_eq!(report.pattern.canonical_bytes(), b"a\nb\nc\n".to_vec());
        assert_eq!(report.dropped_symbols, 1);
        assert_eq!(report.pattern.len() + report.dropped_symbols, report.source_bytes);
    }

    #[test]
    fn strip_all_accounting_covers_the_input() {
        let policy =
            SymbolizationPolicy::new(SymbolMode::Byte).with_newline(NewlinePolicy::StripAll);
        let report = ingest_bytes(b"a\nb\r\nc", &policy).unwrap();
        assert_eq!(report.pattern.len(), 3);
        assert_eq!(report.dropped_symbols, 3);
        assert_eq!(report.pattern.len() + report.dropped_symbols, report.source_bytes);
    }
}
