//! Symbols and alphabets.
//!
//! A [`Symbol`] is an opaque token identified by its canonical byte string.
//! Equality is bit-exact and symbols order lexicographically on those bytes,
//! which keeps every downstream table and report deterministic.

use std::fmt;

use serde::Serialize;

/// An opaque token: a non-empty canonical byte string.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Box<[u8]>);

impl Symbol {
    /// Builds a symbol from its canonical bytes.
    ///
    /// Panics if `bytes` is empty; a symbol always carries at least one byte.
    pub fn new(bytes: impl Into<Box<[u8]>>) -> Self {
        let bytes = bytes.into();
        assert!(!bytes.is_empty(), "a Symbol must have at least one byte");
        Symbol(bytes)
    }

    /// Single-byte symbol.
    pub fn from_byte(b: u8) -> Self {
        Symbol(Box::new([b]))
    }

    /// Symbol for one Unicode code point (its UTF-8 bytes).
    pub fn from_char(c: char) -> Self {
        let mut buf = [0u8; 4];
        Symbol::new(c.encode_utf8(&mut buf).as_bytes())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match std::str::from_utf8(&self.0) {
            Ok(s) => write!(f, "Symbol({s:?})"),
            Err(_) => write!(f, "Symbol(0x{})", hex(&self.0)),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match std::str::from_utf8(&self.0) {
            Ok(s) => f.write_str(s),
            Err(_) => write!(f, "0x{}", hex(&self.0)),
        }
    }
}

impl Serialize for Symbol {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// The ordered set of distinct symbols a pattern draws from.
///
/// Symbols are kept sorted lexicographically, so the alphabet (and anything
/// iterated from it) is deterministic for a given symbol multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
}

impl Alphabet {
    /// Builds an alphabet from arbitrary symbols; duplicates collapse.
    pub fn from_symbols(symbols: impl IntoIterator<Item = Symbol>) -> Self {
        let mut symbols: Vec<Symbol> = symbols.into_iter().collect();
        symbols.sort_unstable();
        symbols.dedup();
        Alphabet { symbols }
    }

    pub(crate) fn from_sorted_unique(symbols: Vec<Symbol>) -> Self {
        debug_assert!(symbols.windows(2).all(|w| w[0] < w[1]));
        Alphabet { symbols }
    }

    pub fn empty() -> Self {
        Alphabet { symbols: Vec::new() }
    }

    /// K, the number of distinct symbols.
    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbols in lexicographic order.
    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Index of `symbol` in lexicographic order, if present.
    pub fn index_of(&self, symbol: &Symbol) -> Option<usize> {
        self.symbols.binary_search(symbol).ok()
    }

    pub fn contains(&self, symbol: &Symbol) -> bool {
        self.index_of(symbol).is_some()
    }
}
