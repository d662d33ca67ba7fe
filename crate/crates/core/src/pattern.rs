//! Patterns: finite symbol sequences, and their block partitions.

use std::collections::HashMap;

use crate::error::MeasureError;
use crate::symbol::{Alphabet, Symbol};

/// A finite, immutable sequence of symbols over a finite alphabet.
///
/// Internally each position stores an index into the (lexicographically
/// sorted) alphabet, so long patterns stay compact and block comparisons
/// reduce to integer slice comparisons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    ids: Vec<u32>,
    alphabet: Alphabet,
}

impl Pattern {
    pub fn empty() -> Self {
        Pattern { ids: Vec::new(), alphabet: Alphabet::empty() }
    }

    /// Interns an arbitrary symbol sequence.
    pub fn from_symbols(symbols: impl IntoIterator<Item = Symbol>) -> Self {
        let symbols: Vec<Symbol> = symbols.into_iter().collect();
        let mut distinct: Vec<Symbol> = symbols.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let index: HashMap<&Symbol, u32> =
            distinct.iter().enumerate().map(|(i, s)| (s, i as u32)).collect();
        let ids = symbols.iter().map(|s| index[s]).collect();
        Pattern { ids, alphabet: Alphabet::from_sorted_unique(distinct) }
    }

    /// One symbol per Unicode code point. Combining sequences are not merged.
    pub fn from_text(text: &str) -> Self {
        Pattern::from_symbols(text.chars().map(Symbol::from_char))
    }

    /// One symbol per byte.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        Pattern::from_symbols(bytes.iter().copied().map(Symbol::from_byte))
    }

    /// N, the number of symbols.
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// K for the observed alphabet.
    pub fn alphabet_size(&self) -> usize {
        self.alphabet.size()
    }

    pub fn symbol_at(&self, index: usize) -> &Symbol {
        &self.alphabet.symbols()[self.ids[index] as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Symbol> + '_ {
        self.ids.iter().map(move |&id| &self.alphabet.symbols()[id as usize])
    }

    /// The pattern read back to front.
    pub fn reversed(&self) -> Pattern {
        let mut ids = self.ids.clone();
        ids.reverse();
        Pattern { ids, alphabet: self.alphabet.clone() }
    }

    /// Concatenation `self ‖ other`. Alphabets merge (and ids re-intern).
    pub fn concat(&self, other: &Pattern) -> Pattern {
        Pattern::from_symbols(self.iter().chain(other.iter()).cloned())
    }

    /// `self` repeated `times` times.
    pub fn repeat(&self, times: usize) -> Pattern {
        let mut ids = Vec::with_capacity(self.ids.len() * times);
        for _ in 0..times {
            ids.extend_from_slice(&self.ids);
        }
        Pattern { ids, alphabet: self.alphabet.clone() }
    }

    /// Concatenated canonical bytes of every symbol, in order.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for symbol in self.iter() {
            out.extend_from_slice(symbol.as_bytes());
        }
        out
    }

    pub(crate) fn ids(&self) -> &[u32] {
        &self.ids
    }
}

/// A contiguous run of `scale` symbols inside a pattern.
///
/// Blocks compare by content, never by position, so a block can stand in for
/// a symbol of the coarser-scale pattern.
#[derive(Clone, Copy)]
pub struct Block<'a> {
    pattern: &'a Pattern,
    start: usize,
    len: usize,
}

impl<'a> Block<'a> {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn symbols(&self) -> impl Iterator<Item = &'a Symbol> + 'a {
        let pattern = self.pattern;
        pattern.ids()[self.start..self.start + self.len]
            .iter()
            .map(move |&id| &pattern.alphabet().symbols()[id as usize])
    }

    /// Canonical bytes of the block content.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for symbol in self.symbols() {
            out.extend_from_slice(symbol.as_bytes());
        }
        out
    }

    pub(crate) fn ids(&self) -> &[u32] {
        &self.pattern.ids()[self.start..self.start + self.len]
    }
}

impl PartialEq for Block<'_> {
    fn eq(&self, other: &Self) -> bool {
        if std::ptr::eq(self.pattern, other.pattern) {
            return self.ids() == other.ids();
        }
        self.len == other.len && self.symbols().eq(other.symbols())
    }
}

impl Eq for Block<'_> {}

impl std::fmt::Debug for Block<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Block[")?;
        for symbol in self.symbols() {
            write!(f, "{symbol}")?;
        }
        write!(f, "]")
    }
}

/// The scale-`r` partition of a pattern: `m = ⌊N/r⌋` full blocks, with the
/// trailing `N mod r` symbols dropped.
#[derive(Clone, Copy)]
pub struct Partition<'a> {
    pattern: &'a Pattern,
    scale: usize,
    num_blocks: usize,
}

impl<'a> Partition<'a> {
    pub fn scale(&self) -> usize {
        self.scale
    }

    /// m, the number of full blocks.
    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    /// Symbols discarded from the truncated tail.
    pub fn dropped(&self) -> usize {
        self.pattern.len() - self.num_blocks * self.scale
    }

    pub fn block(&self, index: usize) -> Block<'a> {
        assert!(index < self.num_blocks, "block index out of range");
        Block { pattern: self.pattern, start: index * self.scale, len: self.scale }
    }

    pub fn blocks(&self) -> impl Iterator<Item = Block<'a>> + 'a {
        let pattern = self.pattern;
        let scale = self.scale;
        (0..self.num_blocks).map(move |j| Block { pattern, start: j * scale, len: scale })
    }
}

/// Splits `pattern` into consecutive blocks of exactly `scale` symbols,
/// discarding the truncated tail.
pub fn partition(pattern: &Pattern, scale: usize) -> Result<Partition<'_>, MeasureError> {
    if scale == 0 || scale > pattern.len() {
        return Err(MeasureError::InvalidScale { scale, len: pattern.len() });
    }
    Ok(Partition { pattern, scale, num_blocks: pattern.len() / scale })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let p = Pattern::from_text("abcdef");
        let part = partition(&p, 2).unwrap();
        assert_eq!(part.num_blocks(), 3);
        assert_eq!(part.dropped(), 0);
        let contents: Vec<Vec<u8>> = part.blocks().map(|b| b.canonical_bytes()).collect();
        assert_eq!(contents, vec![b"ab".to_vec(), b"cd".to_vec(), b"ef".to_vec()]);
    }

    #[test]
    fn truncated_tail_dropped() {
        let p = Pattern::from_text("abcde");
        let part = partition(&p, 2).unwrap();
        assert_eq!(part.num_blocks(), 2);
        assert_eq!(part.dropped(), 1);
        let contents: Vec<Vec<u8>> = part.blocks().map(|b| b.canonical_bytes()).collect();
        assert_eq!(contents, vec![b"ab".to_vec(), b"cd".to_vec()]);
    }

    #[test]
    fn invalid_scales_error() {
        let p = Pattern::from_text("abc");
        assert!(matches!(partition(&p, 0), Err(MeasureError::InvalidScale { .. })));
        assert!(matches!(partition(&p, 4), Err(MeasureError::InvalidScale { .. })));
        assert!(partition(&Pattern::empty(), 1).is_err());
    }

    #[test]
    fn blocks_compare_by_content() {
        let p = Pattern::from_text("abab");
        let part = partition(&p, 2).unwrap();
        assert_eq!(part.block(0), part.block(1));

        let q = Pattern::from_text("xyab");
        let qpart = partition(&q, 2).unwrap();
        // Cross-pattern comparison goes through symbols, not ids.
        assert_eq!(part.block(0), qpart.block(1));
        assert_ne!(part.block(0), qpart.block(0));
    }

    #[test]
    fn repeat_and_reverse() {
        let p = Pattern::from_text("10");
        assert_eq!(p.repeat(3), Pattern::from_text("101010"));
        assert_eq!(p.reversed(), Pattern::from_text("01"));
        assert_eq!(Pattern::from_text("ab").concat(&Pattern::from_text("ba")).len(), 4);
    }

    #[test]
    fn canonical_bytes_round_trip() {
        let p = Pattern::from_bytes(b"\x00\xff\x10");
        assert_eq!(p.canonical_bytes(), b"\x00\xff\x10".to_vec());
    }
}
