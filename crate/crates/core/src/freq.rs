//! Symbol occurrence counts and relative frequencies.

use crate::pattern::Pattern;
use crate::symbol::Symbol;

/// Occurrence counts `f(x)` for every distinct symbol of a pattern, with the
/// total `N`. Iteration order is the alphabet's lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    symbols: Vec<Symbol>,
    counts: Vec<u64>,
    total: u64,
}

impl FrequencyTable {
    /// N: the pattern length the counts sum to.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of distinct symbols with a nonzero count.
    pub fn distinct(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// f(x); 0 for symbols that never occur.
    pub fn count(&self, symbol: &Symbol) -> u64 {
        match self.symbols.binary_search(symbol) {
            Ok(i) => self.counts[i],
            Err(_) => 0,
        }
    }

    /// p(x) = f(x)/N. Defined only for occurring symbols; returns `None`
    /// otherwise (and for the empty pattern).
    pub fn relative(&self, symbol: &Symbol) -> Option<f64> {
        match self.count(symbol) {
            0 => None,
            c => Some(c as f64 / self.total as f64),
        }
    }

    /// `(symbol, count)` pairs in lexicographic symbol order.
    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, u64)> + '_ {
        self.symbols.iter().zip(self.counts.iter().copied())
    }

    /// Counts in lexicographic symbol order.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

/// Counts how often each distinct symbol occurs in `pattern`.
pub fn frequencies(pattern: &Pattern) -> FrequencyTable {
    let k = pattern.alphabet_size();
    let mut counts = vec![0u64; k];
    for &id in pattern.ids() {
        counts[id as usize] += 1;
    }
    FrequencyTable {
        symbols: pattern.alphabet().symbols().to_vec(),
        counts,
        total: pattern.len() as u64,
    }
}
