//! Pattern-side machinery: the KMP failure array, the suffix-prefix overlap
//! function `sigma`, and the precomputed transition table `lambda`.
//!
//! For a pattern P, `sigma(S)` is the length of the longest suffix of S that
//! is also a prefix of P. A partial solution of the DP is summarized entirely
//! by its sigma value, its "state". `lambda(k, a)` tabulates
//! `sigma(P[1..k] ++ a)` so the solvers can step states in O(1).

use crate::error::Error;
use crate::sequence::MAX_SEQUENCE_LEN;

/// KMP failure array with the conventional `-1` sentinel at index 0.
///
/// `values[i]` for 1 <= i <= r is the length of the longest proper prefix of
/// P[1..i] that is also a suffix of it, e.g. for P = "ababaa":
///
///   i      1 2 3 4 5 6
///   prefix a ab aba abab ababa ababaa
///   value  0 0  1   2     3     1
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixFunction {
    values: Vec<i32>,
}

impl PrefixFunction {
    /// Builds the failure array in O(r) amortized symbol comparisons.
    pub fn build(pattern: &[u8]) -> Self {
        debug_assert!(!pattern.is_empty());
        let r = pattern.len();
        let mut values = vec![0i32; r + 1];
        values[0] = -1;
        // values[1] stays 0: a one-symbol prefix has no proper prefix.
        let mut k: i32 = 0;
        for i in 2..=r {
            while k >= 0 && pattern[k as usize] != pattern[i - 1] {
                k = values[k as usize];
            }
            k += 1;
            values[i] = k;
        }
        Self { values }
    }

    /// Failure value for prefix length `i`; `at(0)` is the `-1` sentinel.
    pub fn at(&self, i: usize) -> i32 {
        self.values[i]
    }

    /// The whole array, index 0..=r.
    pub fn values(&self) -> &[i32] {
        &self.values
    }
}

const NO_COLUMN: u16 = u16::MAX;

/// `lambda(k, a) = sigma(P[1..k] ++ a)` for every state `k < r` and symbol
/// `a`. Symbols absent from the pattern share one all-zero row, so lookups
/// stay O(1) without a 256-wide table per state. Entries are symbol-major:
/// the solvers walk all states of one symbol per cell, so that row must be
/// contiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionTable {
    states: usize,
    alphabet: Vec<u8>,
    column: Box<[u16; 256]>,
    entries: Vec<u32>,
    zero_row: Vec<u32>,
}

impl TransitionTable {
    /// Fills the table state by state: state 0 by inspection, state t from
    /// the failure state `kmp(t)` whenever the symbol does not extend the
    /// prefix. Each (state, symbol) pair is touched exactly once.
    pub fn build(pattern: &[u8], prefix: &PrefixFunction) -> Self {
        debug_assert!(!pattern.is_empty());
        let r = pattern.len();
        let mut column = Box::new([NO_COLUMN; 256]);
        let mut alphabet = Vec::new();
        for &a in pattern {
            if column[a as usize] == NO_COLUMN {
                column[a as usize] = alphabet.len() as u16;
                alphabet.push(a);
            }
        }
        let mut entries = vec![0u32; r * alphabet.len()];
        entries[column[pattern[0] as usize] as usize * r] = 1;
        for t in 1..r {
            for (c, &a) in alphabet.iter().enumerate() {
                entries[c * r + t] = if a == pattern[t] {
                    (t + 1) as u32
                } else {
                    let fallback = prefix.at(t) as usize;
                    entries[c * r + fallback]
                };
            }
        }
        Self {
            states: r,
            alphabet,
            column,
            entries,
            zero_row: vec![0; r],
        }
    }

    /// `sigma(P[1..state] ++ symbol)` in O(1); `state` must be below r.
    pub fn next_state(&self, state: usize, symbol: u8) -> usize {
        debug_assert!(state < self.states);
        self.symbol_row(symbol)[state] as usize
    }

    /// All transitions on `symbol` as one slice indexed by state; symbols
    /// absent from the pattern get the shared zero row.
    pub fn symbol_row(&self, symbol: u8) -> &[u32] {
        match self.column[symbol as usize] {
            NO_COLUMN => &self.zero_row,
            c => {
                let start = c as usize * self.states;
                &self.entries[start..start + self.states]
            }
        }
    }

    /// Distinct pattern symbols, in first-occurrence order.
    pub fn alphabet(&self) -> &[u8] {
        &self.alphabet
    }
}

/// The forbidden substring P (length r >= 1) bundled with its precomputed
/// failure array and transition table. Immutable and freely shareable across
/// concurrent solves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintPattern {
    symbols: Vec<u8>,
    prefix: PrefixFunction,
    transitions: TransitionTable,
}

impl ConstraintPattern {
    /// Rejects the empty pattern: the empty string is a substring of every
    /// string, so no sequence could exclude it.
    pub fn new(symbols: impl Into<Vec<u8>>) -> Result<Self, Error> {
        let symbols = symbols.into();
        if symbols.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if symbols.len() > MAX_SEQUENCE_LEN {
            return Err(Error::SequenceTooLong { len: symbols.len() });
        }
        let prefix = PrefixFunction::build(&symbols);
        let transitions = TransitionTable::build(&symbols, &prefix);
        Ok(Self {
            symbols,
            prefix,
            transitions,
        })
    }

    /// Pattern length r. Always at least 1.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn prefix_function(&self) -> &PrefixFunction {
        &self.prefix
    }

    pub fn transitions(&self) -> &TransitionTable {
        &self.transitions
    }

    /// `sigma(P[1..state] ++ symbol)` by walking failure links until a symbol
    /// match or the `-1` sentinel. Accepts any matched-prefix length up to r
    /// inclusive, so it can also step through strings that contain P.
    pub fn sigma(&self, state: usize, symbol: u8) -> usize {
        debug_assert!(state <= self.len());
        let r = self.len();
        let mut k = state as i32;
        loop {
            if k < 0 {
                return 0;
            }
            let ku = k as usize;
            if ku < r && self.symbols[ku] == symbol {
                return ku + 1;
            }
            k = self.prefix.at(ku);
        }
    }

    /// `sigma(s)`: the matched-prefix state after scanning `s` from the empty
    /// state.
    pub fn sigma_scan(&self, s: &[u8]) -> usize {
        s.iter().fold(0, |state, &c| self.sigma(state, c))
    }

    /// Table-backed transition; `state` must be below r.
    pub fn lambda(&self, state: usize, symbol: u8) -> usize {
        self.transitions.next_state(state, symbol)
    }
}
