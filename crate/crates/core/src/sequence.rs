use std::fmt;

use crate::error::Error;

/// Longest accepted input, chosen so every length fits in an `i32` DP cell.
pub const MAX_SEQUENCE_LEN: usize = i32::MAX as usize;

/// An input string over a byte alphabet. Immutable once constructed; all
/// formulas treat it as 1-indexed but the storage is an ordinary byte slice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    symbols: Vec<u8>,
}

impl Sequence {
    pub fn new(symbols: impl Into<Vec<u8>>) -> Result<Self, Error> {
        let symbols = symbols.into();
        if symbols.len() > MAX_SEQUENCE_LEN {
            return Err(Error::SequenceTooLong { len: symbols.len() });
        }
        Ok(Self { symbols })
    }

    pub fn empty() -> Self {
        Self {
            symbols: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }
}

impl AsRef<[u8]> for Sequence {
    fn as_ref(&self) -> &[u8] {
        &self.symbols
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", String::from_utf8_lossy(&self.symbols))
    }
}
