use crate::{Error, Result};

/// A finite, ordered byte alphabet with a designated padding symbol.
///
/// The padding symbol fills the initial fixed-size window: before any input
/// arrives, a window of size `n` reads as `n` copies of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<u8>,
    padding: u8,
}

impl Alphabet {
    /// Builds an alphabet from distinct symbols; `padding` must be one of them.
    pub fn new(symbols: &[u8], padding: u8) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::Syntax {
                position: 0,
                message: "alphabet must be nonempty".into(),
            });
        }
        let mut seen = [false; 256];
        for &s in symbols {
            if seen[s as usize] {
                return Err(Error::Syntax {
                    position: 0,
                    message: format!("duplicate alphabet symbol '{}'", s as char),
                });
            }
            seen[s as usize] = true;
        }
        if !seen[padding as usize] {
            return Err(Error::Syntax {
                position: 0,
                message: format!("padding symbol '{}' not in alphabet", padding as char),
            });
        }
        Ok(Self {
            symbols: symbols.to_vec(),
            padding,
        })
    }

    /// Alphabet whose padding symbol is its first symbol.
    pub fn with_default_padding(symbols: &[u8]) -> Result<Self> {
        let padding = *symbols.first().ok_or_else(|| Error::Syntax {
            position: 0,
            message: "alphabet must be nonempty".into(),
        })?;
        Self::new(symbols, padding)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn padding(&self) -> u8 {
        self.padding
    }

    pub fn contains(&self, symbol: u8) -> bool {
        self.symbols.contains(&symbol)
    }

    /// Index of `symbol` in the alphabet order.
    pub fn index_of(&self, symbol: u8) -> Option<usize> {
        self.symbols.iter().position(|&s| s == symbol)
    }

    /// Bits of one symbol under the canonical byte serialization.
    pub fn symbol_bits(&self) -> u64 {
        8
    }
}
