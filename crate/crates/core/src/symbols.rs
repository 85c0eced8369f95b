//! Mapping between raw bytes and the internal symbol alphabet.
//!
//! The sentinel is symbol `0`; user symbols are `1..=sigma` in byte order, so
//! the sentinel is smaller than every symbol by plain integer comparison.

use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Symbol = u16;

/// Terminator appended to every text.
pub const SENTINEL: Symbol = 0;
/// Marks a don't-care position inside a symbol sequence.
pub const WILDCARD: Symbol = Symbol::MAX - 1;
/// A pattern byte that does not belong to the text alphabet. It compares
/// greater than every text symbol and never matches.
pub const FOREIGN: Symbol = Symbol::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphabetSpec {
    /// Use exactly the bytes occurring in the text.
    Infer,
    /// Use the given bytes; the text must not contain any other byte.
    Explicit(Vec<u8>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Alphabet {
    bytes: Vec<u8>,
    map: Vec<Symbol>,
}

impl Alphabet {
    pub fn new(mut bytes: Vec<u8>) -> Result<Self> {
        bytes.sort_unstable();
        bytes.dedup();
        if bytes.is_empty() {
            return Err(Error::EmptyText);
        }
        let mut map = alloc::vec![FOREIGN; 256];
        for (i, &b) in bytes.iter().enumerate() {
            map[b as usize] = (i + 1) as Symbol;
        }
        Ok(Alphabet { bytes, map })
    }

    pub fn infer(text: &[u8]) -> Result<Self> {
        let mut seen = [false; 256];
        for &b in text {
            seen[b as usize] = true;
        }
        let bytes = (0..=255u8).filter(|&b| seen[b as usize]).collect();
        Alphabet::new(bytes)
    }

    /// `sigma`, the number of symbols excluding the sentinel.
    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Symbol of `byte`, or [`FOREIGN`] when the byte is not in the alphabet.
    pub fn symbol(&self, byte: u8) -> Symbol {
        self.map[byte as usize]
    }

    pub fn byte(&self, sym: Symbol) -> Option<u8> {
        if sym == SENTINEL || sym as usize > self.bytes.len() {
            None
        } else {
            Some(self.bytes[sym as usize - 1])
        }
    }

    /// Maps a text, rejecting bytes outside the alphabet.
    pub fn encode_text(&self, raw: &[u8]) -> Result<Vec<Symbol>> {
        raw.iter()
            .enumerate()
            .map(|(offset, &byte)| match self.symbol(byte) {
                FOREIGN => Err(Error::SymbolOutsideAlphabet { offset, byte }),
                s => Ok(s),
            })
            .collect()
    }

    /// Maps a literal, turning unknown bytes into [`FOREIGN`].
    pub fn encode_literal(&self, raw: &[u8]) -> Vec<Symbol> {
        raw.iter().map(|&b| self.symbol(b)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols_follow_byte_order() {
        let a = Alphabet::infer(b"banana").unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.symbol(b'a'), 1);
        assert_eq!(a.symbol(b'b'), 2);
        assert_eq!(a.symbol(b'n'), 3);
        assert_eq!(a.symbol(b'z'), FOREIGN);
        assert_eq!(a.byte(3), Some(b'n'));
        assert_eq!(a.byte(SENTINEL), None);
    }

    #[test]
    fn explicit_alphabet_rejects_foreign_bytes() {
        let a = Alphabet::new(b"ab".to_vec()).unwrap();
        assert_eq!(
            a.encode_text(b"abca"),
            Err(Error::SymbolOutsideAlphabet { offset: 2, byte: b'c' })
        );
    }
}
