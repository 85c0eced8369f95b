//! Wildcard patterns `?^{k1} P1 ?^{k2} P2 ... ?^{kd} Pd`.

use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbols::{Alphabet, Symbol, SENTINEL, WILDCARD};

/// A run of `wildcards` don't-care symbols followed by a literal piece.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Piece {
    pub wildcards: usize,
    pub literal: Vec<Symbol>,
}

/// A normalized wildcard pattern. Only the last piece may have an empty
/// literal, and only the first piece may have no wildcards.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct WildcardPattern {
    pieces: Vec<Piece>,
}

impl WildcardPattern {
    /// Builds a pattern from `(k_i, P_i)` pairs, merging pieces around empty
    /// literals. Literals must not contain the sentinel or the wildcard
    /// symbol.
    pub fn from_pieces<I: IntoIterator<Item = (usize, Vec<Symbol>)>>(pieces: I) -> Result<Self> {
        let mut out: Vec<Piece> = Vec::new();
        let mut pending = 0;
        for (k, lit) in pieces {
            if lit.iter().any(|&c| c == SENTINEL || c == WILDCARD) {
                return Err(Error::Contract("literal piece contains a reserved symbol"));
            }
            pending += k;
            if lit.is_empty() {
                continue;
            }
            if pending == 0 {
                if let Some(last) = out.last_mut() {
                    last.literal.extend_from_slice(&lit);
                    continue;
                }
            }
            out.push(Piece {
                wildcards: pending,
                literal: lit,
            });
            pending = 0;
        }
        if pending > 0 {
            out.push(Piece {
                wildcards: pending,
                literal: Vec::new(),
            });
        }
        Ok(WildcardPattern { pieces: out })
    }

    /// Builds a pattern from a symbol sequence in which [`WILDCARD`] stands
    /// for one don't-care symbol.
    pub fn from_symbols(units: &[Symbol]) -> Result<Self> {
        let mut pieces = Vec::new();
        let mut k = 0;
        let mut lit = Vec::new();
        for &c in units {
            if c == WILDCARD {
                if !lit.is_empty() {
                    pieces.push((k, core::mem::take(&mut lit)));
                    k = 0;
                }
                k += 1;
            } else {
                lit.push(c);
            }
        }
        pieces.push((k, lit));
        Self::from_pieces(pieces)
    }

    /// Parses the pattern syntax: `?` is one wildcard, `?{k}` a run of `k`
    /// wildcards, and a backslash makes the next byte literal. Literal bytes
    /// are mapped through `alphabet`; bytes outside it become
    /// [`FOREIGN`](crate::symbols::FOREIGN) and match nothing.
    pub fn parse(src: &[u8], alphabet: &Alphabet) -> Result<Self> {
        let mut units = Vec::with_capacity(src.len());
        let mut i = 0;
        while i < src.len() {
            match src[i] {
                b'\\' => {
                    let Some(&b) = src.get(i + 1) else {
                        return Err(Error::PatternSyntax {
                            offset: i,
                            reason: "trailing backslash",
                        });
                    };
                    units.push(alphabet.symbol(b));
                    i += 2;
                }
                b'?' if src.get(i + 1) == Some(&b'{') => {
                    let close = src[i + 2..].iter().position(|&b| b == b'}').ok_or(Error::PatternSyntax {
                        offset: i,
                        reason: "unterminated wildcard count",
                    })?;
                    let digits = &src[i + 2..i + 2 + close];
                    if digits.is_empty() || !digits.iter().all(u8::is_ascii_digit) || digits.len() > 9 {
                        return Err(Error::PatternSyntax {
                            offset: i + 2,
                            reason: "wildcard count must be a decimal number",
                        });
                    }
                    let k = digits.iter().fold(0usize, |acc, &d| acc * 10 + (d - b'0') as usize);
                    units.extend(core::iter::repeat_n(WILDCARD, k));
                    i += close + 3;
                }
                b'?' => {
                    units.push(WILDCARD);
                    i += 1;
                }
                b => {
                    units.push(alphabet.symbol(b));
                    i += 1;
                }
            }
        }
        Self::from_symbols(&units)
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Number of literal symbols.
    pub fn literal_len(&self) -> usize {
        self.pieces.iter().map(|p| p.literal.len()).sum()
    }

    /// Number of wildcards.
    pub fn wildcard_count(&self) -> usize {
        self.pieces.iter().map(|p| p.wildcards).sum()
    }

    /// Number of pieces.
    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    /// Total length in symbols.
    pub fn len(&self) -> usize {
        self.literal_len() + self.wildcard_count()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// The pattern as one symbol per position, [`WILDCARD`] for don't-cares.
    pub fn to_symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::with_capacity(self.len());
        for p in &self.pieces {
            out.extend(core::iter::repeat_n(WILDCARD, p.wildcards));
            out.extend_from_slice(&p.literal);
        }
        out
    }

    /// Whether the pattern matches `text` at `pos`. Wildcards match every
    /// symbol except the sentinel.
    pub fn matches_at(&self, text: &[Symbol], pos: usize) -> bool {
        let units = self.to_symbols();
        pos + units.len() <= text.len()
            && units
                .iter()
                .zip(&text[pos..])
                .all(|(&p, &t)| if p == WILDCARD { t != SENTINEL } else { p == t })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::FOREIGN;

    fn abn() -> Alphabet {
        Alphabet::new(b"abn".to_vec()).unwrap()
    }

    #[test]
    fn parse_syntax() {
        let al = abn();
        let p = WildcardPattern::parse(b"a?{2}n?", &al).unwrap();
        assert_eq!(p.pieces(), &[
            Piece { wildcards: 0, literal: alloc::vec![1] },
            Piece { wildcards: 2, literal: alloc::vec![3] },
            Piece { wildcards: 1, literal: alloc::vec![] },
        ]);
        assert_eq!((p.literal_len(), p.wildcard_count(), p.piece_count()), (2, 3, 3));
        let q = WildcardPattern::parse(b"\\?a", &al).unwrap();
        assert_eq!(q.to_symbols(), [FOREIGN, 1]);
        assert!(WildcardPattern::parse(b"a\\", &al).is_err());
        assert!(WildcardPattern::parse(b"?{x}", &al).is_err());
        assert!(WildcardPattern::parse(b"?{3", &al).is_err());
        assert!(WildcardPattern::parse(b"", &al).unwrap().is_empty());
    }

    #[test]
    fn normalization_merges_wildcard_runs() {
        let p = WildcardPattern::from_pieces([(1, alloc::vec![]), (2, alloc::vec![1]), (0, alloc::vec![2]), (0, alloc::vec![])]).unwrap();
        assert_eq!(p.pieces(), &[Piece { wildcards: 3, literal: alloc::vec![1, 2] }]);
        let wild = WildcardPattern::parse(b"?{0}??", &abn()).unwrap();
        assert_eq!(wild.pieces(), &[Piece { wildcards: 2, literal: alloc::vec![] }]);
        assert!(WildcardPattern::from_pieces([(0, alloc::vec![0])]).is_err());
    }

    #[test]
    fn matching_never_uses_the_sentinel() {
        let al = abn();
        // "banana$"
        let text = [2, 1, 3, 1, 3, 1, 0];
        let p = WildcardPattern::parse(b"a?", &al).unwrap();
        let hits: Vec<usize> = (0..text.len()).filter(|&i| p.matches_at(&text, i)).collect();
        assert_eq!(hits, [1, 3]);
    }
}
