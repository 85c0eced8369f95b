//! Plain bitvector with precomputed per-word prefix counts for `rank1`.

use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct RankBitVec {
    words: Vec<u64>,
    // ones before each word
    counts: Vec<u32>,
    len: usize,
}

impl RankBitVec {
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0u64);
            }
            if b {
                *words.last_mut().unwrap() |= 1 << (len % 64);
            }
            len += 1;
        }
        let mut counts = Vec::with_capacity(words.len());
        let mut acc = 0u32;
        for w in &words {
            counts.push(acc);
            acc += w.count_ones();
        }
        RankBitVec { words, counts, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Number of ones in `[0, i)`. `i` may equal `len`.
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        let w = i / 64;
        if w == self.words.len() {
            return self.count_ones();
        }
        let mask = (1u64 << (i % 64)) - 1;
        self.counts[w] as usize + (self.words[w] & mask).count_ones() as usize
    }

    pub fn count_ones(&self) -> usize {
        match self.words.last() {
            Some(w) => *self.counts.last().unwrap() as usize + w.count_ones() as usize,
            None => 0,
        }
    }

    /// Physical size in bits including the count directory.
    pub fn size_bits(&self) -> usize {
        self.words.len() * 64 + self.counts.len() * 32
    }
}
