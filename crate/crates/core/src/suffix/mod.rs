//! Text, suffix array, inverse suffix array and LCP array.

mod pattern;

pub use pattern::{PatternEntry, PatternHandle};

use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::bits::RankBitVec;
use crate::error::{check_range, Error, Result};
use crate::rmq::SparseTable;
use crate::stats::QueryStats;
use crate::symbols::{Alphabet, AlphabetSpec, Symbol, SENTINEL};

/// How much of the suffix array and its inverse is materialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum SaSampling {
    /// Both permutations are stored in full.
    Full,
    /// Only entries at text positions divisible by the step are stored; the
    /// rest are recovered by walking `psi`.
    Every(usize),
}

impl SaSampling {
    pub fn step(self) -> usize {
        match self {
            SaSampling::Full => 1,
            SaSampling::Every(s) => s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
enum SuffixStore {
    Plain {
        sa: Vec<u32>,
        isa: Vec<u32>,
    },
    Sampled {
        step: usize,
        // psi[r] = isa[sa[r] + 1]; the entry for the sentinel suffix is unused
        psi: Vec<u32>,
        // ranks whose position is a multiple of `step` or the last position
        marks: RankBitVec,
        sa_samples: Vec<u32>,
        // isa of positions 0, step, 2*step, ...
        isa_samples: Vec<u32>,
    },
}

/// The suffix array, its inverse and the LCP array of a text, stored
/// separately from the text so that the two can be serialized apart.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SuffixArrays {
    store: SuffixStore,
    lcp: Vec<u32>,
    rmq: SparseTable,
}

impl SuffixArrays {
    fn len(&self) -> usize {
        self.lcp.len()
    }
}

/// The indexed text with its suffix array functionality.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct TextIndex {
    alphabet: Alphabet,
    text: Vec<Symbol>,
    arrays: SuffixArrays,
}

impl TextIndex {
    pub fn build(raw: &[u8], spec: &AlphabetSpec, sampling: SaSampling) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyText);
        }
        if raw.len() >= u32::MAX as usize - 1 {
            return Err(Error::Parameter("text too long for 32-bit ranks"));
        }
        let alphabet = match spec {
            AlphabetSpec::Infer => Alphabet::infer(raw)?,
            AlphabetSpec::Explicit(bytes) => Alphabet::new(bytes.clone())?,
        };
        let mut text = alphabet.encode_text(raw)?;
        text.push(SENTINEL);
        Self::from_symbols(alphabet, text, sampling)
    }

    fn from_symbols(alphabet: Alphabet, text: Vec<Symbol>, sampling: SaSampling) -> Result<Self> {
        let step = sampling.step();
        if step == 0 {
            return Err(Error::Parameter("sampling step must be at least 1"));
        }
        let sa = suffix_array(&text);
        let mut isa = alloc::vec![0u32; sa.len()];
        for (r, &p) in sa.iter().enumerate() {
            isa[p as usize] = r as u32;
        }
        let lcp = kasai(&text, &sa, &isa);
        let rmq = SparseTable::new(&lcp);
        let store = if step == 1 {
            SuffixStore::Plain { sa, isa }
        } else {
            sample(&sa, &isa, step)
        };
        Ok(TextIndex {
            alphabet,
            text,
            arrays: SuffixArrays { store, lcp, rmq },
        })
    }

    /// Reassembles an index from its text and arrays. Only sizes and the
    /// sentinel are checked; the arrays are trusted to belong to the text.
    pub fn from_parts(alphabet: Alphabet, text: Vec<Symbol>, arrays: SuffixArrays) -> Result<Self> {
        if text.last() != Some(&SENTINEL) || text[..text.len() - 1].contains(&SENTINEL) {
            return Err(Error::Contract("text must end with the only sentinel"));
        }
        if text.iter().any(|&c| c as usize > alphabet.len()) {
            return Err(Error::Contract("text symbol outside the alphabet"));
        }
        if arrays.len() != text.len() {
            return Err(Error::Contract("suffix arrays do not match the text length"));
        }
        Ok(TextIndex { alphabet, text, arrays })
    }

    pub fn arrays(&self) -> &SuffixArrays {
        &self.arrays
    }

    /// `n`, the text length including the sentinel.
    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `sigma`, the alphabet size excluding the sentinel.
    pub fn sigma(&self) -> usize {
        self.alphabet.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The mapped text, sentinel included.
    pub fn text(&self) -> &[Symbol] {
        &self.text
    }

    pub fn sampling(&self) -> SaSampling {
        match &self.arrays.store {
            SuffixStore::Plain { .. } => SaSampling::Full,
            SuffixStore::Sampled { step, .. } => SaSampling::Every(*step),
        }
    }

    pub fn lcp_array(&self) -> &[u32] {
        &self.arrays.lcp
    }

    pub fn sa(&self, rank: usize) -> Result<usize> {
        check_range("rank", rank, self.len())?;
        Ok(self.sa_raw(rank))
    }

    pub fn isa(&self, pos: usize) -> Result<usize> {
        check_range("position", pos, self.len())?;
        Ok(self.isa_raw(pos))
    }

    /// `psi^i(t) = isa[sa[t] + i]`.
    pub fn psi(&self, rank: usize, i: usize) -> Result<usize> {
        let p = self.sa(rank)?;
        check_range("shifted position", p + i, self.len())?;
        Ok(self.isa_raw(p + i))
    }

    /// LCP of the suffixes with the given ranks.
    pub fn lcp_suffixes(&self, a: usize, b: usize) -> Result<usize> {
        check_range("rank", a, self.len())?;
        check_range("rank", b, self.len())?;
        Ok(self.lcp_ranks(a, b))
    }

    pub(crate) fn sa_raw(&self, rank: usize) -> usize {
        match &self.arrays.store {
            SuffixStore::Plain { sa, .. } => sa[rank] as usize,
            SuffixStore::Sampled {
                psi,
                marks,
                sa_samples,
                ..
            } => {
                let mut r = rank;
                let mut k = 0;
                while !marks.get(r) {
                    r = psi[r] as usize;
                    k += 1;
                }
                sa_samples[marks.rank1(r)] as usize - k
            }
        }
    }

    pub(crate) fn isa_raw(&self, pos: usize) -> usize {
        match &self.arrays.store {
            SuffixStore::Plain { isa, .. } => isa[pos] as usize,
            SuffixStore::Sampled {
                step,
                psi,
                isa_samples,
                ..
            } => {
                let mut r = isa_samples[pos / step] as usize;
                for _ in 0..pos % step {
                    r = psi[r] as usize;
                }
                r
            }
        }
    }

    pub(crate) fn sa_at(&self, rank: usize, st: &mut QueryStats) -> usize {
        st.sa_accesses += 1;
        self.sa_raw(rank)
    }

    pub(crate) fn isa_at(&self, pos: usize, st: &mut QueryStats) -> usize {
        st.sa_accesses += 1;
        self.isa_raw(pos)
    }

    /// Unchecked LCP of two ranks through the range-minimum structure.
    pub(crate) fn lcp_ranks(&self, a: usize, b: usize) -> usize {
        if a == b {
            return self.len() - self.sa_raw(a);
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.arrays.rmq.min(lo + 1, hi) as usize
    }

    /// LCP of the text suffixes starting at two positions.
    pub(crate) fn lcp_positions(&self, p: usize, q: usize) -> usize {
        if p == q {
            return self.len() - p;
        }
        self.lcp_ranks(self.isa_raw(p), self.isa_raw(q))
    }

    /// Approximate size in bits of everything except the text itself.
    pub fn aux_bits(&self) -> usize {
        let store = match &self.arrays.store {
            SuffixStore::Plain { sa, isa } => (sa.len() + isa.len()) * 32,
            SuffixStore::Sampled {
                psi,
                marks,
                sa_samples,
                isa_samples,
                ..
            } => {
                psi.len() * 32
                    + marks.size_bits()
                    + (sa_samples.len() + isa_samples.len()) * 32
            }
        };
        store + self.arrays.lcp.len() * 32 + self.arrays.rmq.size_bits()
    }
}

fn sample(sa: &[u32], isa: &[u32], step: usize) -> SuffixStore {
    let n = sa.len();
    let mut psi = alloc::vec![0u32; n];
    for r in 0..n {
        let p = sa[r] as usize;
        if p + 1 < n {
            psi[r] = isa[p + 1];
        }
    }
    let is_mark = |r: usize| {
        let p = sa[r] as usize;
        p.is_multiple_of(step) || p == n - 1
    };
    let marks = RankBitVec::from_bits((0..n).map(is_mark));
    let sa_samples = (0..n).filter(|&r| is_mark(r)).map(|r| sa[r]).collect();
    let isa_samples = (0..n).step_by(step).map(|p| isa[p]).collect();
    SuffixStore::Sampled {
        step,
        psi,
        marks,
        sa_samples,
        isa_samples,
    }
}

/// Prefix doubling. The text ends with a unique smallest symbol, so ranks
/// become distinct after at most `ceil(log2 n)` rounds.
fn suffix_array(text: &[Symbol]) -> Vec<u32> {
    let n = text.len();
    let mut sa: Vec<u32> = (0..n as u32).collect();
    let mut rank: Vec<u32> = text.iter().map(|&s| s as u32).collect();
    let mut next = alloc::vec![0u32; n];
    let mut k = 1;
    loop {
        let key = |i: u32| {
            let i = i as usize;
            let second = if i + k < n { rank[i + k] as u64 + 1 } else { 0 };
            ((rank[i] as u64) << 32) | second
        };
        sa.sort_unstable_by_key(|&i| key(i));
        next[sa[0] as usize] = 0;
        for w in 1..n {
            let bump = (key(sa[w - 1]) != key(sa[w])) as u32;
            next[sa[w] as usize] = next[sa[w - 1] as usize] + bump;
        }
        core::mem::swap(&mut rank, &mut next);
        if rank[sa[n - 1] as usize] as usize == n - 1 {
            return sa;
        }
        k *= 2;
    }
}

fn kasai(text: &[Symbol], sa: &[u32], isa: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut lcp = alloc::vec![0u32; n];
    let mut h = 0usize;
    for p in 0..n {
        let r = isa[p] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let q = sa[r - 1] as usize;
        while p + h < n && q + h < n && text[p + h] == text[q + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}
