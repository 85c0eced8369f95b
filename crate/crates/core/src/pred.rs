//! Predecessor search over sorted key sets.
//!
//! Every set answers one primitive, [`KeySet::count_below`]: how many
//! elements are strictly smaller than a query. Predecessor and successor
//! indices follow from it. Sampled sets keep only every `step`-th key and
//! recover the others through a caller-supplied accessor, so the caller
//! decides how a materialized element is paid for.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::stats::QueryStats;

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum KeySet {
    /// All keys, sorted.
    Full(Vec<u32>),
    /// Keys at indices `0, step, 2 * step, ...` of the sorted sequence.
    Sampled { step: u32, samples: Vec<u32>, len: u32 },
    /// An ordered map from key to its index in sorted order.
    Tree(BTreeMap<u32, u32>),
}

impl KeySet {
    pub fn full(keys: Vec<u32>) -> Self {
        debug_assert!(keys.windows(2).all(|w| w[0] < w[1]));
        KeySet::Full(keys)
    }

    pub fn sampled(keys: &[u32], step: usize) -> Self {
        debug_assert!(step >= 1);
        KeySet::Sampled {
            step: step as u32,
            samples: keys.iter().step_by(step).copied().collect(),
            len: keys.len() as u32,
        }
    }

    pub fn tree(keys: &[u32]) -> Self {
        KeySet::Tree(keys.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect())
    }

    pub fn len(&self) -> usize {
        match self {
            KeySet::Full(k) => k.len(),
            KeySet::Sampled { len, .. } => *len as usize,
            KeySet::Tree(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of stored keys.
    pub fn stored(&self) -> usize {
        match self {
            KeySet::Full(k) => k.len(),
            KeySet::Sampled { samples, .. } => samples.len(),
            KeySet::Tree(m) => m.len(),
        }
    }

    /// Number of elements `< x`. `elem(i, st)` returns the `i`-th smallest
    /// element and is only called for sampled sets, at most
    /// `floor(log2(step)) + 1` times.
    pub fn count_below(&self, x: u64, st: &mut QueryStats, mut elem: impl FnMut(usize, &mut QueryStats) -> u32) -> usize {
        st.predecessor_probes += 1;
        match self {
            KeySet::Full(k) => k.partition_point(|&e| (e as u64) < x),
            KeySet::Tree(m) => {
                let x = x.min(u32::MAX as u64 + 1);
                if x == 0 {
                    return 0;
                }
                m.range(..=(x - 1) as u32).next_back().map_or(0, |(_, &i)| i as usize + 1)
            }
            KeySet::Sampled { step, samples, len } => {
                let s = samples.partition_point(|&e| (e as u64) < x);
                if s == 0 {
                    return 0;
                }
                // the answer lies in ((s - 1) * step, s * step]: element
                // (s - 1) * step is below x, element s * step (if any) is not
                let step = *step as usize;
                let mut lo = (s - 1) * step + 1;
                let mut hi = (s * step).min(*len as usize);
                while lo < hi {
                    let mid = lo + (hi - lo) / 2;
                    if (elem(mid, st) as u64) < x {
                        lo = mid + 1;
                    } else {
                        hi = mid;
                    }
                }
                lo
            }
        }
    }

    /// Index of the largest element `<= x`, if any.
    pub fn predecessor(&self, x: u64, st: &mut QueryStats, elem: impl FnMut(usize, &mut QueryStats) -> u32) -> Option<usize> {
        self.count_below(x + 1, st, elem).checked_sub(1)
    }

    /// Index of the smallest element `>= x`, if any.
    pub fn successor(&self, x: u64, st: &mut QueryStats, elem: impl FnMut(usize, &mut QueryStats) -> u32) -> Option<usize> {
        let i = self.count_below(x, st, elem);
        (i < self.len()).then_some(i)
    }

    /// Estimated bits: 32 per stored key, plus map overhead for trees.
    pub fn size_bits(&self) -> usize {
        match self {
            KeySet::Full(k) => 32 * k.len(),
            KeySet::Sampled { samples, .. } => 32 * samples.len() + 64,
            KeySet::Tree(m) => 128 * m.len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn probe(set: &KeySet, keys: &[u32], x: u64) -> (Option<usize>, Option<usize>) {
        let mut st = QueryStats::default();
        let p = set.predecessor(x, &mut st, |i, st| {
            st.suffix_comparisons += 1;
            keys[i]
        });
        let s = set.successor(x, &mut st, |i, _| keys[i]);
        (p, s)
    }

    #[test]
    fn small_set_semantics() {
        let keys = [2, 5, 6];
        for set in [KeySet::full(keys.to_vec()), KeySet::sampled(&keys, 2), KeySet::tree(&keys)] {
            assert_eq!(probe(&set, &keys, 5).0.map(|i| keys[i]), Some(5));
            assert_eq!(probe(&set, &keys, 4).0.map(|i| keys[i]), Some(2));
            assert_eq!(probe(&set, &keys, 1), (None, Some(0)));
            assert_eq!(probe(&set, &keys, 7), (Some(2), None));
        }
        let empty = KeySet::full(Vec::new());
        assert_eq!(probe(&empty, &[], 3), (None, None));
    }

    #[test]
    fn sampled_keeps_every_step_th_key() {
        let keys: Vec<u32> = (0..10).map(|i| 3 * i + 1).collect();
        match KeySet::sampled(&keys, 2) {
            KeySet::Sampled { samples, .. } => assert_eq!(samples, [1, 7, 13, 19, 25]),
            _ => unreachable!(),
        }
    }

    proptest! {
        #[test]
        fn all_variants_agree(mut keys in proptest::collection::vec(0u32..500, 0..60), step in 1usize..10, queries in proptest::collection::vec(0u64..520, 30)) {
            keys.sort_unstable();
            keys.dedup();
            let full = KeySet::full(keys.clone());
            let sampled = KeySet::sampled(&keys, step);
            let tree = KeySet::tree(&keys);
            for x in queries {
                let want = keys.iter().filter(|&&k| (k as u64) < x).count();
                let mut st = QueryStats::default();
                prop_assert_eq!(full.count_below(x, &mut st, |i, _| keys[i]), want);
                prop_assert_eq!(tree.count_below(x, &mut st, |i, _| keys[i]), want);
                let mut calls = 0;
                prop_assert_eq!(sampled.count_below(x, &mut st, |i, _| { calls += 1; keys[i] }), want);
                prop_assert!(calls <= crate::floor_log2(step) + 1);
            }
        }
    }
}
