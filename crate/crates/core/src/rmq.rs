use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Sparse table answering range-minimum *value* queries in O(1) after
/// O(n log n) preprocessing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SparseTable {
    // levels[k][i] = min(values[i .. i + 2^k])
    levels: Vec<Vec<u32>>,
}

impl SparseTable {
    pub fn new(values: &[u32]) -> Self {
        let mut levels = alloc::vec![values.to_vec()];
        let mut width = 1;
        while 2 * width <= values.len() {
            let prev = levels.last().unwrap();
            let next: Vec<u32> = (0..=values.len() - 2 * width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            levels.push(next);
            width *= 2;
        }
        SparseTable { levels }
    }

    /// Minimum over the inclusive range `[lo, hi]`.
    pub fn min(&self, lo: usize, hi: usize) -> u32 {
        debug_assert!(lo <= hi);
        let k = crate::floor_log2(hi - lo + 1);
        let level = &self.levels[k];
        level[lo].min(level[hi + 1 - (1 << k)])
    }

    pub fn size_bits(&self) -> usize {
        self.levels.iter().map(|l| l.len() * 32).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn agrees_with_scan(values in proptest::collection::vec(0u32..50, 1..120)) {
            let t = SparseTable::new(&values);
            for lo in 0..values.len() {
                for hi in lo..values.len() {
                    prop_assert_eq!(t.min(lo, hi), *values[lo..=hi].iter().min().unwrap());
                }
            }
        }
    }
}
