use core::ops::AddAssign;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Per-query work counters.
///
/// Every query procedure takes a `&mut QueryStats` and adds to it, so the
/// counters are exact and deterministic for a given index and query.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct QueryStats {
    /// Top-level unrooted LCP queries issued by a matcher.
    pub standard_lcp: u64,
    /// Wildcard LCP queries issued by a matcher.
    pub wildcard_lcp: u64,
    /// Queries answered by a group structure.
    pub group_lcp: u64,
    /// Queries answered by the marked-tree structure.
    pub marked_lcp: u64,
    /// Predecessor or successor lookups in a key set.
    pub predecessor_probes: u64,
    /// Suffix array or inverse suffix array entries read.
    pub sa_accesses: u64,
    /// Elements of a sampled key set materialized for a direct comparison.
    pub suffix_comparisons: u64,
    /// Node depths read while refining a sampled heavy-path search.
    pub depth_probes: u64,
    /// Group-local continuations that had to be redone as full queries.
    pub containment_fallbacks: u64,
}

impl QueryStats {
    /// Invocations counted against the `sigma^g` budget of a matcher.
    pub fn combined_lcp(&self) -> u64 {
        self.standard_lcp + self.wildcard_lcp
    }

    /// Every counter with its name, in declaration order.
    pub fn counters(&self) -> [(&'static str, u64); 9] {
        [
            ("standard_lcp", self.standard_lcp),
            ("wildcard_lcp", self.wildcard_lcp),
            ("group_lcp", self.group_lcp),
            ("marked_lcp", self.marked_lcp),
            ("predecessor_probes", self.predecessor_probes),
            ("sa_accesses", self.sa_accesses),
            ("suffix_comparisons", self.suffix_comparisons),
            ("depth_probes", self.depth_probes),
            ("containment_fallbacks", self.containment_fallbacks),
        ]
    }
}

impl AddAssign for QueryStats {
    fn add_assign(&mut self, o: Self) {
        self.standard_lcp += o.standard_lcp;
        self.wildcard_lcp += o.wildcard_lcp;
        self.group_lcp += o.group_lcp;
        self.marked_lcp += o.marked_lcp;
        self.predecessor_probes += o.predecessor_probes;
        self.sa_accesses += o.sa_accesses;
        self.suffix_comparisons += o.suffix_comparisons;
        self.depth_probes += o.depth_probes;
        self.containment_fallbacks += o.containment_fallbacks;
    }
}
