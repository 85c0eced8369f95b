//! Wildcard pattern matching over an indexed text.
//!
//! The index is layered:
//!
//! * [`suffix`] holds the text, its suffix array, inverse, LCP array and the
//!   per-pattern preprocessing that makes `LCP(P[j..], suffix)` an O(1)
//!   range-minimum lookup.
//! * [`tree`] is the suffix tree built from the suffix array, with
//!   [`Location`](tree::Location) addressing, heavy-path decomposition and a
//!   compact per-block heavy-path encoding.
//! * [`group`] answers unrooted LCP queries inside a small subtree induced by
//!   consecutive suffixes, using predecessor sets over global suffix ranks.
//! * [`partition`] marks every `tau`-th leaf, splits the tree into small groups
//!   and keeps the marked tree used to route queries between groups.
//! * [`wildcard`] adds the wildcard trees and the matching procedures.
//!
//! [`WildcardIndex`] ties the layers together.
//!
//! The crate is `no_std` and needs only `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bits;
pub mod error;
pub mod group;
pub mod index;
pub mod marking;
pub mod partition;
pub mod pred;
pub mod rmq;
pub mod stats;
pub mod suffix;
pub mod symbols;
pub mod tree;
pub mod wildcard;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use index::{IndexParams, ResolvedParams, SpaceReport, WildcardIndex};
pub use stats::QueryStats;
pub use suffix::{PatternHandle, SaSampling, SuffixArrays, TextIndex};
pub use symbols::{Alphabet, AlphabetSpec, Symbol};
pub use tree::{Location, NodeId, SuffixTree};
pub use wildcard::{MatchOutcome, WildcardPattern};

/// `ceil(log2(x))` for `x >= 1`, and 0 for `x <= 1`.
pub(crate) fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// `floor(log2(x))` for `x >= 1`.
pub(crate) fn floor_log2(x: usize) -> usize {
    debug_assert!(x >= 1);
    (usize::BITS - 1 - x.leading_zeros()) as usize
}

/// `ceil(log2(ceil(log2(n))))`, the `log log n` quantity used by the
/// default parameter choices.
pub(crate) fn log_log(n: usize) -> usize {
    ceil_log2(ceil_log2(n).max(1))
}
