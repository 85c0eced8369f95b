//! Wildcard trees, wildcard LCP queries and the wildcard matchers.

mod layer;
mod matcher;
mod pattern;

pub use layer::{AlphabetGroups, Engine, Pointer, WildcardEntry, WildcardLayer, WildcardTree};
pub use matcher::MatchOutcome;
pub use pattern::{Piece, WildcardPattern};

#[cfg(test)]
mod tests;
