//! The complete wildcard index and its build parameters.

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::LcpLevel;
use crate::partition::PartitionIndex;
use crate::suffix::{SaSampling, TextIndex};
use crate::symbols::AlphabetSpec;
use crate::tree::{OrderedTree, SuffixTree};
use crate::wildcard::{Engine, MatchOutcome, WildcardLayer, WildcardPattern};
use crate::{ceil_log2, log_log};

/// Build parameters. `None` fields take their size-dependent defaults.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexParams {
    /// Marking stride; defaults to `max(2, sigma * ceil(log2 n)^2)`.
    pub tau: Option<usize>,
    /// Alphabet group size; defaults to `max(2, ceil(log2 log2 n))`.
    pub lambda: Option<usize>,
    /// Group storage level; defaults to sampled key sets with
    /// `d_step = max(2, loglog^2)` and `h_step = max(2, loglog)`.
    pub level: Option<LcpLevel>,
    /// Nodes per compact heavy-path micro block; defaults to
    /// `max(2, loglog)`.
    pub micro_block: Option<usize>,
    pub sampling: SaSampling,
}

impl Default for IndexParams {
    fn default() -> Self {
        IndexParams {
            tau: None,
            lambda: None,
            level: None,
            micro_block: None,
            sampling: SaSampling::Full,
        }
    }
}

/// Parameters with every default filled in for a text of `n` symbols
/// (sentinel included) over `sigma` symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ResolvedParams {
    pub tau: usize,
    pub lambda: usize,
    pub level: LcpLevel,
    pub micro_block: usize,
    pub sampling: SaSampling,
}

impl IndexParams {
    pub fn resolve(&self, n: usize, sigma: usize) -> Result<ResolvedParams> {
        let lg = ceil_log2(n).max(1);
        let ll = log_log(n).max(1);
        let r = ResolvedParams {
            tau: self.tau.unwrap_or_else(|| (sigma.max(1) * lg * lg).max(2)),
            lambda: self.lambda.unwrap_or(ll.max(2)),
            level: self.level.unwrap_or(LcpLevel::Sampled {
                d_step: (ll * ll).max(2),
                h_step: ll.max(2),
            }),
            micro_block: self.micro_block.unwrap_or(ll.max(2)),
            sampling: self.sampling,
        };
        if r.tau < 2 {
            return Err(Error::Parameter("tau must be at least 2"));
        }
        if r.lambda == 0 {
            return Err(Error::Parameter("lambda must be at least 1"));
        }
        if r.micro_block < 2 {
            return Err(Error::Parameter("micro block must hold at least 2 nodes"));
        }
        if let LcpLevel::Sampled { d_step, h_step } = r.level {
            if d_step == 0 || h_step == 0 {
                return Err(Error::Parameter("sampling steps must be at least 1"));
            }
        }
        Ok(r)
    }
}

/// Approximate space of each layer in bits.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpaceReport {
    /// The text itself, `n ceil(log2(sigma + 1))` bits.
    pub text_bits: usize,
    pub suffix_bits: usize,
    pub tree_bits: usize,
    pub partition_bits: usize,
    pub wildcard_bits: usize,
}

impl SpaceReport {
    /// Space of the structures added on top of the suffix array and tree.
    pub fn auxiliary_bits(&self) -> usize {
        self.partition_bits + self.wildcard_bits
    }

    pub fn total_bits(&self) -> usize {
        self.text_bits + self.suffix_bits + self.tree_bits + self.auxiliary_bits()
    }
}

/// A text indexed for wildcard pattern matching.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct WildcardIndex {
    params: ResolvedParams,
    text: TextIndex,
    tree: SuffixTree,
    part: PartitionIndex,
    layer: WildcardLayer,
}

impl WildcardIndex {
    pub fn build(raw: &[u8], alphabet: &AlphabetSpec, params: &IndexParams) -> Result<Self> {
        let text = TextIndex::build(raw, alphabet, params.sampling)?;
        let params = params.resolve(text.len(), text.sigma())?;
        Self::build_layers(text, params)
    }

    fn build_layers(text: TextIndex, params: ResolvedParams) -> Result<Self> {
        let tree = SuffixTree::build(&text);
        let part = PartitionIndex::build(&text, &tree, params.tau, params.level, params.micro_block)?;
        let layer = WildcardLayer::build(&text, &tree, &part, params.lambda)?;
        Ok(WildcardIndex {
            params,
            text,
            tree,
            part,
            layer,
        })
    }

    /// Reassembles an index from separately stored layers, checking that
    /// they describe the same text.
    pub fn from_parts(params: ResolvedParams, text: TextIndex, tree: SuffixTree, part: PartitionIndex, layer: WildcardLayer) -> Result<Self> {
        if tree.leaf_count(0) != text.len() {
            return Err(Error::Contract("suffix tree does not match the text"));
        }
        if part.marking().marked.len() != tree.node_count() || part.tau() != params.tau {
            return Err(Error::Contract("partition does not match the suffix tree"));
        }
        if layer.groups().lambda() != params.lambda {
            return Err(Error::Contract("wildcard layer does not match the parameters"));
        }
        Ok(WildcardIndex {
            params,
            text,
            tree,
            part,
            layer,
        })
    }

    pub fn params(&self) -> &ResolvedParams {
        &self.params
    }

    pub fn text(&self) -> &TextIndex {
        &self.text
    }

    pub fn tree(&self) -> &SuffixTree {
        &self.tree
    }

    pub fn partition(&self) -> &PartitionIndex {
        &self.part
    }

    pub fn layer(&self) -> &WildcardLayer {
        &self.layer
    }

    pub fn engine(&self) -> Engine<'_> {
        Engine {
            idx: &self.text,
            tree: &self.tree,
            part: &self.part,
            layer: &self.layer,
        }
    }

    /// Parses a pattern against this index's alphabet.
    pub fn parse_pattern(&self, src: &[u8]) -> Result<WildcardPattern> {
        WildcardPattern::parse(src, self.text.alphabet())
    }

    pub fn match_baseline(&self, p: &WildcardPattern) -> Result<MatchOutcome> {
        self.engine().match_baseline(p)
    }

    pub fn match_accelerated(&self, p: &WildcardPattern) -> Result<MatchOutcome> {
        self.engine().match_accelerated(p)
    }

    pub fn space(&self) -> SpaceReport {
        let n = self.text.len();
        SpaceReport {
            text_bits: n * ceil_log2(self.text.sigma() + 1).max(1),
            suffix_bits: self.text.aux_bits(),
            tree_bits: self.tree.size_bits(),
            partition_bits: self.part.size_bits(),
            wildcard_bits: self.layer.size_bits(),
        }
    }
}
