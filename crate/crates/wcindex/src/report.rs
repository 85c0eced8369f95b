//! Line-oriented `key=value` reports of query counters and structure sizes.

use std::fmt::{self, Display};
use std::time::Duration;

use wcindex_core::tree::OrderedTree;
use wcindex_core::{QueryStats, WildcardIndex};

/// An ordered list of `key=value` records.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StatsReport {
    entries: Vec<(String, String)>,
}

impl StatsReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// The exact per-query counters, under `prefix`.
    pub fn add_query(&mut self, prefix: &str, st: &QueryStats) -> &mut Self {
        for (k, v) in st.counters() {
            self.push(format!("{prefix}{k}"), v);
        }
        self.push(format!("{prefix}combined_lcp"), st.combined_lcp())
    }

    pub fn add_time(&mut self, key: &str, d: Duration) -> &mut Self {
        self.push(key, d.as_micros())
    }

    /// Element counts and estimated bits of every structure.
    pub fn add_structure(&mut self, ix: &WildcardIndex) -> &mut Self {
        let text = ix.text();
        let tree = ix.tree();
        let part = ix.partition();
        let layer = ix.layer();
        let p = ix.params();
        let m = part.marking();
        let n = text.len();
        self.push("n", n)
            .push("sigma", text.sigma())
            .push("tau", p.tau)
            .push("lambda", p.lambda)
            .push("level", format!("{:?}", p.level).replace(' ', ""))
            .push("micro_block", p.micro_block)
            .push("sa_sampling", text.sampling().step())
            .push("tree_nodes", tree.node_count())
            .push("marked_leaves", m.marked_leaves)
            .push("marked_internal", m.marked_internal)
            .push("marked_tree_nodes", part.marked_tree().subtree().len())
            .push("b_bits", part.marked_bits().size_bits())
            .push("blocks", part.blocks().len())
            .push("groups", part.group_count());
        let (mut d_elems, mut d_keys, mut h_keys, mut paths, mut largest) = (0, 0, 0, 0, 0);
        for g in part.groups() {
            let e = g.engine();
            d_elems += e.element_count();
            d_keys += e.stored_d_keys();
            h_keys += e.stored_h_keys();
            paths += e.path_count();
            largest = largest.max(e.subtree().len());
        }
        self.push("group_nodes_max", largest)
            .push("d_elements", d_elems)
            .push("d_keys_stored", d_keys)
            .push("h_paths", paths)
            .push("h_keys_stored", h_keys)
            .push("wildcard_trees", layer.trees().len())
            .push("wildcard_nodes", layer.node_total())
            .push("wildcard_leaves", layer.leaf_total())
            .push("wildcard_pointers", layer.pointer_total());
        let space = ix.space();
        self.push("bits_text", space.text_bits)
            .push("bits_suffix", space.suffix_bits)
            .push("bits_tree", space.tree_bits)
            .push("bits_partition", space.partition_bits)
            .push("bits_wildcard", space.wildcard_bits)
            .push("bits_auxiliary", space.auxiliary_bits())
            .push("aux_bits_per_symbol", format!("{:.3}", space.auxiliary_bits() as f64 / n as f64))
    }

    /// Parses the output of [`Display`]; lines without `=` are skipped.
    pub fn parse(src: &str) -> Self {
        let entries = src
            .lines()
            .filter_map(|l| l.split_once('='))
            .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
            .collect();
        StatsReport { entries }
    }
}

impl Display for StatsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}
