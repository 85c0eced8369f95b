#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use super::NodeId;

/// A point in the suffix tree: a node, or a position strictly inside the
/// edge that enters `child`.
///
/// `offset` counts symbols from the parent of `child` and is always in
/// `1..edge_len(child)`; a location at the end of an edge is represented by
/// the node itself, so equal points always compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum Location {
    Node(NodeId),
    Edge { child: NodeId, offset: usize },
}

impl Location {
    /// The node at or immediately below this location.
    pub fn lower(self) -> NodeId {
        match self {
            Location::Node(v) => v,
            Location::Edge { child, .. } => child,
        }
    }

    pub fn node(self) -> Option<NodeId> {
        match self {
            Location::Node(v) => Some(v),
            Location::Edge { .. } => None,
        }
    }

    pub fn is_node(self) -> bool {
        matches!(self, Location::Node(_))
    }
}
