//! Two-mode (bipartite) graphs: a graph plus a two-part node partition.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Which of the two parts a node belongs to. In two-mode data the left
/// part usually holds the actors (e.g. people) and the right part the
/// events they attend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Left,
    Right,
}

impl Part {
    pub fn opposite(self) -> Part {
        match self {
            Part::Left => Part::Right,
            Part::Right => Part::Left,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Part::Left => "left",
            Part::Right => "right",
        }
    }
}

impl std::fmt::Display for Part {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An undirected simple graph whose nodes carry a two-part partition;
/// every edge joins the parts. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    graph: Graph,
    parts: Vec<Part>,
    left_count: usize,
    right_count: usize,
}

impl BipartiteGraph {
    /// Build from two-mode edges given as `(left index, right index)`
    /// pairs with the left indices in `[0, n_left)` and right indices
    /// in `[0, n_right)`. Node ids are assigned left part first: left
    /// node `i` becomes id `i`, right node `j` becomes id `n_left + j`.
    pub fn from_two_mode(
        n_left: usize,
        n_right: usize,
        edges: &[(usize, usize)],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut global = Vec::with_capacity(edges.len());
        for &(l, r) in edges {
            if l >= n_left {
                return Err(Error::IndexOutOfRange { index: l, limit: n_left });
            }
            if r >= n_right {
                return Err(Error::IndexOutOfRange { index: r, limit: n_right });
            }
            global.push((l, n_left + r));
        }
        let parts: Vec<Part> = (0..n_left + n_right)
            .map(|v| if v < n_left { Part::Left } else { Part::Right })
            .collect();
        Self::from_parts(parts, &global, labels)
    }

    /// Build from an explicit per-node part assignment and global-id
    /// edges. Rejects edges inside a part.
    pub fn from_parts(
        parts: Vec<Part>,
        edges: &[(NodeId, NodeId)],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = parts.len();
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::IndexOutOfRange { index: u, limit: n });
            }
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, limit: n });
            }
            if parts[u] == parts[v] {
                return Err(Error::IntraPartEdge { u: u.min(v), v: u.max(v) });
            }
        }
        let graph = Graph::from_edges(n, edges, labels)?;
        let left_count = parts.iter().filter(|p| **p == Part::Left).count();
        let right_count = n - left_count;
        Ok(Self { graph, parts, left_count, right_count })
    }

    /// Same node set, parts and labels, different edges.
    pub fn with_edges(&self, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        Self::from_parts(self.parts.clone(), edges, Some(self.graph.labels().to_vec()))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn part(&self, v: NodeId) -> Part {
        self.parts[v]
    }

    pub fn part_size(&self, part: Part) -> usize {
        match part {
            Part::Left => self.left_count,
            Part::Right => self.right_count,
        }
    }

    pub fn nodes_in_part(&self, part: Part) -> impl Iterator<Item = NodeId> + '_ {
        self.parts
            .iter()
            .enumerate()
            .filter(move |(_, p)| **p == part)
            .map(|(v, _)| v)
    }

    /// Look up a node by its display label.
    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.graph.labels().iter().position(|l| l == label)
    }
}
