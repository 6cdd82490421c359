//! Undirected simple graphs with dense node ids and BFS primitives.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Dense node identifier in `[0, n)`, stable for a given graph.
pub type NodeId = usize;

/// Immutable undirected simple graph. Adjacency lists are sorted
/// ascending; edges are stored once per endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    labels: Vec<String>,
}

impl Graph {
    /// Build a graph on `node_count` nodes from an undirected edge list.
    ///
    /// Rejects out-of-range endpoints, self-loops and duplicate edges.
    /// Missing `labels` default to the decimal node index.
    pub fn from_edges(
        node_count: usize,
        edges: &[(NodeId, NodeId)],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let labels = match labels {
            Some(labels) => {
                if labels.len() != node_count {
                    return Err(Error::IndexOutOfRange {
                        index: labels.len(),
                        limit: node_count,
                    });
                }
                labels
            }
            None => (0..node_count).map(|v| v.to_string()).collect(),
        };
        let mut adjacency = vec![Vec::new(); node_count];
        for &(u, v) in edges {
            if u >= node_count {
                return Err(Error::IndexOutOfRange { index: u, limit: node_count });
            }
            if v >= node_count {
                return Err(Error::IndexOutOfRange { index: v, limit: node_count });
            }
            if u == v {
                return Err(Error::SelfLoop { node: u });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                let dup = list.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
                return Err(Error::DuplicateEdge {
                    u: v.min(dup),
                    v: v.max(dup),
                });
            }
        }
        Ok(Self { adjacency, labels })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Canonical edge list: each edge once as `(u, v)` with `u < v`,
    /// sorted lexicographically.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Hop distances from `v`; `None` marks unreachable nodes.
    pub fn bfs_distances(&self, v: NodeId) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.node_count()];
        let mut queue = VecDeque::new();
        dist[v] = Some(0);
        queue.push_back(v);
        while let Some(x) = queue.pop_front() {
            let next = dist[x].unwrap() + 1;
            for &y in &self.adjacency[x] {
                if dist[y].is_none() {
                    dist[y] = Some(next);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count() == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    pub fn is_tree(&self) -> bool {
        self.node_count() > 0
            && self.edge_count() == self.node_count() - 1
            && self.is_connected()
    }

    /// Breadth-first-search spanning tree rooted at `root`.
    ///
    /// Every node keeps its graph distance to the root. The parent of a
    /// node is the lowest-id neighbor one level closer to the root, so
    /// the result is deterministic.
    pub fn bfs_spanning_tree(&self, root: NodeId) -> Result<Graph> {
        let dist = self.bfs_distances(root);
        if dist.iter().any(Option::is_none) {
            return Err(Error::DisconnectedGraph);
        }
        let mut edges = Vec::with_capacity(self.node_count().saturating_sub(1));
        for v in 0..self.node_count() {
            if v == root {
                continue;
            }
            let level = dist[v].unwrap();
            // Adjacency is sorted, so the first match is the lowest id.
            let parent = self
                .adjacency[v]
                .iter()
                .copied()
                .find(|&w| dist[w] == Some(level - 1))
                .expect("connected graph: some neighbor is one level up");
            edges.push((parent.min(v), parent.max(v)));
        }
        Graph::from_edges(self.node_count(), &edges, Some(self.labels.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|v| (v, v + 1)).collect();
        Graph::from_edges(n, &edges, None).unwrap()
    }

    #[test]
    fn rejects_invalid_edges() {
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)], None),
            Err(Error::IndexOutOfRange { index: 2, limit: 2 })
        );
        assert_eq!(
            Graph::from_edges(2, &[(1, 1)], None),
            Err(Error::SelfLoop { node: 1 })
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)], None),
            Err(Error::DuplicateEdge { u: 0, v: 1 })
        );
    }

    #[test]
    fn bfs_distances_on_a_path() {
        let g = path(4);
        let d = g.bfs_distances(0);
        assert_eq!(d, vec![Some(0), Some(1), Some(2), Some(3)]);
    }

    #[test]
    fn unreachable_nodes_are_marked() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)], None).unwrap();
        let d = g.bfs_distances(0);
        assert_eq!(d[2], None);
        assert_eq!(d[3], None);
        assert!(!g.is_connected());
    }

    #[test]
    fn spanning_tree_of_a_tree_is_identical() {
        let g = path(5);
        let t = g.bfs_spanning_tree(2).unwrap();
        assert_eq!(t.edges(), g.edges());
    }

    #[test]
    fn spanning_tree_of_a_cycle_breaks_ties_low() {
        // 4-cycle 0-1-2-3-0; from root 0 node 2 attaches to neighbor 1.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], None).unwrap();
        let t = g.bfs_spanning_tree(0).unwrap();
        assert_eq!(t.edges(), vec![(0, 1), (0, 3), (1, 2)]);
    }
}
