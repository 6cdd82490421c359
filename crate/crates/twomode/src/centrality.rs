//! Closeness, centralization and related per-node measures.
//!
//! For a connected graph let `W(v)` be the sum of hop distances from
//! `v` to every node. Closeness is `C(v) = 1/W(v)` and the
//! centralization of `v` is `C1(v) = sum_u [C(v) - C(u)]`, i.e.
//! `n*C(v) - sum_u C(u)`. All values are exact rationals.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::bipartite::{BipartiteGraph, Part};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rational::{integer, reciprocal, ExactRational};

/// Sum of hop distances from `v` to every node (`W(v)`).
pub fn total_distance(g: &Graph, v: NodeId) -> Result<u64> {
    let mut sum = 0u64;
    for d in g.bfs_distances(v) {
        match d {
            Some(d) => sum += u64::from(d),
            None => return Err(Error::DisconnectedGraph),
        }
    }
    Ok(sum)
}

/// `W(v)` for every node, via one BFS per node.
pub fn all_total_distances(g: &Graph) -> Result<Vec<u64>> {
    (0..g.node_count()).map(|v| total_distance(g, v)).collect()
}

/// Closeness `C(v) = 1/W(v)`, exact.
pub fn closeness(g: &Graph, v: NodeId) -> Result<ExactRational> {
    let w = total_distance(g, v)?;
    if w == 0 {
        // Single-node graph: W(v) = 0 and closeness is conventionally 1.
        return Ok(integer(1));
    }
    Ok(reciprocal(w))
}

/// Sum of `1/w` over a total-distance table, grouping repeated values
/// so the rational work scales with the number of distinct W values.
pub fn closeness_sum_from(w: &[u64]) -> ExactRational {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &value in w {
        *counts.entry(value).or_insert(0) += 1;
    }
    let mut sum = ExactRational::zero();
    for (value, count) in counts {
        if value == 0 {
            sum += integer(count);
        } else {
            sum += integer(count) * reciprocal(value);
        }
    }
    sum
}

/// `C1(v)` from a precomputed total-distance table.
pub fn centralization_from(w: &[u64], v: NodeId) -> ExactRational {
    let n = w.len() as u64;
    let c_v = if w[v] == 0 { integer(1) } else { reciprocal(w[v]) };
    integer(n) * c_v - closeness_sum_from(w)
}

/// Closeness centralization `C1(v) = n*C(v) - sum_u C(u)`, exact.
pub fn centralization(g: &Graph, v: NodeId) -> Result<ExactRational> {
    let w = all_total_distances(g)?;
    Ok(centralization_from(&w, v))
}

/// Per-node W, closeness and centralization for a connected graph.
#[derive(Debug, Clone)]
pub struct CentralityReport {
    pub total_distance: Vec<u64>,
    pub closeness: Vec<ExactRational>,
    pub centralization: Vec<ExactRational>,
}

pub fn centrality_report(g: &Graph) -> Result<CentralityReport> {
    let w = all_total_distances(g)?;
    let n = g.node_count() as u64;
    let sum = closeness_sum_from(&w);
    let closeness: Vec<ExactRational> = w
        .iter()
        .map(|&wv| if wv == 0 { integer(1) } else { reciprocal(wv) })
        .collect();
    let centralization = closeness
        .iter()
        .map(|c| integer(n) * c - sum.clone())
        .collect();
    Ok(CentralityReport { total_distance: w, closeness, centralization })
}

/// Maximize `C1` over one part. Returns every argmax node (ascending
/// id, so the first entry is the canonical representative) and the
/// attained value. Within a fixed graph, maximizing `C1` over a node
/// set is the same as minimizing `W`, which keeps this a single pass
/// over the distance table.
pub fn part_max_centralization(
    bg: &BipartiteGraph,
    part: Part,
) -> Result<(Vec<NodeId>, ExactRational)> {
    let w = all_total_distances(bg.graph())?;
    let best_w = bg
        .nodes_in_part(part)
        .map(|v| w[v])
        .min()
        .expect("parts are non-empty");
    let ties: Vec<NodeId> = bg.nodes_in_part(part).filter(|&v| w[v] == best_w).collect();
    let value = centralization_from(&w, ties[0]);
    Ok((ties, value))
}

const POWER_ITERATION_CAP: usize = 200_000;

/// Principal eigenvector of the adjacency structure, normalized to sum
/// to 1. The iteration runs on `A + I`: bipartite adjacency spectra are
/// symmetric around zero, and the shift removes the resulting sign
/// oscillation without changing the eigenvectors.
pub fn eigenvector_centrality(g: &Graph, tol: f64) -> Result<Vec<f64>> {
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let n = g.node_count();
    if n == 1 {
        return Ok(vec![1.0]);
    }
    let mut current = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    for _ in 0..POWER_ITERATION_CAP {
        for v in 0..n {
            let mut acc = current[v];
            for &u in g.neighbors(v) {
                acc += current[u];
            }
            next[v] = acc;
        }
        let sum: f64 = next.iter().sum();
        for value in next.iter_mut() {
            *value /= sum;
        }
        let delta = current
            .iter()
            .zip(next.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        std::mem::swap(&mut current, &mut next);
        if delta < tol {
            return Ok(current);
        }
    }
    Err(Error::NonConvergence { iterations: POWER_ITERATION_CAP })
}

/// True iff every closeness-argmax node has maximum degree.
pub fn satisfies_max_degree_property(g: &Graph) -> Result<bool> {
    let w = all_total_distances(g)?;
    let best_w = *w.iter().min().expect("non-empty graph");
    let max_degree = g.max_degree();
    Ok((0..g.node_count())
        .filter(|&v| w[v] == best_w)
        .all(|v| g.degree(v) == max_degree))
}
