//! Exhaustive enumeration of small labeled bipartite trees and
//! connected graphs, and the verification scans built on top of them.
//!
//! Labeled part-alternating trees on parts of sizes `(n0, n1)` are in
//! bijection with pairs of digit strings: one of length `n1 - 1` over
//! the left part and one of length `n0 - 1` over the right part. The
//! decoder is the usual smallest-leaf elimination, consuming the digit
//! for the opposite part of the removed leaf. That yields exactly
//! `n0^(n1-1) * n1^(n0-1)` trees, each once, and gives the scans a flat
//! index space to partition across workers.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;
use std::ops::Range;
use std::time::Duration;

use crate::bipartite::{BipartiteGraph, Part};
use crate::centrality::centralization_from;
use crate::error::{Error, Result};
use crate::extremal::{build_extremal_tree, closed_form_centralization};
use crate::graph::NodeId;
use crate::rational::{decimal_string, rational, ExactRational};

/// Trees mode is feasible through 12 nodes.
pub const MAX_TREE_NODES: usize = 12;
/// Connected-graphs mode is feasible through 16 edge slots.
pub const MAX_GRAPH_EDGE_SLOTS: usize = 16;
/// The all-connected-graphs scan is feasible through 7 nodes.
pub const MAX_STAR_NODES: usize = 7;

/// Candidates whose fast estimate lands this close to the running best
/// are re-checked exactly.
const EXACT_CHECK_MARGIN: f64 = 1e-9;

/// What to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    Trees,
    ConnectedGraphs,
}

/// A bounded enumeration request.
#[derive(Debug, Clone, Copy)]
pub struct EnumerationSpec {
    pub left: usize,
    pub right: usize,
    pub mode: EnumerationMode,
    pub jobs: usize,
}

impl EnumerationSpec {
    pub fn new(left: usize, right: usize, mode: EnumerationMode, jobs: usize) -> Self {
        Self { left, right, mode, jobs: jobs.max(1) }
    }
}

fn check_tree_guard(n0: usize, n1: usize) -> Result<()> {
    if n0 == 0 || n1 == 0 {
        return Err(Error::InvalidSize { left: n0, right: n1 });
    }
    if n0 + n1 > MAX_TREE_NODES {
        return Err(Error::SizeLimitExceeded {
            detail: format!("{}+{} nodes > {MAX_TREE_NODES} (trees mode)", n0, n1),
        });
    }
    Ok(())
}

fn check_graph_guard(n0: usize, n1: usize) -> Result<()> {
    if n0 == 0 || n1 == 0 {
        return Err(Error::InvalidSize { left: n0, right: n1 });
    }
    if n0 * n1 > MAX_GRAPH_EDGE_SLOTS {
        return Err(Error::SizeLimitExceeded {
            detail: format!("{}*{} edge slots > {MAX_GRAPH_EDGE_SLOTS} (graphs mode)", n0, n1),
        });
    }
    Ok(())
}

/// Number of labeled part-alternating trees on parts `(n0, n1)`:
/// `n0^(n1-1) * n1^(n0-1)`.
pub fn labeled_tree_count(n0: usize, n1: usize) -> u128 {
    (n0 as u128).pow(n1 as u32 - 1) * (n1 as u128).pow(n0 as u32 - 1)
}

/// Decode one code pair into tree edges (global ids, left part first).
fn decode_tree(
    n0: usize,
    n1: usize,
    code_left: &[usize],
    code_right: &[usize],
    edges: &mut Vec<(NodeId, NodeId)>,
) {
    let n = n0 + n1;
    edges.clear();
    if n == 2 {
        edges.push((0, 1));
        return;
    }
    let mut degree = vec![1u32; n];
    for &a in code_left {
        degree[a] += 1;
    }
    for &b in code_right {
        degree[n0 + b] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let (mut i_left, mut i_right) = (0, 0);
    for _ in 0..n - 2 {
        let v = leaves.pop().expect("a tree always has a leaf").0;
        let neighbor = if v < n0 {
            let b = n0 + code_right[i_right];
            i_right += 1;
            b
        } else {
            let a = code_left[i_left];
            i_left += 1;
            a
        };
        edges.push((v.min(neighbor), v.max(neighbor)));
        degree[neighbor] -= 1;
        degree[v] -= 1;
        if degree[neighbor] == 1 {
            leaves.push(Reverse(neighbor));
        }
    }
    let a = leaves.pop().unwrap().0;
    let b = leaves.pop().unwrap().0;
    edges.push((a.min(b), a.max(b)));
    edges.sort_unstable();
}

/// Split a flat index into the two code strings (little-endian digits).
fn index_to_codes(
    n0: usize,
    n1: usize,
    index: u64,
    code_left: &mut [usize],
    code_right: &mut [usize],
) {
    let left_total = (n0 as u64).pow(code_left.len() as u32);
    let (mut li, mut ri) = (index % left_total, index / left_total);
    for digit in code_left.iter_mut() {
        *digit = (li % n0 as u64) as usize;
        li /= n0 as u64;
    }
    for digit in code_right.iter_mut() {
        *digit = (ri % n1 as u64) as usize;
        ri /= n1 as u64;
    }
}

/// Stream of every labeled part-alternating tree on parts `(n0, n1)`,
/// each exactly once, in code order.
pub struct BipartiteTreeIter {
    n0: usize,
    n1: usize,
    index: u64,
    total: u64,
    code_left: Vec<usize>,
    code_right: Vec<usize>,
    edges: Vec<(NodeId, NodeId)>,
}

impl Iterator for BipartiteTreeIter {
    type Item = BipartiteGraph;

    fn next(&mut self) -> Option<Self::Item> {
        if self.index >= self.total {
            return None;
        }
        index_to_codes(self.n0, self.n1, self.index, &mut self.code_left, &mut self.code_right);
        self.index += 1;
        decode_tree(self.n0, self.n1, &self.code_left, &self.code_right, &mut self.edges);
        let parts: Vec<Part> = (0..self.n0 + self.n1)
            .map(|v| if v < self.n0 { Part::Left } else { Part::Right })
            .collect();
        Some(BipartiteGraph::from_parts(parts, &self.edges, None).expect("decoded trees are valid"))
    }
}

pub fn enumerate_bipartite_trees(n0: usize, n1: usize) -> Result<BipartiteTreeIter> {
    check_tree_guard(n0, n1)?;
    Ok(BipartiteTreeIter {
        n0,
        n1,
        index: 0,
        total: labeled_tree_count(n0, n1) as u64,
        code_left: vec![0; n1 - 1],
        code_right: vec![0; n0 - 1],
        edges: Vec::new(),
    })
}

/// The tree at one position of the enumeration order; `index` must be
/// below [`labeled_tree_count`]. Handy for sampling without a scan.
pub fn bipartite_tree_at(n0: usize, n1: usize, index: u64) -> Result<BipartiteGraph> {
    check_tree_guard(n0, n1)?;
    let total = labeled_tree_count(n0, n1) as u64;
    if index >= total {
        return Err(Error::IndexOutOfRange { index: index as usize, limit: total as usize });
    }
    let mut iter = enumerate_bipartite_trees(n0, n1)?;
    iter.index = index;
    Ok(iter.next().expect("index checked against the total"))
}

/// Stream of every connected labeled bipartite graph on parts
/// `(n0, n1)`, as subsets of the `n0*n1` cross-edge slots.
pub struct ConnectedBipartiteGraphIter {
    n0: usize,
    n1: usize,
    mask: u64,
    total: u64,
}

impl Iterator for ConnectedBipartiteGraphIter {
    type Item = BipartiteGraph;

    fn next(&mut self) -> Option<Self::Item> {
        while self.mask < self.total {
            let mask = self.mask;
            self.mask += 1;
            let n = self.n0 + self.n1;
            let mut edges = Vec::with_capacity(mask.count_ones() as usize);
            for slot in 0..self.n0 * self.n1 {
                if mask >> slot & 1 == 1 {
                    edges.push((slot / self.n1, self.n0 + slot % self.n1));
                }
            }
            let parts: Vec<Part> = (0..n)
                .map(|v| if v < self.n0 { Part::Left } else { Part::Right })
                .collect();
            let bg = BipartiteGraph::from_parts(parts, &edges, None).expect("slots are distinct");
            if bg.graph().is_connected() {
                return Some(bg);
            }
        }
        None
    }
}

pub fn enumerate_connected_bipartite_graphs(
    n0: usize,
    n1: usize,
) -> Result<ConnectedBipartiteGraphIter> {
    check_graph_guard(n0, n1)?;
    Ok(ConnectedBipartiteGraphIter { n0, n1, mask: 0, total: 1u64 << (n0 * n1) })
}

/// BFS total distance over bitmask adjacency. Returns `W(v)` plus the
/// set of reached nodes (connectivity check for the caller).
fn mask_total_distance(adj: &[u32], v: usize) -> (u64, u32) {
    let mut seen = 1u32 << v;
    let mut frontier = seen;
    let mut level = 0u64;
    let mut w = 0u64;
    while frontier != 0 {
        let mut next = 0u32;
        let mut cursor = frontier;
        while cursor != 0 {
            let u = cursor.trailing_zeros() as usize;
            cursor &= cursor - 1;
            next |= adj[u];
        }
        next &= !seen;
        level += 1;
        w += level * u64::from(next.count_ones());
        seen |= next;
        frontier = next;
    }
    (w, seen)
}

/// Rooted canonical form: children forms sorted and concatenated in
/// parentheses. Two rooted trees are isomorphic iff their forms match.
fn rooted_canonical_form(adj: &[u32], n: usize, root: usize) -> Vec<u8> {
    fn rec(adj: &[u32], v: usize, parent: usize, out: &mut Vec<u8>) {
        let mut child_forms: Vec<Vec<u8>> = Vec::new();
        let mut cursor = adj[v];
        while cursor != 0 {
            let u = cursor.trailing_zeros() as usize;
            cursor &= cursor - 1;
            if u != parent {
                let mut form = Vec::new();
                rec(adj, u, v, &mut form);
                child_forms.push(form);
            }
        }
        child_forms.sort_unstable();
        out.push(b'(');
        for form in child_forms {
            out.extend_from_slice(&form);
        }
        out.push(b')');
    }
    debug_assert!(root < n);
    let mut out = Vec::new();
    rec(adj, root, usize::MAX, &mut out);
    out
}

fn degree_multiset(adj: &[u32], n: usize) -> Vec<u32> {
    let mut degrees: Vec<u32> = (0..n).map(|v| adj[v].count_ones()).collect();
    degrees.sort_unstable();
    degrees
}

/// What the extremal tree looks like, precomputed once per scan.
struct ExtremalShape {
    degrees: Vec<u32>,
    canonical: Vec<u8>,
}

impl ExtremalShape {
    fn new(n0: usize, n1: usize) -> Result<Self> {
        let (bg, root) = build_extremal_tree(n0, n1)?;
        let n = bg.node_count();
        let mut adj = vec![0u32; n];
        for (u, v) in bg.graph().edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Self {
            degrees: degree_multiset(&adj, n),
            canonical: rooted_canonical_form(&adj, n, root),
        })
    }

    /// Degree-multiset plus rooted-canonical-form check; only trees can
    /// match (a graph with a cycle has the wrong edge count).
    fn matches(&self, adj: &[u32], n: usize, edge_count: usize, root: usize) -> bool {
        edge_count == n - 1
            && degree_multiset(adj, n) == self.degrees
            && rooted_canonical_form(adj, n, root) == self.canonical
    }
}

/// Running best of a scan, with a deterministic total order:
/// larger value first, then smaller canonical edge list, then smaller
/// root. Merging partial results in any grouping yields the same
/// answer.
struct ScanBest {
    value: Option<ExactRational>,
    value_estimate: f64,
    edges: Vec<(NodeId, NodeId)>,
    root: NodeId,
    maximizer_pairs: u64,
    all_extremal: bool,
}

impl ScanBest {
    fn empty() -> Self {
        Self {
            value: None,
            value_estimate: f64::NEG_INFINITY,
            edges: Vec::new(),
            root: 0,
            maximizer_pairs: 0,
            all_extremal: true,
        }
    }

    fn consider(
        &mut self,
        value: ExactRational,
        estimate: f64,
        edges: &[(NodeId, NodeId)],
        tied_roots: &[NodeId],
        tied_extremal: bool,
    ) {
        let replace = match &self.value {
            None => true,
            Some(best) => match value.cmp(best) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => return,
                std::cmp::Ordering::Equal => {
                    self.maximizer_pairs += tied_roots.len() as u64;
                    self.all_extremal &= tied_extremal;
                    if (edges, tied_roots[0]) < (self.edges.as_slice(), self.root) {
                        self.edges = edges.to_vec();
                        self.root = tied_roots[0];
                    }
                    return;
                }
            },
        };
        if replace {
            self.value = Some(value);
            self.value_estimate = estimate;
            self.edges = edges.to_vec();
            self.root = tied_roots[0];
            self.maximizer_pairs = tied_roots.len() as u64;
            self.all_extremal = tied_extremal;
        }
    }

    fn merge(mut self, other: ScanBest) -> ScanBest {
        match (&self.value, &other.value) {
            (_, None) => self,
            (None, _) => other,
            (Some(a), Some(b)) => match b.cmp(a) {
                std::cmp::Ordering::Greater => other,
                std::cmp::Ordering::Less => self,
                std::cmp::Ordering::Equal => {
                    self.maximizer_pairs += other.maximizer_pairs;
                    self.all_extremal &= other.all_extremal;
                    if (other.edges.as_slice(), other.root) < (self.edges.as_slice(), self.root) {
                        self.edges = other.edges;
                        self.root = other.root;
                    }
                    self
                }
            },
        }
    }
}

/// Outcome of one verification scan.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub mode: &'static str,
    pub left: usize,
    pub right: usize,
    pub instances: u64,
    pub best_value: ExactRational,
    pub best_edges: Vec<(NodeId, NodeId)>,
    pub best_root: NodeId,
    pub target_value: ExactRational,
    pub matches: bool,
    pub maximizer_pairs: u64,
    pub maximizers_isomorphic_to_extremal: Option<bool>,
    pub elapsed: Duration,
}

impl VerificationReport {
    /// Deterministic text form; elapsed time is deliberately excluded
    /// so reports are byte-identical for any worker count.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "mode: {}", self.mode);
        if self.mode == "star" {
            let _ = writeln!(out, "nodes: {}", self.left);
        } else {
            let _ = writeln!(out, "parts: {} {}", self.left, self.right);
        }
        let _ = writeln!(out, "instances: {}", self.instances);
        let _ = writeln!(out, "best-value: {}", self.best_value);
        let _ = writeln!(out, "best-value-decimal: {}", decimal_string(&self.best_value, 10));
        let _ = writeln!(out, "best-root: {}", self.best_root);
        let edges: Vec<String> =
            self.best_edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        let _ = writeln!(out, "best-instance: {}", edges.join(" "));
        let _ = writeln!(out, "target-value: {}", self.target_value);
        let _ = writeln!(out, "verdict: {}", if self.matches { "match" } else { "mismatch" });
        let _ = writeln!(out, "maximizer-pairs: {}", self.maximizer_pairs);
        if let Some(all) = self.maximizers_isomorphic_to_extremal {
            let _ = writeln!(out, "maximizers-isomorphic-to-extremal: {all}");
        }
        out
    }
}

/// Split `[0, total)` into `jobs` contiguous chunks, run `worker` on
/// each (in its own thread when `jobs > 1`) and fold the results in
/// chunk order.
fn run_partitioned<T, F>(total: u64, jobs: usize, worker: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync,
{
    let jobs = jobs.max(1).min(total.max(1) as usize);
    let chunk = total.div_ceil(jobs as u64);
    let ranges: Vec<Range<u64>> = (0..jobs as u64)
        .map(|j| (j * chunk).min(total)..((j + 1) * chunk).min(total))
        .collect();
    if jobs == 1 {
        return ranges.into_iter().map(&worker).collect();
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|range| scope.spawn(|| worker(range)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    })
}

struct WorkerResult {
    instances: u64,
    best: ScanBest,
}

/// Evaluate one instance against the worker's running best.
#[allow(clippy::too_many_arguments)]
fn consider_instance(
    best: &mut ScanBest,
    w: &[u64],
    n: usize,
    candidate_limit: usize,
    edges: &[(NodeId, NodeId)],
    adj: &[u32],
    extremal: Option<&ExtremalShape>,
) {
    let min_w = (0..candidate_limit).map(|v| w[v]).min().expect("non-empty part");
    let sum_estimate: f64 = w.iter().map(|&x| 1.0 / x as f64).sum();
    let estimate = n as f64 / min_w as f64 - sum_estimate;
    if estimate < best.value_estimate - EXACT_CHECK_MARGIN {
        return;
    }
    let tied: Vec<NodeId> = (0..candidate_limit).filter(|&v| w[v] == min_w).collect();
    let value = centralization_from(w, tied[0]);
    let tied_extremal = match extremal {
        Some(shape) => tied.iter().all(|&v| shape.matches(adj, n, edges.len(), v)),
        None => true,
    };
    best.consider(value, estimate, edges, &tied, tied_extremal);
}

/// Exhaustively maximize `C1(v; G)` for `v` in the left part over all
/// labeled trees or connected graphs with the given part sizes, and
/// compare against the closed-form extremal value.
pub fn verify_bipartite_theorem(spec: &EnumerationSpec) -> Result<VerificationReport> {
    let (n0, n1) = (spec.left, spec.right);
    let started = std::time::Instant::now();
    let extremal = ExtremalShape::new(n0, n1)?;
    let target = closed_form_centralization(n0, n1)?;
    let n = n0 + n1;

    let results: Vec<WorkerResult> = match spec.mode {
        EnumerationMode::Trees => {
            check_tree_guard(n0, n1)?;
            let total = labeled_tree_count(n0, n1) as u64;
            run_partitioned(total, spec.jobs, |range| {
                let mut best = ScanBest::empty();
                let mut code_left = vec![0usize; n1 - 1];
                let mut code_right = vec![0usize; n0 - 1];
                let mut edges = Vec::with_capacity(n - 1);
                let mut adj = vec![0u32; n];
                let mut w = vec![0u64; n];
                let instances = range.end - range.start;
                for index in range {
                    index_to_codes(n0, n1, index, &mut code_left, &mut code_right);
                    decode_tree(n0, n1, &code_left, &code_right, &mut edges);
                    adj.iter_mut().for_each(|a| *a = 0);
                    for &(u, v) in &edges {
                        adj[u] |= 1 << v;
                        adj[v] |= 1 << u;
                    }
                    for v in 0..n {
                        w[v] = mask_total_distance(&adj, v).0;
                    }
                    consider_instance(&mut best, &w, n, n0, &edges, &adj, Some(&extremal));
                }
                WorkerResult { instances, best }
            })
        }
        EnumerationMode::ConnectedGraphs => {
            check_graph_guard(n0, n1)?;
            let slots = n0 * n1;
            let total = 1u64 << slots;
            let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
            run_partitioned(total, spec.jobs, |range| {
                let mut best = ScanBest::empty();
                let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(slots);
                let mut adj = vec![0u32; n];
                let mut w = vec![0u64; n];
                let mut instances = 0u64;
                for mask in range {
                    adj.iter_mut().for_each(|a| *a = 0);
                    edges.clear();
                    for slot in 0..slots {
                        if mask >> slot & 1 == 1 {
                            let (u, v) = (slot / n1, n0 + slot % n1);
                            adj[u] |= 1 << v;
                            adj[v] |= 1 << u;
                            edges.push((u, v));
                        }
                    }
                    let (w0, reached) = mask_total_distance(&adj, 0);
                    if reached != full {
                        continue;
                    }
                    w[0] = w0;
                    for v in 1..n {
                        w[v] = mask_total_distance(&adj, v).0;
                    }
                    instances += 1;
                    consider_instance(&mut best, &w, n, n0, &edges, &adj, Some(&extremal));
                }
                WorkerResult { instances, best }
            })
        }
    };

    let mut instances = 0u64;
    let mut best = ScanBest::empty();
    for result in results {
        instances += result.instances;
        best = best.merge(result.best);
    }
    let best_value = best.value.expect("at least one instance exists");
    let matches = best_value == target;
    Ok(VerificationReport {
        mode: match spec.mode {
            EnumerationMode::Trees => "trees",
            EnumerationMode::ConnectedGraphs => "graphs",
        },
        left: n0,
        right: n1,
        instances,
        best_value,
        best_edges: best.edges,
        best_root: best.root,
        target_value: target,
        matches,
        maximizer_pairs: best.maximizer_pairs,
        maximizers_isomorphic_to_extremal: Some(best.all_extremal),
        elapsed: started.elapsed(),
    })
}

/// Centralization of the star center among all graphs on `n` nodes:
/// `1 - (n-1)/(2n-3)`.
pub fn star_closed_form(n: usize) -> Result<ExactRational> {
    if n < 2 {
        return Err(Error::InvalidSize { left: n, right: 0 });
    }
    Ok(rational(n as i64 - 2, 2 * n as i64 - 3))
}

/// Exhaustively maximize `C1(v; G)` over all connected labeled graphs
/// on `n` nodes and all `v`, and compare against the star value.
pub fn verify_star_theorem(n: usize) -> Result<VerificationReport> {
    if !(2..=MAX_STAR_NODES).contains(&n) {
        return Err(Error::SizeLimitExceeded {
            detail: format!("star mode needs 2..={MAX_STAR_NODES} nodes, got {n}"),
        });
    }
    let started = std::time::Instant::now();
    let target = star_closed_form(n)?;
    let pairs: Vec<(NodeId, NodeId)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let slots = pairs.len();
    let total = 1u64 << slots;
    let full = (1u32 << n) - 1;

    let mut best = ScanBest::empty();
    let mut instances = 0u64;
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(slots);
    let mut adj = vec![0u32; n];
    let mut w = vec![0u64; n];
    for mask in 0..total {
        adj.iter_mut().for_each(|a| *a = 0);
        edges.clear();
        for (slot, &(u, v)) in pairs.iter().enumerate() {
            if mask >> slot & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
                edges.push((u, v));
            }
        }
        let (w0, reached) = mask_total_distance(&adj, 0);
        if reached != full {
            continue;
        }
        instances += 1;
        w[0] = w0;
        for v in 1..n {
            w[v] = mask_total_distance(&adj, v).0;
        }
        consider_instance(&mut best, &w, n, n, &edges, &adj, None);
    }

    let best_value = best.value.expect("the complete graph is connected");
    let matches = best_value == target;
    Ok(VerificationReport {
        mode: "star",
        left: n,
        right: 0,
        instances,
        best_value,
        best_edges: best.edges,
        best_root: best.root,
        target_value: target,
        matches,
        maximizer_pairs: best.maximizer_pairs,
        maximizers_isomorphic_to_extremal: None,
        elapsed: started.elapsed(),
    })
}

/// Exploratory eigenvector-centrality analog of the tree scan.
///
/// For each labeled tree the principal eigenvector `e` (sum-normalized)
/// replaces closeness in the centralization sum, giving
/// `n*e(v) - 1` per node. The scan reports whether the extremal tree
/// attains the maximum over the left part. Purely informational: the
/// extremality of the balanced tree under this measure is an open
/// question, so no verdict is attached.
#[derive(Debug, Clone)]
pub struct EigenvectorScanReport {
    pub left: usize,
    pub right: usize,
    pub instances: u64,
    pub tol: f64,
    pub best_value: f64,
    pub best_edges: Vec<(NodeId, NodeId)>,
    pub best_root: NodeId,
    pub extremal_value: f64,
    pub extremal_attains_max: bool,
    /// Per-tree values, kept only for small scans (at most 64 trees).
    pub per_tree: Option<Vec<(String, f64)>>,
    pub elapsed: Duration,
}

impl EigenvectorScanReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "mode: eigenvector-scan (informational)");
        let _ = writeln!(out, "parts: {} {}", self.left, self.right);
        let _ = writeln!(out, "normalization: sum=1");
        let _ = writeln!(out, "tolerance: {:e}", self.tol);
        let _ = writeln!(out, "instances: {}", self.instances);
        let _ = writeln!(out, "best-value: {:.12}", self.best_value);
        let edges: Vec<String> =
            self.best_edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        let _ = writeln!(out, "best-root: {}", self.best_root);
        let _ = writeln!(out, "best-instance: {}", edges.join(" "));
        let _ = writeln!(out, "extremal-tree-value: {:.12}", self.extremal_value);
        let _ = writeln!(out, "extremal-attains-max: {}", self.extremal_attains_max);
        if let Some(rows) = &self.per_tree {
            let _ = writeln!(out, "per-tree-values:");
            for (edges, value) in rows {
                let _ = writeln!(out, "  {edges}: {value:.12}");
            }
        }
        out
    }
}

/// Power iteration on bitmask adjacency, shifted by the identity to
/// kill the sign oscillation of bipartite spectra; sum-normalized.
fn mask_eigenvector(adj: &[u32], n: usize, tol: f64) -> Result<Vec<f64>> {
    let mut current = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    for _ in 0..200_000 {
        for v in 0..n {
            let mut acc = current[v];
            let mut cursor = adj[v];
            while cursor != 0 {
                let u = cursor.trailing_zeros() as usize;
                cursor &= cursor - 1;
                acc += current[u];
            }
            next[v] = acc;
        }
        let sum: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= sum);
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
    Err(Error::NonConvergence { iterations: 200_000 })
}

pub fn eigenvector_conjecture_scan(
    spec: &EnumerationSpec,
    tol: f64,
) -> Result<EigenvectorScanReport> {
    let (n0, n1) = (spec.left, spec.right);
    check_tree_guard(n0, n1)?;
    let started = std::time::Instant::now();
    let n = n0 + n1;
    let total = labeled_tree_count(n0, n1) as u64;
    let keep_all = total <= 64;

    struct EigenWorker {
        best: Option<(f64, Vec<(NodeId, NodeId)>, NodeId)>,
        rows: Vec<(String, f64)>,
        failure: Option<Error>,
    }
    let results: Vec<EigenWorker> = run_partitioned(total, spec.jobs, |range| {
        let mut state = EigenWorker { best: None, rows: Vec::new(), failure: None };
        let mut code_left = vec![0usize; n1 - 1];
        let mut code_right = vec![0usize; n0 - 1];
        let mut edges = Vec::with_capacity(n - 1);
        let mut adj = vec![0u32; n];
        for index in range {
            index_to_codes(n0, n1, index, &mut code_left, &mut code_right);
            decode_tree(n0, n1, &code_left, &code_right, &mut edges);
            adj.iter_mut().for_each(|a| *a = 0);
            for &(u, v) in &edges {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            let eigen = match mask_eigenvector(&adj, n, tol) {
                Ok(eigen) => eigen,
                Err(e) => {
                    state.failure = Some(e);
                    break;
                }
            };
            let (root, score) = (0..n0)
                .map(|v| (v, eigen[v]))
                .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
                .expect("left part is non-empty");
            let value = n as f64 * score - 1.0;
            if keep_all {
                let text: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                state.rows.push((text.join(" "), value));
            }
            let better = match &state.best {
                None => true,
                Some((best_value, best_edges, best_root)) => {
                    value > *best_value
                        || (value == *best_value
                            && (edges.as_slice(), root) < (best_edges.as_slice(), *best_root))
                }
            };
            if better {
                state.best = Some((value, edges.clone(), root));
            }
        }
        state
    });

    let mut best: Option<(f64, Vec<(NodeId, NodeId)>, NodeId)> = None;
    let mut rows = Vec::new();
    for worker in results {
        if let Some(e) = worker.failure {
            return Err(e);
        }
        rows.extend(worker.rows);
        best = match (best, worker.best) {
            (None, b) => b,
            (a, None) => a,
            (Some(a), Some(b)) => {
                if b.0 > a.0 || (b.0 == a.0 && (b.1.as_slice(), b.2) < (a.1.as_slice(), a.2)) {
                    Some(b)
                } else {
                    Some(a)
                }
            }
        };
    }
    let (best_value, best_edges, best_root) = best.expect("at least one tree");

    let (extremal_tree, extremal_root) = build_extremal_tree(n0, n1)?;
    let mut adj = vec![0u32; n];
    for (u, v) in extremal_tree.graph().edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let eigen = mask_eigenvector(&adj, n, tol)?;
    let extremal_value = n as f64 * eigen[extremal_root] - 1.0;

    Ok(EigenvectorScanReport {
        left: n0,
        right: n1,
        instances: total,
        tol,
        best_value,
        best_edges,
        best_root,
        extremal_value,
        extremal_attains_max: extremal_value >= best_value - 1e-7,
        per_tree: if keep_all { Some(rows) } else { None },
        elapsed: started.elapsed(),
    })
}

/// Convenience wrapper returning both closeness-verification targets.
pub fn verification_target(spec: &EnumerationSpec) -> Result<ExactRational> {
    closed_form_centralization(spec.left, spec.right)
}
