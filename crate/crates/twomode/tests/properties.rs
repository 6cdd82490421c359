//! Cross-checks against independent oracles and randomized invariants.

use std::collections::HashSet;

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use twomode::bipartite::{BipartiteGraph, Part};
use twomode::centrality::{
    all_total_distances, centrality_report, centralization, eigenvector_centrality,
    satisfies_max_degree_property, total_distance,
};
use twomode::enumerate::{bipartite_tree_at, enumerate_bipartite_trees, labeled_tree_count};
use twomode::extremal::{build_extremal_tree, lower_bound};
use twomode::graph::Graph;
use twomode::rational::{decimal_string, parse_decimal, rational, ExactRational};
use twomode::transforms::{apply_flatten, audit_flatten, build_flatten_context, rewire_balance};

// ---------------------------------------------------------------------------
// Oracle: brute-force edge-subset enumeration, written from scratch here so
// it shares nothing with the library's tree codec.

fn oracle_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                reached += 1;
                stack.push(y);
            }
        }
    }
    reached == n
}

/// Every labeled crossing tree on parts `(n0, n1)`, by filtering all
/// `(n-1)`-subsets of the cross-edge slots for connectivity.
fn oracle_crossing_trees(n0: usize, n1: usize) -> HashSet<Vec<(usize, usize)>> {
    let n = n0 + n1;
    let slots: Vec<(usize, usize)> = (0..n0)
        .flat_map(|l| (0..n1).map(move |r| (l, n0 + r)))
        .collect();
    let mut trees = HashSet::new();
    for mask in 0u64..1 << slots.len() {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let edges: Vec<(usize, usize)> = slots
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if oracle_connected(n, &edges) {
            trees.insert(edges);
        }
    }
    trees
}

#[test]
fn tree_enumeration_matches_the_subset_oracle() {
    for (n0, n1) in [(1, 1), (1, 4), (4, 1), (2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (4, 3)] {
        let oracle = oracle_crossing_trees(n0, n1);
        let mut enumerated = HashSet::new();
        for bg in enumerate_bipartite_trees(n0, n1).unwrap() {
            assert!(enumerated.insert(bg.graph().edges()), "duplicate at ({n0},{n1})");
        }
        assert_eq!(enumerated, oracle, "tree sets differ at ({n0},{n1})");
        assert_eq!(enumerated.len() as u128, labeled_tree_count(n0, n1));
    }
}

// ---------------------------------------------------------------------------
// Randomized invariants on connected graphs.

/// Random connected graph: a random labeled tree (decoded here, not by
/// the library) plus random extra edges.
fn arb_connected_graph() -> impl Strategy<Value = Graph> {
    (2usize..=10)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(0..n, n.saturating_sub(2)),
                proptest::collection::vec(proptest::bool::ANY, n * (n - 1) / 2),
            )
        })
        .prop_map(|(n, code, extra)| {
            let mut edges = oracle_tree_from_code(n, &code);
            let mut slot = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if extra[slot] && !edges.contains(&(u, v)) {
                        edges.push((u, v));
                    }
                    slot += 1;
                }
            }
            Graph::from_edges(n, &edges, None).unwrap()
        })
}

/// Plain single-sequence tree decode (test-local oracle).
fn oracle_tree_from_code(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    if n == 1 {
        return vec![];
    }
    let mut degree = vec![1u32; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(std::cmp::Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let v = heap.pop().unwrap().0;
        edges.push((v.min(c), v.max(c)));
        degree[c] -= 1;
        if degree[c] == 1 {
            heap.push(std::cmp::Reverse(c));
        }
    }
    let a = heap.pop().unwrap().0;
    let b = heap.pop().unwrap().0;
    edges.push((a.min(b), a.max(b)));
    edges
}

proptest! {
    #[test]
    fn distances_are_symmetric(g in arb_connected_graph()) {
        let n = g.node_count();
        let tables: Vec<Vec<Option<u32>>> = (0..n).map(|v| g.bfs_distances(v)).collect();
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(tables[u][v], tables[v][u]);
            }
        }
    }

    #[test]
    fn centralization_sums_to_zero(g in arb_connected_graph()) {
        let report = centrality_report(&g).unwrap();
        let sum: ExactRational = report.centralization.iter().cloned().sum();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn centralization_argmax_is_total_distance_argmin(g in arb_connected_graph()) {
        let report = centrality_report(&g).unwrap();
        let best_c1 = report.centralization.iter().max().unwrap();
        let best_w = report.total_distance.iter().min().unwrap();
        let argmax: Vec<usize> = (0..g.node_count())
            .filter(|&v| &report.centralization[v] == best_c1)
            .collect();
        let argmin: Vec<usize> = (0..g.node_count())
            .filter(|&v| &report.total_distance[v] == best_w)
            .collect();
        prop_assert_eq!(argmax, argmin);
    }

    #[test]
    fn bfs_tree_dominates_totals(g in arb_connected_graph(), root_pick in 0usize..10) {
        let root = root_pick % g.node_count();
        let tree = g.bfs_spanning_tree(root).unwrap();
        prop_assert_eq!(
            total_distance(&tree, root).unwrap(),
            total_distance(&g, root).unwrap()
        );
        for v in 0..g.node_count() {
            prop_assert!(total_distance(&tree, v).unwrap() >= total_distance(&g, v).unwrap());
        }
        if g.edge_count() > g.node_count() - 1 {
            prop_assert!(
                centralization(&tree, root).unwrap() > centralization(&g, root).unwrap()
            );
        } else {
            prop_assert_eq!(tree.edges(), g.edges());
        }
    }

    #[test]
    fn rendered_centralization_round_trips_at_precision_12(g in arb_connected_graph()) {
        let report = centrality_report(&g).unwrap();
        let w = all_total_distances(&g).unwrap();
        let mut lcm = ExactRational::from_integer(1.into());
        for &value in &w {
            let value = num_bigint::BigInt::from(value.max(1));
            let n = num_integer::lcm(lcm.numer().clone(), value);
            lcm = ExactRational::from_integer(n);
        }
        for value in &report.centralization {
            let rendered = decimal_string(value, 12);
            let back = parse_decimal(&rendered).unwrap();
            prop_assert!((value - back).abs() <= rational(1, 1_000_000_000_000));
            // The exact value's denominator divides the lcm of the W values.
            let scaled = value * lcm.clone();
            prop_assert!(scaled.is_integer());
        }
    }
}

// ---------------------------------------------------------------------------
// Eigenvector centrality against a dense symmetric eigensolver.

fn dense_principal_eigenvector(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut a = nalgebra::DMatrix::<f64>::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    let eigen = nalgebra::SymmetricEigen::new(a);
    let (top, _) = eigen
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .unwrap();
    let column = eigen.eigenvectors.column(top);
    let sum: f64 = column.iter().sum();
    column.iter().map(|x| x / sum).collect()
}

#[test]
fn eigenvector_matches_the_dense_oracle_on_the_toy_network() {
    let edges = [(0, 0), (0, 1), (0, 2), (1, 2), (1, 3), (2, 2), (2, 3)];
    let bg = BipartiteGraph::from_two_mode(3, 4, &edges, None).unwrap();
    let mine = eigenvector_centrality(bg.graph(), 1e-13).unwrap();
    let oracle = dense_principal_eigenvector(bg.graph());
    for (a, b) in mine.iter().zip(oracle.iter()) {
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }
    let argmax = |xs: &[f64]| {
        xs.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0
    };
    assert_eq!(argmax(&mine), argmax(&oracle));
}

#[test]
fn eigenvector_matches_the_dense_oracle_on_sampled_trees() {
    let total = labeled_tree_count(4, 3) as u64;
    for index in (0..total).step_by(37) {
        let bg = bipartite_tree_at(4, 3, index).unwrap();
        let mine = eigenvector_centrality(bg.graph(), 1e-13).unwrap();
        let oracle = dense_principal_eigenvector(bg.graph());
        for (a, b) in mine.iter().zip(oracle.iter()) {
            assert!((a - b).abs() < 1e-8);
        }
    }
}

// ---------------------------------------------------------------------------
// Max-degree property.

#[test]
fn max_degree_property_fails_somewhere_among_small_trees() {
    // Exhaustive scan of all labeled trees on 8 nodes.
    let n = 8usize;
    let mut code = vec![0usize; n - 2];
    let mut found = 0u64;
    let total = (n as u64).pow(n as u32 - 2);
    for index in 0..total {
        let mut x = index;
        for digit in code.iter_mut() {
            *digit = (x % n as u64) as usize;
            x /= n as u64;
        }
        let edges = oracle_tree_from_code(n, &code);
        let g = Graph::from_edges(n, &edges, None).unwrap();
        if !satisfies_max_degree_property(&g).unwrap() {
            found += 1;
        }
    }
    assert!(found > 0, "expected counterexamples among labeled trees on 8 nodes");
}

#[test]
fn extremal_trees_satisfy_the_max_degree_property_iff_the_root_keeps_max_degree() {
    // For n1 >= 2 the root is always a total-distance minimizer
    // (2*ceil(m/n1) <= m + n1 - 1), so the property holds exactly when
    // the root's degree n1 is still the maximum degree, i.e. when
    // 1 + ceil(m/n1) <= n1, i.e. m <= n1*(n1-1). For n1 = 1 the hub is
    // the unique minimizer and carries the maximum degree, so the
    // property always holds there. In particular the property fails
    // for heavily unbalanced sizes such as (5,2) or (8,3).
    for n0 in 1..=20usize {
        for n1 in 1..=20usize {
            let m = n0 - 1;
            let expected = n1 == 1 || m <= n1 * (n1 - 1);
            let (bg, _) = build_extremal_tree(n0, n1).unwrap();
            assert_eq!(
                satisfies_max_degree_property(bg.graph()).unwrap(),
                expected,
                "max-degree property surprise at ({n0},{n1})"
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Transform invariants on exhaustively enumerated instances.

/// Depth-2 tree with the given leaf distribution over the hubs.
fn hub_tree(hub_loads: &[usize]) -> BipartiteGraph {
    let n1 = hub_loads.len();
    let mut parts = vec![Part::Left];
    let mut edges = Vec::new();
    for hub in 1..=n1 {
        parts.push(Part::Right);
        edges.push((0, hub));
    }
    let mut next = n1 + 1;
    for (i, &load) in hub_loads.iter().enumerate() {
        for _ in 0..load {
            parts.push(Part::Left);
            edges.push((i + 1, next));
            next += 1;
        }
    }
    BipartiteGraph::from_parts(parts, &edges, None).unwrap()
}

/// Every leaf distribution of `m` leaves over `n1` hubs.
fn all_hub_loads(m: usize, n1: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; n1]];
    for _ in 0..m {
        let mut next = Vec::new();
        for loads in out {
            for hub in 0..n1 {
                let mut grown = loads.clone();
                grown[hub] += 1;
                next.push(grown);
            }
        }
        out = next;
    }
    out
}

#[test]
fn rewire_strictly_increases_on_every_eligible_small_instance() {
    let mut checked = 0u64;
    for n1 in 1..=4usize {
        for m in 0..=(8 - n1) {
            for loads in all_hub_loads(m, n1) {
                let tree = hub_tree(&loads);
                for from_hub in 1..=n1 {
                    for to_hub in 1..=n1 {
                        if from_hub == to_hub {
                            continue;
                        }
                        let (df, dt) =
                            (tree.graph().degree(from_hub), tree.graph().degree(to_hub));
                        if df < dt + 2 {
                            continue;
                        }
                        let outcome = rewire_balance(&tree, 0, from_hub, to_hub).unwrap();
                        assert!(
                            outcome.audit.all_hold(),
                            "audit failed for loads {loads:?} {from_hub}->{to_hub}"
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 1000, "expected many eligible instances, got {checked}");
}

#[test]
fn repeated_rewiring_always_reaches_balance() {
    for n1 in 2..=3usize {
        for m in 0..=5 {
            for loads in all_hub_loads(m, n1) {
                let mut tree = hub_tree(&loads);
                for _ in 0..32 {
                    let degrees: Vec<usize> =
                        (1..=n1).map(|h| tree.graph().degree(h)).collect();
                    let max_hub = (1..=n1).max_by_key(|&h| tree.graph().degree(h)).unwrap();
                    let min_hub = (1..=n1).min_by_key(|&h| tree.graph().degree(h)).unwrap();
                    if degrees.iter().max().unwrap() - degrees.iter().min().unwrap() <= 1 {
                        break;
                    }
                    let outcome = rewire_balance(&tree, 0, max_hub, min_hub).unwrap();
                    assert!(outcome.audit.all_hold());
                    tree = outcome.graph;
                }
                let degrees: Vec<usize> = (1..=n1).map(|h| tree.graph().degree(h)).collect();
                assert!(degrees.iter().max().unwrap() - degrees.iter().min().unwrap() <= 1);
            }
        }
    }
}

#[test]
fn flatten_increases_on_every_qualifying_enumerated_tree() {
    // Every labeled crossing tree on up to 10 nodes; the strict increase
    // is asserted whenever the opposite part has >= 3 nodes and the
    // root already reaches the extremal lower bound. A float estimate
    // prunes roots far below the bound before any exact arithmetic.
    let mut qualifying = 0u64;
    for n0 in 1..=9usize {
        for n1 in 1..=9usize {
            if n0 + n1 > 10 || n1 < 3 {
                continue;
            }
            let n = n0 + n1;
            let bound = lower_bound(n1).unwrap();
            let bound_estimate = (n1 as f64 - 1.0) / (2.0 * (2.0 * n1 as f64 - 1.0));
            for tree in enumerate_bipartite_trees(n0, n1).unwrap() {
                let w = all_total_distances(tree.graph()).unwrap();
                let sum_estimate: f64 = w.iter().map(|&x| 1.0 / x as f64).sum();
                for root in 0..n0 {
                    if tree.graph().degree(root) < 2 {
                        continue;
                    }
                    let estimate = n as f64 / w[root] as f64 - sum_estimate;
                    if estimate < bound_estimate - 1e-9 {
                        continue;
                    }
                    let before = twomode::centrality::centralization_from(&w, root);
                    if before < bound {
                        continue;
                    }
                    let Some(ctx) = build_flatten_context(&tree, root).unwrap() else {
                        continue;
                    };
                    let rewritten = apply_flatten(&tree, root, &ctx).unwrap();
                    let after = centralization(rewritten.graph(), root).unwrap();
                    assert!(
                        after > before,
                        "no strict increase at ({n0},{n1}) root {root}: {before} -> {after}"
                    );
                    qualifying += 1;
                }
            }
        }
    }
    assert!(qualifying > 0, "expected at least one qualifying instance");
}

const SAMPLE_STEP: u64 = 97;

#[test]
fn transforms_preserve_parts_on_sampled_trees() {
    // Deterministic sample across several part sizes.
    for (n0, n1) in [(4, 3), (5, 4), (6, 3), (3, 6), (5, 5)] {
        let total = labeled_tree_count(n0, n1) as u64;
        for index in (0..total).step_by((total / SAMPLE_STEP).max(1) as usize) {
            let tree = bipartite_tree_at(n0, n1, index).unwrap();
            for root in 0..n0 {
                if tree.graph().degree(root) < 2 {
                    continue;
                }
                if let Some(ctx) = build_flatten_context(&tree, root).unwrap() {
                    let rewritten = apply_flatten(&tree, root, &ctx).unwrap();
                    assert_eq!(rewritten.part_size(Part::Left), tree.part_size(Part::Left));
                    assert_eq!(rewritten.part_size(Part::Right), tree.part_size(Part::Right));
                    assert!(rewritten.graph().is_tree());
                    let audit = audit_flatten(&tree, &rewritten, &ctx).unwrap();
                    assert!(audit.all_clauses_hold());
                }
            }
        }
    }
}
