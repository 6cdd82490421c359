//! The balanced depth-2 tree that maximizes closeness centralization
//! over bipartite graphs with fixed part sizes, and closed forms for
//! its centralization.
//!
//! For part sizes `(n0, n1)` the extremal tree has a root in the left
//! part adjacent to every right-part node, with the remaining
//! `m = n0 - 1` left nodes spread as evenly as possible below the
//! right-part nodes: writing `m = p*n1 + r` with `0 <= r < n1`, exactly
//! `r` of them get `ceil(m/n1)` children and `n1 - r` get
//! `floor(m/n1)`.

use num_bigint::BigInt;

use crate::bipartite::{BipartiteGraph, Part};
use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::rational::{integer, rational, reciprocal, ExactRational};

/// Euclidean decomposition `m = p*n1 + r` of `m = n0 - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalParams {
    pub n0: usize,
    pub n1: usize,
    /// `n0 - 1`, the number of left nodes besides the root.
    pub m: usize,
    pub p: usize,
    pub r: usize,
}

pub fn extremal_params(n0: usize, n1: usize) -> Result<ExtremalParams> {
    if n0 == 0 || n1 == 0 {
        return Err(Error::InvalidSize { left: n0, right: n1 });
    }
    let m = n0 - 1;
    Ok(ExtremalParams { n0, n1, m, p: m / n1, r: m % n1 })
}

/// Multiset of total-distance values, as sorted `(value, multiplicity)`
/// pairs covering all `n0 + n1` nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WProfile {
    entries: Vec<(u64, u64)>,
}

impl WProfile {
    fn from_values(mut values: Vec<(u64, u64)>) -> Self {
        values.retain(|&(_, count)| count > 0);
        values.sort_unstable();
        let mut entries: Vec<(u64, u64)> = Vec::with_capacity(values.len());
        for (value, count) in values {
            match entries.last_mut() {
                Some(last) if last.0 == value => last.1 += count,
                _ => entries.push((value, count)),
            }
        }
        Self { entries }
    }

    /// Profile computed from any total-distance table.
    pub fn from_distances(w: &[u64]) -> Self {
        Self::from_values(w.iter().map(|&value| (value, 1)).collect())
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    pub fn node_count(&self) -> u64 {
        self.entries.iter().map(|&(_, count)| count).sum()
    }

    /// Sum of `multiplicity / value` over the profile.
    pub fn closeness_sum(&self) -> ExactRational {
        self.entries
            .iter()
            .map(|&(value, count)| integer(count) * reciprocal(value))
            .sum()
    }
}

/// Build the extremal tree with its canonical labeling: root `0`,
/// right-part nodes `1..=n1`, and the j-th depth-2 leaf labeled
/// `n1 + j` and attached round-robin to node `((j-1) mod n1) + 1`.
/// Returns the graph and the root id.
pub fn build_extremal_tree(n0: usize, n1: usize) -> Result<(BipartiteGraph, NodeId)> {
    let params = extremal_params(n0, n1)?;
    let n = n0 + n1;
    let mut parts = vec![Part::Right; n];
    parts[0] = Part::Left;
    let mut edges = Vec::with_capacity(n - 1);
    for hub in 1..=n1 {
        edges.push((0, hub));
    }
    for j in 1..=params.m {
        let leaf = n1 + j;
        parts[leaf] = Part::Left;
        edges.push((leaf, (j - 1) % n1 + 1));
    }
    let graph = BipartiteGraph::from_parts(parts, &edges, None)?;
    Ok((graph, 0))
}

/// The total-distance profile of the extremal tree, in closed form.
///
/// With `c = ceil(m/n1)` and `f = floor(m/n1)`:
/// the root has `W = n1 + 2m`; `r` root neighbors have
/// `W = c + 1 + 2(n1-1) + 3(m-c)` and `n1-r` have the floor version;
/// the `r*c` depth-2 nodes below heavy neighbors have
/// `W = 1 + 2c + 3(n1-1) + 4(m-c)` and the `(n1-r)*f` remaining ones
/// the floor version.
pub fn closed_form_w_profile(n0: usize, n1: usize) -> Result<WProfile> {
    let ExtremalParams { m, p, r, n1, .. } = extremal_params(n0, n1)?;
    let (m, p, r, n1) = (m as u64, p as u64, r as u64, n1 as u64);
    let ceil = if r > 0 { p + 1 } else { p };
    let floor = p;
    let neighbor_w = |children: u64| children + 1 + 2 * (n1 - 1) + 3 * (m - children);
    let leaf_w = |children: u64| 1 + 2 * children + 3 * (n1 - 1) + 4 * (m - children);
    Ok(WProfile::from_values(vec![
        (n1 + 2 * m, 1),
        (neighbor_w(ceil), r),
        (neighbor_w(floor), n1 - r),
        (leaf_w(ceil), r * ceil),
        (leaf_w(floor), (n1 - r) * floor),
    ]))
}

/// Closeness centralization of the extremal tree's root, evaluated
/// from the closed-form profile: `n * C(root) - sum_v C(v)`.
pub fn closed_form_centralization(n0: usize, n1: usize) -> Result<ExactRational> {
    let profile = closed_form_w_profile(n0, n1)?;
    let n = (n0 + n1) as u64;
    let root_w = (n1 + 2 * (n0 - 1)) as u64;
    Ok(integer(n) * reciprocal(root_w) - profile.closeness_sum())
}

/// The same quantity evaluated from the fully simplified fraction form
/// (one branch for `r > 0`, one for `r = 0`). Kept as an independent
/// cross-check of the profile route.
pub fn simplified_centralization(n0: usize, n1: usize) -> Result<ExactRational> {
    let ExtremalParams { m, r, n1, .. } = extremal_params(n0, n1)?;
    let big = |x: i64| BigInt::from(x);
    let (m, r, n1) = (m as i64, r as i64, n1 as i64);
    let frac = |num: BigInt, den: BigInt| ExactRational::new(num, den);
    let head = frac(big(n1 + m), big(n1 + 2 * m));
    if r > 0 {
        Ok(head
            - frac(
                big(r * n1),
                big(3 * m * n1 - 2 * m + 2 * n1 * n1 - 3 * n1 + 2 * r),
            )
            - frac(
                big(n1 * (n1 - r)),
                big(3 * m * n1 - 2 * m + 2 * n1 * n1 - n1 + 2 * r),
            )
            - frac(
                big(r * (m + n1 - r)),
                big(4 * m * n1 - 2 * m + 3 * n1 * n1 - 4 * n1 + 2 * r),
            )
            - frac(
                big((n1 - r) * (m - r)),
                big(4 * m * n1 - 2 * m + 3 * n1 * n1 - 2 * n1 + 2 * r),
            ))
    } else {
        Ok(head
            - frac(big(n1 * n1), big(3 * m * n1 - 2 * m + 2 * n1 * n1 - n1))
            - frac(big(n1 * m), big(4 * m * n1 - 2 * m + 3 * n1 * n1 - 2 * n1)))
    }
}

/// Lower bound `(n1 - 1) / (2(2n1 - 1))` on the extremal tree's root
/// centralization, valid for all `n0 >= n1`.
pub fn lower_bound(n1: usize) -> Result<ExactRational> {
    if n1 == 0 {
        return Err(Error::InvalidSize { left: 1, right: n1 });
    }
    Ok(rational(n1 as i64 - 1, 2 * (2 * n1 as i64 - 1)))
}

/// Limit of the root centralization for fixed `n1` as `n0` grows:
/// `(n1 - 1) / (4n1 - 2)`. Identical to [`lower_bound`]; both forms
/// appear in different roles (bound vs. limit), so both are exposed.
pub fn asymptotic_limit(n1: usize) -> Result<ExactRational> {
    if n1 == 0 {
        return Err(Error::InvalidSize { left: 1, right: n1 });
    }
    Ok(rational(n1 as i64 - 1, 4 * n1 as i64 - 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::{all_total_distances, centralization, part_max_centralization};
    use crate::rational::decimal_string;
    use num_traits::Zero;

    #[test]
    fn params_decompose_as_expected() {
        let p = extremal_params(14, 18).unwrap();
        assert_eq!((p.m, p.p, p.r), (13, 0, 13));
        let p = extremal_params(18, 14).unwrap();
        assert_eq!((p.m, p.p, p.r), (17, 1, 3));
        let p = extremal_params(3, 2).unwrap();
        assert_eq!((p.m, p.p, p.r), (2, 1, 0));
        assert!(extremal_params(0, 3).is_err());
    }

    #[test]
    fn tree_for_18_14_has_the_right_degrees() {
        let (bg, root) = build_extremal_tree(18, 14).unwrap();
        assert_eq!(bg.graph().degree(root), 14);
        let mut hub_degrees: Vec<usize> = (1..=14).map(|h| bg.graph().degree(h)).collect();
        hub_degrees.sort_unstable();
        assert_eq!(&hub_degrees[..11], &[2; 11]);
        assert_eq!(&hub_degrees[11..], &[3; 3]);
    }

    #[test]
    fn tree_for_14_18_matches_the_drawn_shape() {
        let (bg, root) = build_extremal_tree(14, 18).unwrap();
        assert_eq!(bg.graph().degree(root), 18);
        let with_child = (1..=18).filter(|&h| bg.graph().degree(h) == 2).count();
        let bare = (1..=18).filter(|&h| bg.graph().degree(h) == 1).count();
        assert_eq!((with_child, bare), (13, 5));
    }

    #[test]
    fn single_right_node_gives_a_star_through_the_hub() {
        let (bg, root) = build_extremal_tree(4, 1).unwrap();
        assert_eq!(bg.graph().degree(root), 1);
        assert_eq!(bg.graph().degree(1), 4);
        assert!(bg.graph().is_tree());
    }

    #[test]
    fn profile_small_cases_match_direct_bfs() {
        // (3,2): {6 x1, 7 x2, 10 x2}; (4,3): {9 x1, 12 x3, 17 x3}.
        let profile = closed_form_w_profile(3, 2).unwrap();
        assert_eq!(profile.entries(), &[(6, 1), (7, 2), (10, 2)]);
        let profile = closed_form_w_profile(4, 3).unwrap();
        assert_eq!(profile.entries(), &[(9, 1), (12, 3), (17, 3)]);
        let profile = closed_form_w_profile(14, 18).unwrap();
        assert_eq!(profile.entries()[0], (44, 1)); // root: n1 + 2m = 44

        for (n0, n1) in [(1, 1), (2, 1), (1, 5), (3, 2), (4, 3), (7, 3), (5, 8), (9, 4)] {
            let (bg, _) = build_extremal_tree(n0, n1).unwrap();
            let w = all_total_distances(bg.graph()).unwrap();
            assert_eq!(
                closed_form_w_profile(n0, n1).unwrap(),
                WProfile::from_distances(&w),
                "profile mismatch at ({n0},{n1})"
            );
        }
    }

    #[test]
    fn closed_form_agrees_with_bfs_on_small_grid() {
        for n0 in 1..=12 {
            for n1 in 1..=12 {
                let (bg, root) = build_extremal_tree(n0, n1).unwrap();
                assert_eq!(
                    closed_form_centralization(n0, n1).unwrap(),
                    centralization(bg.graph(), root).unwrap(),
                    "closed form mismatch at ({n0},{n1})"
                );
            }
        }
    }

    #[test]
    fn known_values() {
        assert_eq!(closed_form_centralization(3, 2).unwrap(), rational(19, 105));
        assert_eq!(decimal_string(&closed_form_centralization(3, 2).unwrap(), 5), "0.18095");
        assert_eq!(decimal_string(&closed_form_centralization(14, 18).unwrap(), 3), "0.329");
        assert_eq!(decimal_string(&closed_form_centralization(18, 14).unwrap(), 3), "0.299");
    }

    #[test]
    fn simplified_form_matches_profile_form() {
        for n0 in 1..=40 {
            for n1 in 1..=20 {
                assert_eq!(
                    simplified_centralization(n0, n1).unwrap(),
                    closed_form_centralization(n0, n1).unwrap(),
                    "simplified form mismatch at ({n0},{n1})"
                );
            }
        }
    }

    #[test]
    fn bound_values() {
        assert!(lower_bound(1).unwrap().is_zero());
        assert_eq!(lower_bound(2).unwrap(), rational(1, 6));
        assert_eq!(lower_bound(3).unwrap(), rational(1, 5));
        assert_eq!(asymptotic_limit(2).unwrap(), rational(1, 6));
        assert_eq!(asymptotic_limit(3).unwrap(), lower_bound(3).unwrap());
        // (3,2): 19/105 >= 1/6.
        assert!(closed_form_centralization(3, 2).unwrap() >= lower_bound(2).unwrap());
    }

    #[test]
    fn centralization_approaches_the_limit_from_below_the_quarter() {
        for n1 in 1..=8 {
            let value = closed_form_centralization(10_000, n1).unwrap();
            let limit = asymptotic_limit(n1).unwrap();
            let gap = if value > limit { value - limit.clone() } else { limit.clone() - value };
            assert!(gap < rational(1, 1000), "limit gap too large for n1={n1}");
            assert!(limit < rational(1, 4) || n1 == 1);
        }
    }

    #[test]
    fn right_part_degrees_differ_by_at_most_one() {
        for n0 in 1..=20 {
            for n1 in 1..=20 {
                let (bg, _) = build_extremal_tree(n0, n1).unwrap();
                let degrees: Vec<usize> =
                    (1..=n1).map(|h| bg.graph().degree(h)).collect();
                let max = *degrees.iter().max().unwrap();
                let min = *degrees.iter().min().unwrap();
                assert!(max - min <= 1, "unbalanced at ({n0},{n1})");
            }
        }
    }

    #[test]
    fn root_is_the_left_part_argmax() {
        let (bg, root) = build_extremal_tree(3, 2).unwrap();
        let (ties, value) = part_max_centralization(&bg, Part::Left).unwrap();
        assert_eq!(ties, vec![root]);
        assert_eq!(value, rational(19, 105));
    }
}
