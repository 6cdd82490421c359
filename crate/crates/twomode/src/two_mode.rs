//! The two-mode edge-list text format.
//!
//! One edge per line as `left-label right-label`. Fields are separated
//! by a tab when the line contains one (so labels may hold spaces),
//! otherwise by runs of spaces. Lines starting with `#` and blank
//! lines are ignored.

use std::collections::BTreeSet;

use crate::bipartite::BipartiteGraph;
use crate::error::{Error, Result};
use crate::extremal::extremal_params;

/// Parsed rows of a two-mode edge list, in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoModeEdgeList {
    pub rows: Vec<(String, String)>,
}

impl TwoModeEdgeList {
    /// Parse the text format. Rejects lines without exactly two
    /// fields, duplicate pairs, and labels appearing in both parts.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Vec<(String, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = if line.contains('\t') {
                line.split('\t').map(str::trim).filter(|f| !f.is_empty()).collect()
            } else {
                line.split(' ').filter(|f| !f.is_empty()).collect()
            };
            if fields.len() != 2 {
                return Err(Error::MalformedLine { line: line_no });
            }
            let pair = (fields[0].to_string(), fields[1].to_string());
            if rows.contains(&pair) {
                return Err(Error::DuplicatePair { left: pair.0, right: pair.1 });
            }
            rows.push(pair);
        }
        let lefts: BTreeSet<&str> = rows.iter().map(|(l, _)| l.as_str()).collect();
        for (_, r) in &rows {
            if lefts.contains(r.as_str()) {
                return Err(Error::LabelInBothParts { label: r.clone() });
            }
        }
        Ok(Self { rows })
    }

    pub fn left_labels(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for (l, _) in &self.rows {
            if !seen.contains(&l.as_str()) {
                seen.push(l.as_str());
            }
        }
        seen
    }

    pub fn right_labels(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for (_, r) in &self.rows {
            if !seen.contains(&r.as_str()) {
                seen.push(r.as_str());
            }
        }
        seen
    }

    /// Build the graph. Node ids follow first appearance, left part
    /// first: left labels get `0..n_left`, right labels follow.
    pub fn to_bipartite(&self) -> Result<BipartiteGraph> {
        let lefts = self.left_labels();
        let rights = self.right_labels();
        let index_of = |list: &[&str], label: &str| {
            list.iter().position(|x| *x == label).expect("label collected above")
        };
        let edges: Vec<(usize, usize)> = self
            .rows
            .iter()
            .map(|(l, r)| (index_of(&lefts, l), index_of(&rights, r)))
            .collect();
        let labels: Vec<String> = lefts
            .iter()
            .chain(rights.iter())
            .map(|s| s.to_string())
            .collect();
        BipartiteGraph::from_two_mode(lefts.len(), rights.len(), &edges, Some(labels))
    }

    /// Tab-separated text form, newline-terminated.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (l, r) in &self.rows {
            out.push_str(l);
            out.push('\t');
            out.push_str(r);
            out.push('\n');
        }
        out
    }
}

/// Edge list of the extremal tree in its canonical labeling: root
/// `"0"`, right-part nodes `"1"..="n1"`, depth-2 leaves `"n1+1"` on,
/// attached round-robin.
pub fn extremal_edge_list(n0: usize, n1: usize) -> Result<TwoModeEdgeList> {
    let params = extremal_params(n0, n1)?;
    let mut rows = Vec::with_capacity(n0 + n1 - 1);
    for hub in 1..=n1 {
        rows.push(("0".to_string(), hub.to_string()));
    }
    for j in 1..=params.m {
        rows.push(((n1 + j).to_string(), ((j - 1) % n1 + 1).to_string()));
    }
    Ok(TwoModeEdgeList { rows })
}
