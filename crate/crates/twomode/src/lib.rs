//! Closeness centralization for two-mode (bipartite) networks.
//!
//! The crate computes per-node closeness `C(v) = 1/W(v)` and Freeman
//! centralization `C1(v) = sum_u [C(v) - C(u)]` with exact rational
//! arithmetic, builds the balanced depth-2 tree that maximizes `C1`
//! among all bipartite graphs with fixed part sizes, and verifies that
//! extremality two independent ways: exhaustive enumeration of small
//! labeled trees and connected graphs, and audited graph rewrites that
//! strictly increase the root's centralization step by step.
//!
//! The `twomode` binary exposes the whole surface; see the crate
//! README for the file format and subcommands.

pub mod bipartite;
pub mod centrality;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod rational;
pub mod report;
pub mod transforms;
pub mod two_mode;

pub use bipartite::{BipartiteGraph, Part};
pub use error::{Error, Result};
pub use graph::{Graph, NodeId};
pub use rational::ExactRational;
