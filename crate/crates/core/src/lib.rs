//! Exact analytics for connected induced subgraphs of finite simple
//! graphs: counting connected vertex sets, their average order, local
//! variants through a fixed vertex, linear-time tree evaluation, the
//! red/blue auxiliary digraph on connected sets with its verified
//! structural claims, and exhaustive scans over all small connected
//! graphs. All statistics use unbounded integers and exact rationals.

pub mod aux;
pub mod canon;
pub mod connected;
pub mod error;
pub mod graph;
pub mod ratio;
pub mod scan;
pub mod tree;

pub use connected::{ConnStats, LemmaLocalRow, LocalStats};
pub use error::{Error, Result};
pub use graph::{DistanceMatrix, Graph, GraphFormat, PathWitness, VertexSet};

/// The arithmetic crate behind every public count and average, re-exported
/// so downstream code can name those types at the matching version.
pub use num;
