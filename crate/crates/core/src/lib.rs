//! Certificates for 2-layer `k`-planar graphs of pathwidth `k + 1`.
//!
//! The crate builds the grid family `G_k` and the wall family `W_k`, checks
//! the canonical two-layer drawing of `W_k` for per-edge crossing counts,
//! verifies the branch-set minor `G_k ⪯ W_k`, computes exact pathwidth by
//! branch and bound over vertex separation layouts, and simulates the node
//! searching game whose optimum is one more than the pathwidth.

pub mod certify;
pub mod drawing;
pub mod families;
pub mod graph;
pub mod minors;
pub mod nodesearch;
pub mod pathwidth;
pub mod svg;

pub use graph::{Coord, Edge, Graph, GraphError, VertexId, VertexSet};
