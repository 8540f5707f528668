//! Star-forest ascending subgraph decompositions of bipartite graphs.
//!
//! A graph with `n(n+1)/2` edges has an *ascending subgraph decomposition*
//! (ASD) when its edge set splits into parts `F_1, ..., F_n` such that
//! `F_i` has `i` edges and is isomorphic to a subgraph of `F_{i+1}`. This
//! crate constructs such decompositions for bipartite graphs in which every
//! part is a star forest with all star centers in one stable set `X`,
//! whenever the `X`-degree sequence `d_1 <= ... <= d_k` satisfies
//! `d_{k-i} >= n - i` for `0 <= i < k`.
//!
//! The construction runs through a left-justified *reduced* form of the
//! input: an integer matrix with row sums `d` and column sums `1..=n` whose
//! columns ascend in the dominance order is realized as a bipartite
//! multigraph, that multigraph is edge-colored so vertex `x_i` sees exactly
//! the colors `{1..=d_i}`, and the color classes are read back as star
//! forests. A kernel-based list edge coloring transfers the decomposition
//! from the reduced graph to the original one. [`pipeline::decompose`] runs
//! the whole chain and returns a verified certificate; [`oracle`] supplies
//! exhaustive ground truth at desk scale.
//!
//! The sweep drivers in [`campaign`] are data-parallel via rayon under the
//! default `parallel` feature; build with `--no-default-features` for the
//! purely sequential library.

pub mod campaign;
pub mod error;
pub mod graph;
pub mod listcolor;
pub mod matrix;
pub mod multigraph;
pub mod oracle;
pub mod pipeline;
pub mod reduction;
pub mod sequential;

pub use error::{Error, Result};
pub use graph::{
    dominance_leq, star_forest_embeds, triangular_order, verify_asd, BipartiteGraph,
    Decomposition, DegreeVector, Side, StarForest, VerificationReport,
};
pub use matrix::AscendingMatrix;
pub use multigraph::{AuxMultigraph, EdgeColoring};
pub use pipeline::{decompose, decompose_reduced, PipelineResult, SolverMode, SolverPath};
