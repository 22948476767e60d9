//! How fragile is a network? `netsens` measures the sensitivity of a graph
//! to systematic vertex removal: pick a strategy (highest centrality first,
//! community-aware, or uniformly random), delete vertices until a chosen
//! fraction of the edges is gone, and quantify how far the damaged graph's
//! distance structure has drifted from the original.
//!
//! The building blocks:
//!
//! * [`graph`] — compact adjacency-list graphs, directed or undirected,
//!   with edge-list I/O and vertex-subset extraction.
//! * [`neighborhood`] — the neighborhood function N(t) (how many ordered
//!   pairs are within distance t), computed exactly by BFS or estimated
//!   with probabilistic counters; harmonic diameter, average distance, and
//!   the shortest-path-length distribution derived from it.
//! * [`centrality`] — degree, closeness, betweenness, eigenvector, and
//!   PageRank scores.
//! * [`removal`] — removal plans: orderings of the vertices by strategy,
//!   together with the running count of edges each prefix destroys, and
//!   the machinery to apply a plan up to a modification level θ (the
//!   smallest prefix that destroys at least ⌈θ·m⌉ edges).
//! * [`compare`] — original-vs-damaged comparisons: relative change of the
//!   distance summaries, divergences between shortest-path distributions,
//!   rank correlation of centrality scores across the removal.
//! * [`generators`] — Erdős–Rényi, preferential-attachment, small-world,
//!   and configuration-model random graphs for baselines.
//! * [`harness`] — batch experiments over graphs × strategies × levels with
//!   seeded reproducibility and CSV output.
//!
//! Everything randomized takes an explicit `u64` seed and is deterministic
//! for a given seed, independent of how many worker threads run the
//! computation.

pub mod centrality;
pub mod compare;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
mod hll;
pub mod neighborhood;
pub mod removal;
pub mod seeds;

pub use error::{Error, Result};
