//! Cyclic-triangle factors in oriented graphs.
//!
//! Deciding whether an oriented graph with high minimum semidegree has a
//! cyclic triangle factor comes down to a dichotomy: either a factor exists
//! or the graph carries a divisibility barrier. This crate implements both
//! sides exactly at desk scale, plus the machinery around them:
//!
//! - [`graph`]: the oriented-graph value type and its degree / co-degree /
//!   triangle-count kernels over dense bitmasks.
//! - [`construct`]: extremal constructions, circulant and near-regular
//!   tournaments, seeded random generators, and exhaustive enumeration of
//!   labeled regular tournaments.
//! - [`hypergraph`]: the 3-uniform hypergraph of cyclic triangles.
//! - [`solver`]: exact factor search, maximum tilings, tiling verification,
//!   and the factor-or-barrier decision.
//! - [`barrier`]: divisibility-barrier verification and exhaustive search.
//! - [`lattice`]: index vectors, edge-vector multiplicities, Hermite-normal-
//!   form lattice membership, 2-transferrals, and partition merging.
//! - [`reach`]: linking-set counts, reachability sets, closed partitions,
//!   and a best-effort absorbing-set builder.
//! - [`audit`]: strong neighborhoods, gamma-extremal partitions, and the
//!   exact-inequality audit engine.
//! - [`dg`]: the ".dg" text format and partition JSON files.
//! - [`cli`] / [`sweep`]: the command-line front end and the
//!   regular-tournament verification sweep.
//!
//! All assertions are exact: thresholds are rationals and the comparisons
//! clear denominators in integer arithmetic.

pub mod audit;
pub mod barrier;
pub mod bitset;
pub mod cli;
pub mod construct;
pub mod dg;
pub mod exact;
pub mod graph;
pub mod hypergraph;
pub mod lattice;
pub mod partition;
pub mod reach;
pub mod solver;
pub mod sweep;
pub mod thresholds;

pub use bitset::VertexSet;
pub use exact::{BigRat, Rat};
pub use graph::{OrientedGraph, Sign};
pub use hypergraph::{build_hypergraph, TriangleHypergraph};
pub use partition::Partition;
pub use solver::{decide, find_factor, max_tiling, verify_tiling, Tiling};
pub use thresholds::Thresholds;
