//! Approximate shortest-path toolkit built around min-plus matrix products.
//!
//! The crate has three layers:
//!
//! * graph and matrix foundations ([`graph`], [`matrix`]), including the exact
//!   Dijkstra and hop-bounded Bellman-Ford oracles that every approximation
//!   claim is tested against;
//! * the algorithmic core: exact and approximate distance products with
//!   witness recovery ([`minplus`]), hopset construction and verification
//!   ([`hopset`]), multi-source approximate shortest paths ([`msp`]), and
//!   k-nearest-neighbor distances via truncated products ([`knn`]);
//! * a deterministic congested-clique simulator with message and round
//!   accounting, plus the round-exponent calculator ([`ccsim`]).

pub mod bigmat;
pub mod ccsim;
pub mod error;
pub mod gen;
pub mod graph;
pub mod hopset;
pub mod knn;
pub mod matrix;
pub mod minplus;
pub mod msp;

pub use error::Error;
pub use graph::{PathResult, VertexId, WeightedGraph};
pub use hopset::{Hopset, HopsetReport};
pub use matrix::{Dist, DistMatrix};
pub use minplus::{ScaleParams, WitnessMatrix};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Exact rational used for approximation parameters such as epsilon.
pub type Ratio = num_rational::Ratio<u64>;
