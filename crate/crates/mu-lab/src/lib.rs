//! mu-lab: an exact laboratory for the Colin de Verdiere graph parameter.
//!
//! The crate computes rigorous lower and upper bounds on the parameter
//! mu(G) for small graphs, verifies candidate certificate matrices with
//! exact rational arithmetic, constructs the extremal families that meet
//! the edge bound |E| = t|V| - C(t+1, 2), and sweeps the bound over
//! exhaustive small-graph corpora.
//!
//! Module map:
//! - [`graph`]: bitset graphs, standard operations, named families.
//! - [`graph6`]: text interchange format.
//! - [`corpus`]: canonical forms, isomorphism-free enumeration, file streams.
//! - [`recognizers`]: linear forests, outerplanarity, planarity, chordality,
//!   cliques, small subgraph search.
//! - [`minors`]: exact minor containment, Hadwiger number, Petersen family.
//! - [`linalg`]: exact rational matrices (inertia, rank, nullspace).
//! - [`certificates`]: certificate matrices witnessing mu(G) >= corank.
//! - [`engine`]: the rule engine combining every bound into an interval.
//! - [`harness`]: edge-bound verdicts, campaigns, reports.
//!
//! ```
//! use mu_lab::{mu_bounds, EngineConfig, Graph};
//!
//! let bounds = mu_bounds(&Graph::petersen(), &EngineConfig::default()).unwrap();
//! assert_eq!(bounds.value(), Some(5));
//!
//! // The join of an edge-maximal planar graph with K_{t-3} meets the edge
//! // bound t n - C(t+1, 2) with equality and has parameter exactly t.
//! let base = Graph::stacked_triangulation(8, 1).unwrap();
//! let g = base.join(&Graph::complete(4).unwrap()).unwrap();
//! let bounds = mu_bounds(&g, &EngineConfig::default()).unwrap();
//! assert_eq!(bounds.value(), Some(7));
//! assert_eq!(g.edge_count(), 7 * g.n() - 28);
//! ```

pub mod certificates;
pub mod corpus;
pub mod engine;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod linalg;
pub mod minors;
pub mod planarity;
pub mod recognizers;

pub use engine::{mu_bounds, EngineConfig, MuBounds};
pub use graph::{Graph, GraphError, VertexSet};
