//! Exact edge percolation on bunkbed graphs.
//!
//! * [`graph`]: simple graphs, bunkbed construction, gluing, cut vertices.
//! * [`percolation`]: weights, the atom measure and exact event probabilities
//!   by enumeration or frontier propagation.
//! * [`reduction`]: cut-vertex reductions and the decomposition engine for
//!   two-point probabilities.
//! * [`checker`]: bunkbed inequality checks over weight grids, random weights
//!   and graph families.

pub mod checker;
pub mod config;
pub mod error;
pub mod graph;
pub mod percolation;
pub mod rational;
pub mod reduction;
mod unionfind;

pub use config::{Engine, EngineConfig};
pub use error::{Error, Result};
pub use graph::{BunkbedEdge, BunkbedGraph, BunkbedVertex, EdgeSet, Graph, Layer};
pub use percolation::{ConnectivitySpec, Method, ProbabilityReport, SymmetricWeight, Weight};
pub use rational::Rational;
pub use unionfind::UnionFind;
