use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Enumeration of every edge subset.
    BruteForce,
    /// Edge-by-edge propagation of connectivity states over a vertex frontier.
    Frontier,
    /// Cut-vertex reduction with exact leaf solves.
    Decomposition,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::BruteForce => "brute_force",
            Method::Frontier => "frontier",
            Method::Decomposition => "decomposition",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbabilityReport {
    pub value: Rational,
    pub method: Method,
    /// Atoms for brute force; state transitions for the frontier engine;
    /// the sum over leaf solves for decomposition.
    pub atoms_evaluated: u64,
    pub elapsed: Duration,
}
