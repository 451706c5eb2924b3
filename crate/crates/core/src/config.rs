use serde::{Deserialize, Serialize};

pub const DEFAULT_ENUMERATION_CAP: usize = 30;
pub const DEFAULT_FRONTIER_WIDTH: usize = 20;

/// Exact engine used for a whole-graph solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    BruteForce,
    Frontier,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Largest number of edges brute force will enumerate (`2^cap` atoms).
    pub enumeration_cap: usize,
    /// Largest vertex frontier the frontier engine will carry.
    pub frontier_width: usize,
    /// Solver for blocks the decomposition cannot split further, and for
    /// joint events.
    pub leaf_engine: Engine,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            frontier_width: DEFAULT_FRONTIER_WIDTH,
            leaf_engine: Engine::Frontier,
        }
    }
}

impl EngineConfig {
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.enumeration_cap = cap.max(1);
        self
    }

    pub fn with_leaf_engine(mut self, engine: Engine) -> Self {
        self.leaf_engine = engine;
        self
    }
}
