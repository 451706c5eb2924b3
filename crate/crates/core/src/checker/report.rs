use serde::{Deserialize, Serialize};

use super::delta::BunkbedDelta;
use crate::graph::Graph;
use crate::rational::{self, Rational};

/// Stated in every report: finitely many weights cannot cover the
/// continuum of symmetric weights.
pub const COVERAGE_NOTE: &str =
    "finite sample of symmetric weights; absence of violations here does not cover weights outside the sample";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphId {
    pub name: String,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphId {
    pub fn new(name: impl Into<String>, g: &Graph) -> Self {
        GraphId {
            name: name.into(),
            vertices: g.vertex_count(),
            edges: g.edges().to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMethod {
    /// One enumeration of the bunkbed, contracted against every grid point.
    GridSweep,
    /// One enumeration per weight, tracking every bunkbed vertex.
    Enumeration,
    /// Two decomposition queries per pair and weight.
    Decomposition,
}

/// A pair whose computation failed, typically on a capacity limit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairError {
    pub x: usize,
    pub y: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub graph: GraphId,
    /// For each pair, the weight with the smallest delta (first one on ties).
    pub pairs: Vec<BunkbedDelta>,
    #[serde(with = "rational::serde_str_opt")]
    pub min_delta: Option<Rational>,
    /// Every evaluation with `delta < threshold`.
    pub violations: Vec<BunkbedDelta>,
    pub errors: Vec<PairError>,
    pub seed: Option<u64>,
    pub method: CheckMethod,
    pub elapsed_ms: u64,
    pub weights_checked: u64,
    pub pairs_checked: usize,
    #[serde(with = "rational::serde_str")]
    pub threshold: Rational,
    /// Same-side deltas confirmed through a collapsed side, when gluing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure_checks: Option<u64>,
    pub coverage: String,
}

impl CheckReport {
    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }
}

/// Folds evaluations into a report. Feed it in a fixed order and the report
/// is fixed too.
pub(crate) struct Collector {
    pairs: Vec<(usize, usize)>,
    best: Vec<Option<BunkbedDelta>>,
    violations: Vec<BunkbedDelta>,
    errors: Vec<PairError>,
    threshold: Rational,
    pub weights_checked: u64,
}

impl Collector {
    pub fn new(pairs: Vec<(usize, usize)>, threshold: Rational) -> Self {
        Collector {
            best: vec![None; pairs.len()],
            pairs,
            violations: Vec::new(),
            errors: Vec::new(),
            threshold,
            weights_checked: 0,
        }
    }

    pub fn threshold(&self) -> &Rational {
        &self.threshold
    }

    pub fn record(&mut self, slot: usize, d: BunkbedDelta) {
        if d.delta < self.threshold {
            self.violations.push(d.clone());
        }
        self.offer_best(slot, d);
    }

    /// Candidate for the per-pair minimum without violation bookkeeping.
    pub fn offer_best(&mut self, slot: usize, d: BunkbedDelta) {
        let better = self.best[slot].as_ref().map_or(true, |b| d.delta < b.delta);
        if better {
            self.best[slot] = Some(d);
        }
    }

    pub fn violation(&mut self, d: BunkbedDelta) {
        self.violations.push(d);
    }

    pub fn error(&mut self, slot: usize, message: String) {
        let (x, y) = self.pairs[slot];
        if !self.errors.iter().any(|e| (e.x, e.y) == (x, y)) {
            self.errors.push(PairError { x, y, message });
        }
    }

    pub fn finish(
        self,
        graph: GraphId,
        seed: Option<u64>,
        method: CheckMethod,
        elapsed_ms: u64,
    ) -> CheckReport {
        let pairs: Vec<BunkbedDelta> = self.best.into_iter().flatten().collect();
        let min_delta = pairs.iter().map(|d| d.delta.clone()).min();
        CheckReport {
            graph,
            pairs_checked: self.pairs.len(),
            pairs,
            min_delta,
            violations: self.violations,
            errors: self.errors,
            seed,
            method,
            elapsed_ms,
            weights_checked: self.weights_checked,
            threshold: self.threshold,
            closure_checks: None,
            coverage: COVERAGE_NOTE.to_string(),
        }
    }
}
