//! Checks of `P(x⁻ ∼ y⁻) ≥ P(x⁻ ∼ y⁺)` over sets of symmetric weights.
//!
//! Every check is exact. Any finite set of weights is a sample of the
//! continuum of symmetric weights, and reports say so.

mod delta;
mod families;
mod gluing;
mod report;
mod search;
mod source;
mod sweep;

use std::time::Instant;

use rayon::prelude::*;

pub use delta::{bunkbed_delta, BunkbedDelta};
pub use families::{
    all_graphs, canonical_graph, enumerate_trees, enumerate_trees_bounded, isomorphic,
    tree_canonical_form, ALL_GRAPHS_BOUND, DEFAULT_TREE_BOUND,
};
pub use gluing::verify_gluing_closure;
pub use report::{CheckMethod, CheckReport, GraphId, PairError, COVERAGE_NOTE};
pub use search::{
    load_violation, persist_violation, recheck, search_candidates, Candidate, SearchFilters,
    SearchItem, ViolationRecord,
};
pub use source::{WeightSource, DEFAULT_RANDOM_DENOMINATOR};
pub use sweep::feasible as grid_sweep_feasible;

use crate::config::{Engine, EngineConfig};
use crate::error::{Error, Result};
use crate::graph::{BunkbedGraph, Graph};
use crate::percolation::{partition_masses, SymmetricWeight};
use crate::rational::{self, Rational};
use report::Collector;

/// Bunkbeds up to this many edges are enumerated once per weight when the
/// strategy is automatic.
pub const ENUMERATION_EDGE_LIMIT: usize = 20;

/// Weights evaluated in parallel per batch.
const BATCH: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Grid sweep for feasible grids, else enumeration for small bunkbeds,
    /// else decomposition.
    #[default]
    Auto,
    GridSweep,
    Enumeration,
    Decomposition,
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub engine: EngineConfig,
    pub strategy: Strategy,
    /// Pairs to check; every `x ≤ y` when `None`.
    pub pairs: Option<Vec<(usize, usize)>>,
    /// Deltas strictly below this are violations.
    pub threshold: Rational,
    /// Name recorded in the report.
    pub name: String,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            engine: EngineConfig::default(),
            strategy: Strategy::Auto,
            pairs: None,
            threshold: rational::zero(),
            name: "graph".into(),
        }
    }
}

impl CheckOptions {
    pub fn named(name: impl Into<String>) -> Self {
        CheckOptions {
            name: name.into(),
            ..CheckOptions::default()
        }
    }
}

/// Unordered pairs `x ≤ y`, diagonal included.
pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect()
}

fn enumeration_fits(base: &Graph, cfg: &EngineConfig) -> bool {
    let k = 2 * base.edge_count() + base.vertex_count();
    2 * base.vertex_count() <= 16 && k <= cfg.enumeration_cap && k < 63
}

fn choose(base: &Graph, source: &WeightSource, opts: &CheckOptions) -> Result<CheckMethod> {
    let grid = match source {
        WeightSource::Grid(values) => Some(values.as_slice()),
        _ => None,
    };
    let sweepable = grid.is_some_and(|g| sweep::feasible(base, g));
    let k = 2 * base.edge_count() + base.vertex_count();
    Ok(match opts.strategy {
        Strategy::Auto if sweepable => CheckMethod::GridSweep,
        Strategy::Auto if k <= ENUMERATION_EDGE_LIMIT && enumeration_fits(base, &opts.engine) => {
            CheckMethod::Enumeration
        }
        Strategy::Auto => CheckMethod::Decomposition,
        Strategy::GridSweep if sweepable => CheckMethod::GridSweep,
        Strategy::GridSweep => {
            return Err(Error::InvalidWeight(
                "grid sweep needs a grid source and a small enough graph".into(),
            ))
        }
        Strategy::Enumeration if enumeration_fits(base, &opts.engine) => CheckMethod::Enumeration,
        Strategy::Enumeration => {
            return Err(Error::CapExceeded {
                edges: k,
                cap: opts.engine.enumeration_cap,
                block: None,
            })
        }
        Strategy::Decomposition => CheckMethod::Decomposition,
    })
}

/// Evaluates every selected pair of `base` under every weight of `source`.
/// Failures on individual pairs (capacity limits) are recorded in the
/// report; invalid input is an error.
pub fn check_graph(
    base: &Graph,
    source: &WeightSource,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let start = Instant::now();
    source.validate()?;
    let pairs = match &opts.pairs {
        Some(list) => {
            for &(x, y) in list {
                base.check_vertex(x)?;
                base.check_vertex(y)?;
            }
            list.clone()
        }
        None => all_pairs(base.vertex_count()),
    };
    let method = choose(base, source, opts)?;
    let mut collector = Collector::new(pairs.clone(), opts.threshold.clone());
    match (method, source) {
        (CheckMethod::GridSweep, WeightSource::Grid(values)) => {
            sweep::run(base, values, &pairs, &mut collector)
        }
        (CheckMethod::Enumeration, _) => {
            let bb = BunkbedGraph::new(base)?;
            let n = base.vertex_count();
            let edges: Vec<usize> = (0..bb.total().edge_count()).collect();
            let tracked: Vec<usize> = (0..2 * n).collect();
            per_weight(base, source, &pairs, &mut collector, |w| {
                let pm = partition_masses(
                    bb.total(),
                    &w.to_weight(&bb),
                    &edges,
                    &tracked,
                    Engine::BruteForce,
                    &opts.engine,
                )?;
                Ok(pairs
                    .iter()
                    .map(|&(x, y)| {
                        Ok(BunkbedDelta::new(
                            base,
                            w,
                            x,
                            y,
                            pm.connected(x, y),
                            pm.connected(x, n + y),
                        ))
                    })
                    .collect())
            })?;
        }
        _ => per_weight(base, source, &pairs, &mut collector, |w| {
            Ok(pairs
                .iter()
                .map(|&(x, y)| bunkbed_delta(base, w, x, y, &opts.engine))
                .collect())
        })?,
    }
    let elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(collector.finish(
        GraphId::new(opts.name.clone(), base),
        source.seed(),
        method,
        elapsed_ms,
    ))
}

/// Weights in batches evaluated in parallel, fed to the collector in source
/// order so the report does not depend on scheduling.
fn per_weight<F>(
    base: &Graph,
    source: &WeightSource,
    pairs: &[(usize, usize)],
    collector: &mut Collector,
    evaluate: F,
) -> Result<()>
where
    F: Fn(&SymmetricWeight) -> Result<Vec<Result<BunkbedDelta>>> + Sync,
{
    let mut weights = source.weights(base)?;
    loop {
        let batch: Vec<SymmetricWeight> = weights.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            return Ok(());
        }
        let results: Vec<Result<Vec<Result<BunkbedDelta>>>> =
            batch.par_iter().map(&evaluate).collect();
        for result in results {
            collector.weights_checked += 1;
            match result {
                Ok(per_pair) => {
                    for (slot, d) in per_pair.into_iter().enumerate() {
                        match d {
                            Ok(d) => collector.record(slot, d),
                            Err(e) if is_capacity(&e) => collector.error(slot, e.to_string()),
                            Err(e) => return Err(e),
                        }
                    }
                }
                Err(e) if is_capacity(&e) => {
                    for slot in 0..pairs.len() {
                        collector.error(slot, e.to_string());
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }
}

fn is_capacity(e: &Error) -> bool {
    matches!(
        e,
        Error::CapExceeded { .. } | Error::FrontierTooWide { .. } | Error::BoundExceeded { .. }
    )
}
