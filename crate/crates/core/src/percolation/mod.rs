//! The percolation measure on edge subsets and exact event probabilities.
//!
//! Every edge is open independently with probability `μ(e)`. The sample space
//! is the set of all edge subsets; it is never materialized, only enumerated.

pub mod enumerate;
mod format;
pub mod frontier;
mod mass;
mod report;
mod spec;
mod weight;

use std::time::Instant;

pub use enumerate::{atom_probability, sum_over_all_atoms};
pub use format::{parse_symmetric_weight, parse_weight, write_symmetric_weight, write_weight};
pub use mass::PartitionMasses;
pub use report::{Method, ProbabilityReport};
pub use spec::ConnectivitySpec;
pub use weight::{SymmetricWeight, Weight};

use crate::config::{Engine, EngineConfig};
use crate::error::Result;
use crate::graph::Graph;
use crate::rational::{self, Rational};

/// Partition distribution of `tracked` using the chosen engine.
pub fn partition_masses(
    g: &Graph,
    w: &Weight,
    edges: &[usize],
    tracked: &[usize],
    engine: Engine,
    cfg: &EngineConfig,
) -> Result<PartitionMasses> {
    let mut unique = tracked.to_vec();
    unique.sort_unstable();
    unique.dedup();
    if unique.len() != tracked.len() {
        return Err(crate::error::Error::InvalidGraph(
            "tracked vertices must be distinct".into(),
        ));
    }
    match engine {
        Engine::BruteForce => enumerate::partition_masses(g, w, edges, tracked, cfg),
        Engine::Frontier => frontier::partition_masses(g, w, edges, tracked, cfg),
    }
}

/// Exact probability of a conjunction of connectivity constraints, by full
/// enumeration of the edges the event reads.
pub fn event_probability(
    g: &Graph,
    w: &Weight,
    spec: &ConnectivitySpec,
    cfg: &EngineConfig,
) -> Result<ProbabilityReport> {
    event_probability_with(g, w, spec, Engine::BruteForce, cfg)
}

pub fn event_probability_with(
    g: &Graph,
    w: &Weight,
    spec: &ConnectivitySpec,
    engine: Engine,
    cfg: &EngineConfig,
) -> Result<ProbabilityReport> {
    let start = Instant::now();
    spec.validate(g)?;
    w.check_graph(g)?;
    let tracked = spec.tracked_vertices();
    let edges = spec.effective_edges(g);
    let masses = partition_masses(g, w, &edges, &tracked, engine, cfg)?;
    Ok(ProbabilityReport {
        value: masses.probability(&spec.positive, &spec.negative),
        method: match engine {
            Engine::BruteForce => Method::BruteForce,
            Engine::Frontier => Method::Frontier,
        },
        atoms_evaluated: masses.work(),
        elapsed: start.elapsed(),
    })
}

/// `P(x ~ y)` by brute force; 1 when `x == y`.
pub fn connection_probability(
    g: &Graph,
    w: &Weight,
    x: usize,
    y: usize,
    cfg: &EngineConfig,
) -> Result<Rational> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Ok(rational::one());
    }
    Ok(event_probability(g, w, &ConnectivitySpec::connected(x, y), cfg)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{BunkbedGraph, EdgeSet};
    use crate::rational::ratio;

    fn half(g: &Graph) -> Weight {
        Weight::uniform(g, ratio(1, 2)).unwrap()
    }

    #[test]
    fn event_probability_examples() {
        let cfg = EngineConfig::default();
        let p3 = Graph::path(3);
        let r =
            event_probability(&p3, &half(&p3), &ConnectivitySpec::connected(0, 2), &cfg).unwrap();
        assert_eq!(r.value, ratio(1, 4));
        assert_eq!(r.method, Method::BruteForce);
        assert_eq!(r.atoms_evaluated, 4);

        let t = Graph::cycle(3);
        assert_eq!(
            connection_probability(&t, &half(&t), 0, 1, &cfg).unwrap(),
            ratio(5, 8)
        );

        let bb = BunkbedGraph::new(&Graph::path(2)).unwrap();
        let c4 = bb.total();
        let w = half(c4);
        // x- = 0, y- = 1, y+ = 3
        assert_eq!(
            connection_probability(c4, &w, 0, 1, &cfg).unwrap(),
            ratio(9, 16)
        );
        assert_eq!(
            connection_probability(c4, &w, 0, 3, &cfg).unwrap(),
            ratio(7, 16)
        );
    }

    #[test]
    fn connection_probability_examples() {
        let cfg = EngineConfig::default();
        let k2 = Graph::path(2);
        let w = Weight::uniform(&k2, ratio(2, 9)).unwrap();
        assert_eq!(
            connection_probability(&k2, &w, 0, 0, &cfg).unwrap(),
            rational::one()
        );
        assert_eq!(
            connection_probability(&k2, &w, 0, 1, &cfg).unwrap(),
            ratio(2, 9)
        );
        // C4 adjacent pair: p + (1-p) p^3
        let c4 = Graph::cycle(4);
        for (n, d) in [(1, 2), (1, 3), (3, 4)] {
            let p = ratio(n, d);
            let want = p.clone() + (rational::one() - &p) * &p * &p * &p;
            let w = Weight::uniform(&c4, p).unwrap();
            assert_eq!(connection_probability(&c4, &w, 0, 1, &cfg).unwrap(), want);
        }
    }

    #[test]
    fn negative_and_restricted_constraints() {
        let cfg = EngineConfig::default();
        let p3 = Graph::path(3);
        let w = half(&p3);
        // x ~ v and not x ~ y: first edge open, second closed
        let spec = ConnectivitySpec::connected(0, 1).and_disconnected(0, 2);
        assert_eq!(
            event_probability(&p3, &w, &spec, &cfg).unwrap().value,
            ratio(1, 4)
        );
        // restricting to the first edge makes 0 ~ 2 impossible
        let spec = ConnectivitySpec::connected(0, 2).restricted_to(EdgeSet::from_indices(2, [0]));
        let r = event_probability(&p3, &w, &spec, &cfg).unwrap();
        assert_eq!(r.value, ratio(0, 1));
        assert_eq!(r.atoms_evaluated, 2);
        // x ~ x is certain, x !~ x impossible
        let spec = ConnectivitySpec::connected(1, 1);
        assert_eq!(
            event_probability(&p3, &w, &spec, &cfg).unwrap().value,
            rational::one()
        );
        let spec = ConnectivitySpec::default().and_disconnected(1, 1);
        assert_eq!(
            event_probability(&p3, &w, &spec, &cfg).unwrap().value,
            ratio(0, 1)
        );
        // empty conjunction
        let spec = ConnectivitySpec::default();
        assert_eq!(
            event_probability(&p3, &w, &spec, &cfg).unwrap().value,
            rational::one()
        );
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let cfg = EngineConfig::default();
        let p3 = Graph::path(3);
        let w = half(&p3);
        assert!(event_probability(&p3, &w, &ConnectivitySpec::connected(0, 3), &cfg).is_err());
        let spec = ConnectivitySpec::connected(0, 1).restricted_to(EdgeSet::empty(5));
        assert!(event_probability(&p3, &w, &spec, &cfg).is_err());
        let other = Weight::uniform(&Graph::path(4), ratio(1, 2)).unwrap();
        assert!(event_probability(&p3, &other, &ConnectivitySpec::connected(0, 1), &cfg).is_err());
        assert!(partition_masses(&p3, &w, &[0, 1], &[0, 0], Engine::BruteForce, &cfg).is_err());
    }

    #[test]
    fn engines_agree_on_joint_events() {
        let cfg = EngineConfig::default();
        let bb = BunkbedGraph::new(&Graph::cycle(3)).unwrap();
        let g = bb.total();
        let values = (0..g.edge_count())
            .map(|i| ratio(i as i64 % 5, 4 + i as i64 % 3))
            .collect::<Vec<_>>();
        let values = values
            .into_iter()
            .map(|v| {
                if v > rational::one() {
                    rational::one()
                } else {
                    v
                }
            })
            .collect();
        let w = Weight::new(g, values).unwrap();
        let spec = ConnectivitySpec::connected(0, 1)
            .and_connected(0, 4)
            .and_disconnected(2, 5);
        let a = event_probability_with(g, &w, &spec, Engine::BruteForce, &cfg).unwrap();
        let b = event_probability_with(g, &w, &spec, Engine::Frontier, &cfg).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(b.method, Method::Frontier);
    }
}
