//! Exact connectivity-state propagation.
//!
//! Edges are processed one at a time. The state is the partition of the
//! *frontier*: tracked vertices plus every vertex that has been reached but
//! still has unprocessed edges. A vertex leaves the frontier after its last
//! edge unless it is tracked. Each state carries the integer mass of all edge
//! subsets (so far) that induce it, so the final masses are a partition
//! distribution of the tracked vertices, identical to what full enumeration
//! produces.

use num::BigUint;
use rustc_hash::FxHashMap;

use super::enumerate::{check_tracked, LocalProblem};
use super::mass::{canonicalize, pack_labels, Mass, PartitionKey, PartitionMasses, ScaledEdges};
use super::Weight;
use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn partition_masses(
    g: &Graph,
    w: &Weight,
    edges: &[usize],
    tracked: &[usize],
    cfg: &EngineConfig,
) -> Result<PartitionMasses> {
    w.check_graph(g)?;
    check_tracked(tracked)?;
    for &t in tracked {
        g.check_vertex(t)?;
    }
    let problem = LocalProblem::new(g, edges, tracked);
    let order = edge_order(&problem);
    let scaled = ScaledEdges::new(order.iter().map(|&i| w.value(edges[i])));
    let ordered: Vec<(usize, usize)> = order.iter().map(|&i| problem.edges[i]).collect();
    if scaled.fits_u128() {
        let (masses, work) = propagate::<u128>(&problem, &ordered, &scaled, cfg.frontier_width)?;
        Ok(PartitionMasses::from_masses(
            tracked.to_vec(),
            masses,
            scaled.denominator,
            work,
        ))
    } else {
        let (masses, work) = propagate::<BigUint>(&problem, &ordered, &scaled, cfg.frontier_width)?;
        Ok(PartitionMasses::from_masses(
            tracked.to_vec(),
            masses,
            scaled.denominator,
            work,
        ))
    }
}

/// Greedy vertex order (most already-placed neighbors first), then edges by
/// their later endpoint. Keeps the frontier narrow on path- and ladder-like
/// graphs.
fn edge_order(problem: &LocalProblem) -> Vec<usize> {
    let n = problem.vertex_count;
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &problem.edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut pos = vec![usize::MAX; n];
    let mut placed_neighbors = vec![0usize; n];
    let mut next = 0;
    while next < n {
        let v = match problem.tracked.first() {
            Some(&first) if next == 0 => first,
            _ => (0..n)
                .filter(|&v| pos[v] == usize::MAX)
                .max_by_key(|&v| {
                    (
                        placed_neighbors[v],
                        std::cmp::Reverse(adj[v].len() - placed_neighbors[v]),
                        std::cmp::Reverse(v),
                    )
                })
                .expect("unplaced vertex remains"),
        };
        pos[v] = next;
        next += 1;
        for &u in &adj[v] {
            placed_neighbors[u] += 1;
        }
    }
    let mut order: Vec<usize> = (0..problem.edges.len()).collect();
    order.sort_by_key(|&i| {
        let (u, v) = problem.edges[i];
        (pos[u].max(pos[v]), pos[u].min(pos[v]))
    });
    order
}

type States<M> = FxHashMap<Vec<u8>, M>;

fn propagate<M: Mass>(
    problem: &LocalProblem,
    edges: &[(usize, usize)],
    scaled: &ScaledEdges,
    width_limit: usize,
) -> Result<(FxHashMap<PartitionKey, M>, u64)> {
    let (open, closed) = scaled.factors::<M>();
    let n = problem.vertex_count;
    let mut is_tracked = vec![false; n];
    for &t in &problem.tracked {
        is_tracked[t] = true;
    }
    let mut last_use = vec![usize::MAX; n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        last_use[u] = i;
        last_use[v] = i;
    }

    let mut slot_of = vec![usize::MAX; n];
    let mut active: Vec<usize> = Vec::new();
    for &t in &problem.tracked {
        slot_of[t] = active.len();
        active.push(t);
    }
    let mut states: States<M> = FxHashMap::default();
    states.insert((0..active.len() as u8).collect(), M::one());
    let mut work = 0u64;

    for (i, &(u, v)) in edges.iter().enumerate() {
        let mut fresh = 0;
        for x in [u, v] {
            if slot_of[x] == usize::MAX {
                slot_of[x] = active.len();
                active.push(x);
                fresh += 1;
            }
        }
        if active.len() > width_limit {
            return Err(Error::FrontierTooWide {
                width: active.len(),
                limit: width_limit,
                block: None,
            });
        }
        let (su, sv) = (slot_of[u], slot_of[v]);
        let mut retiring: Vec<usize> = [u, v]
            .into_iter()
            .filter(|&x| last_use[x] == i && !is_tracked[x])
            .map(|x| slot_of[x])
            .collect();
        retiring.sort_unstable_by(|a, b| b.cmp(a));
        retiring.dedup();

        let finish = |mut labels: Vec<u8>| {
            for &s in &retiring {
                labels.remove(s);
            }
            canonicalize(&mut labels);
            labels
        };

        let mut next: States<M> =
            FxHashMap::with_capacity_and_hasher(states.len() * 2, Default::default());
        for (mut labels, mass) in states.drain() {
            work += 2;
            for _ in 0..fresh {
                let label = labels.iter().max().map_or(0, |&m| m + 1);
                labels.push(label);
            }
            let (lu, lv) = (labels[su], labels[sv]);
            if lu == lv {
                let both = mass.clone() * open[i].clone() + mass * closed[i].clone();
                *next.entry(finish(labels)).or_insert_with(M::zero) += both;
            } else {
                let mut merged = labels.clone();
                for l in merged.iter_mut() {
                    if *l == lv {
                        *l = lu;
                    }
                }
                *next.entry(finish(merged)).or_insert_with(M::zero) +=
                    mass.clone() * open[i].clone();
                *next.entry(finish(labels)).or_insert_with(M::zero) += mass * closed[i].clone();
            }
        }
        states = next;

        for &s in &retiring {
            let x = active.remove(s);
            slot_of[x] = usize::MAX;
        }
        for (s, &x) in active.iter().enumerate() {
            slot_of[x] = s;
        }
    }

    debug_assert_eq!(active, problem.tracked);
    let masses = states
        .into_iter()
        .map(|(labels, m)| (pack_labels(&labels), m))
        .fold(
            FxHashMap::default(),
            |mut acc: FxHashMap<PartitionKey, M>, (k, m)| {
                *acc.entry(k).or_insert_with(M::zero) += m;
                acc
            },
        );
    Ok((masses, work))
}
