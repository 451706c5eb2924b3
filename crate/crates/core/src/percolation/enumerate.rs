//! Brute force over the atoms `K ⊆ E`.
//!
//! The effective edges are split into a high half and a low half. For each
//! high mask a union-find holds the high edges; the low subsets are then
//! walked depth first, uniting and undoing one edge per step, so every atom
//! is visited once at the cost of about one union. The atom weight is the
//! product of two precomputed half tables. High masks are independent
//! chunks, summed exactly in any order.

use num::BigUint;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::mass::{Mass, PartitionKey, PartitionMasses, ScaledEdges, MAX_TRACKED};
use super::Weight;
use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::rational::{self, Rational};
use crate::unionfind::RollbackUnionFind;

/// `prod_{e in K} μ(e) * prod_{e not in K} (1 - μ(e))`.
pub fn atom_probability(g: &Graph, w: &Weight, k: &EdgeSet) -> Result<Rational> {
    w.check_graph(g)?;
    if k.universe() != g.edge_count() {
        return Err(Error::InvalidGraph(format!(
            "edge subset over {} edges for a graph with {} edges",
            k.universe(),
            g.edge_count()
        )));
    }
    let mut p = rational::one();
    for (e, mu) in w.values().iter().enumerate() {
        if k.contains(e) {
            p *= mu;
        } else {
            p *= rational::one() - mu;
        }
    }
    Ok(p)
}

/// Sum of [`atom_probability`] over every subset, term by term.
pub fn sum_over_all_atoms(g: &Graph, w: &Weight, cfg: &EngineConfig) -> Result<Rational> {
    check_cap(g.edge_count(), cfg)?;
    let m = g.edge_count();
    let mut total = rational::zero();
    for mask in 0u64..1 << m {
        total += atom_probability(g, w, &EdgeSet::from_mask(m, mask))?;
    }
    Ok(total)
}

pub(crate) fn check_cap(edges: usize, cfg: &EngineConfig) -> Result<()> {
    if edges > cfg.enumeration_cap || edges >= 63 {
        Err(Error::CapExceeded {
            edges,
            cap: cfg.enumeration_cap,
            block: None,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn check_tracked(tracked: &[usize]) -> Result<()> {
    if tracked.len() > MAX_TRACKED {
        Err(Error::BoundExceeded {
            what: "tracked vertices",
            value: tracked.len(),
            bound: MAX_TRACKED,
        })
    } else {
        Ok(())
    }
}

/// Edges and tracked vertices renumbered onto the vertices they touch.
pub(crate) struct LocalProblem {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub tracked: Vec<usize>,
}

impl LocalProblem {
    pub fn new(g: &Graph, edges: &[usize], tracked: &[usize]) -> Self {
        let mut local = vec![usize::MAX; g.vertex_count()];
        let mut count = 0;
        let mut id = |v: usize| {
            if local[v] == usize::MAX {
                local[v] = count;
                count += 1;
            }
            local[v]
        };
        let tracked = tracked.iter().map(|&t| id(t)).collect();
        let edges = edges
            .iter()
            .map(|&e| {
                let (u, v) = g.edge(e);
                (id(u), id(v))
            })
            .collect();
        LocalProblem {
            vertex_count: count,
            edges,
            tracked,
        }
    }
}

/// Partition of `tracked` induced by the open edges among `edges`, by full
/// enumeration. Edges outside `edges` are marginalized.
pub fn partition_masses(
    g: &Graph,
    w: &Weight,
    edges: &[usize],
    tracked: &[usize],
    cfg: &EngineConfig,
) -> Result<PartitionMasses> {
    w.check_graph(g)?;
    check_cap(edges.len(), cfg)?;
    check_tracked(tracked)?;
    for &t in tracked {
        g.check_vertex(t)?;
    }
    let problem = LocalProblem::new(g, edges, tracked);
    let scaled = ScaledEdges::new(edges.iter().map(|&e| w.value(e)));
    let work = 1u64 << edges.len();
    Ok(if scaled.fits_u128() {
        let masses = enumerate::<u128>(&problem, &scaled);
        PartitionMasses::from_masses(tracked.to_vec(), masses, scaled.denominator, work)
    } else {
        let masses = enumerate::<BigUint>(&problem, &scaled);
        PartitionMasses::from_masses(tracked.to_vec(), masses, scaled.denominator, work)
    })
}

/// `table[mask] = prod_i (bit i of mask ? open_i : closed_i)`.
fn half_table<M: Mass>(open: &[M], closed: &[M]) -> Vec<M> {
    let mut table = vec![M::one()];
    for (o, c) in open.iter().zip(closed) {
        let mut next = Vec::with_capacity(table.len() * 2);
        next.extend(table.iter().map(|t| t.clone() * c.clone()));
        next.extend(table.iter().map(|t| t.clone() * o.clone()));
        table = next;
    }
    table
}

fn partition_key(uf: &RollbackUnionFind, tracked: &[usize]) -> PartitionKey {
    let mut roots = [usize::MAX; MAX_TRACKED];
    let mut blocks = 0;
    let mut key = 0u64;
    for (slot, &t) in tracked.iter().enumerate() {
        let r = uf.find(t);
        let label = match roots[..blocks].iter().position(|&x| x == r) {
            Some(l) => l,
            None => {
                roots[blocks] = r;
                blocks += 1;
                blocks - 1
            }
        };
        key |= (label as u64) << (4 * slot);
    }
    key
}

/// Depth-first walk over the subsets of the low edges, carrying the mass of
/// the edges decided so far. An edge whose endpoints are already joined
/// cannot change the partition, so both of its states are taken at once
/// with factor `open + closed`; zero masses end the branch.
struct LowWalk<'a, M> {
    edges: &'a [(usize, usize)],
    open: &'a [M],
    closed: &'a [M],
    either: &'a [M],
    tracked: &'a [usize],
    uf: &'a mut RollbackUnionFind,
    out: &'a mut FxHashMap<PartitionKey, M>,
}

impl<M: Mass> LowWalk<'_, M> {
    fn visit(&mut self, depth: usize, mass: M) {
        if mass.is_zero() {
            return;
        }
        if depth == self.edges.len() {
            let key = partition_key(self.uf, self.tracked);
            *self.out.entry(key).or_insert_with(M::zero) += mass;
            return;
        }
        let (u, v) = self.edges[depth];
        if self.uf.find(u) == self.uf.find(v) {
            self.visit(depth + 1, mass * self.either[depth].clone());
            return;
        }
        self.visit(depth + 1, mass.clone() * self.closed[depth].clone());
        self.uf.union(u, v);
        self.visit(depth + 1, mass * self.open[depth].clone());
        self.uf.undo();
    }
}

fn enumerate<M: Mass>(problem: &LocalProblem, scaled: &ScaledEdges) -> FxHashMap<PartitionKey, M> {
    let (open, closed) = scaled.factors::<M>();
    let k = problem.edges.len();
    // enough high masks to share out, the rest walked depth first
    let low_bits = k - (k / 2).min(10);
    let either: Vec<M> = open
        .iter()
        .zip(&closed)
        .map(|(o, c)| o.clone() + c.clone())
        .collect();
    let high_table = half_table(&open[low_bits..], &closed[low_bits..]);
    let low_edges = &problem.edges[..low_bits];
    let high_edges = &problem.edges[low_bits..];
    let n = problem.vertex_count;
    let tracked = &problem.tracked;

    let merge = |mut a: FxHashMap<PartitionKey, M>, b: FxHashMap<PartitionKey, M>| {
        for (key, m) in b {
            *a.entry(key).or_insert_with(M::zero) += m;
        }
        a
    };

    (0..high_table.len())
        .into_par_iter()
        .fold(
            || {
                (
                    FxHashMap::default(),
                    FxHashMap::default(),
                    RollbackUnionFind::new(n),
                )
            },
            |(mut acc, mut local, mut uf): (
                FxHashMap<PartitionKey, M>,
                FxHashMap<PartitionKey, M>,
                _,
            ),
             high| {
                if high_table[high].is_zero() {
                    return (acc, local, uf);
                }
                uf.reset();
                for (bit, &(u, v)) in high_edges.iter().enumerate() {
                    if high >> bit & 1 == 1 {
                        uf.union(u, v);
                    }
                }
                local.clear();
                let mut walk = LowWalk {
                    edges: low_edges,
                    open: &open[..low_bits],
                    closed: &closed[..low_bits],
                    either: &either[..low_bits],
                    tracked,
                    uf: &mut uf,
                    out: &mut local,
                };
                walk.visit(0, M::one());
                for (key, sum) in local.drain() {
                    *acc.entry(key).or_insert_with(M::zero) += sum * high_table[high].clone();
                }
                (acc, local, uf)
            },
        )
        .map(|(acc, ..)| acc)
        .reduce(FxHashMap::default, merge)
}
