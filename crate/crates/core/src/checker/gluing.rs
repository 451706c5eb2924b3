//! Checks on a graph glued from two pieces at one vertex.

use super::{check_graph, CheckOptions, CheckReport, WeightSource};
use crate::config::{Engine, EngineConfig};
use crate::error::{Error, Result};
use crate::graph::{glue, split_at, BunkbedGraph, Graph, SplitAtCutVertex};
use crate::percolation::partition_masses;
use crate::rational::{self, Rational};
use crate::reduction::collapse_side;

/// Checks `D`, the union of `A` and `B` with `a` and `b` identified, and
/// confirms that every same-side delta of `D` equals the delta computed on
/// that side alone with the other side collapsed into its post. A mismatch
/// is an [`Error::Inconsistent`].
///
/// When the glued vertex does not separate `D` (one piece is a single
/// vertex) there is nothing to collapse and only the check of `D` runs.
pub fn verify_gluing_closure(
    a_graph: &Graph,
    a: usize,
    b_graph: &Graph,
    b: usize,
    source: &WeightSource,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let glued = glue(a_graph, a, b_graph, b)?;
    let d = &glued.graph;
    let mut report = check_graph(d, source, opts)?;
    let v = glued.glued_vertex;
    let na = a_graph.vertex_count();
    let components = d.components_without(v);
    // components of D - v lie entirely in A or entirely in B
    let from_b: Vec<usize> = (0..components.len())
        .filter(|&i| components[i][0] >= na)
        .collect();
    let from_a: Vec<usize> = (0..components.len())
        .filter(|&i| components[i][0] < na)
        .collect();
    let mut checks = 0;
    for collapsed in [from_b, from_a] {
        let split = match split_at(d, v, &collapsed) {
            Ok(split) => split,
            Err(Error::NotCutVertex(_) | Error::DegenerateSplit(_)) => continue,
            Err(e) => return Err(e),
        };
        checks += same_side_agreement(&split, source, &opts.engine)?;
    }
    report.closure_checks = Some(checks);
    Ok(report)
}

fn same_side_agreement(
    split: &SplitAtCutVertex,
    source: &WeightSource,
    cfg: &EngineConfig,
) -> Result<u64> {
    let d = &split.whole;
    let n = d.vertex_count();
    let bb = BunkbedGraph::new(d)?;
    let kept = &split.h_vertices;
    let nh = kept.len();
    let mut tracked: Vec<usize> = kept.clone();
    tracked.extend(kept.iter().map(|&x| n + x));
    let all_edges: Vec<usize> = (0..bb.total().edge_count()).collect();
    let reduced_tracked: Vec<usize> = (0..2 * nh).collect();
    let mut checks = 0;
    for w in source.weights(d)? {
        let mu = w.to_weight(&bb);
        let direct = partition_masses(bb.total(), &mu, &all_edges, &tracked, cfg.leaf_engine, cfg)?;
        let collapsed = collapse_side(&bb, &mu, split, cfg)?;
        let h_total = collapsed.reduced_graph.total();
        let h_edges: Vec<usize> = (0..h_total.edge_count()).collect();
        let engine = if h_edges.len() <= cfg.enumeration_cap {
            Engine::BruteForce
        } else {
            cfg.leaf_engine
        };
        let reduced = partition_masses(
            h_total,
            &collapsed.reduced_weight,
            &h_edges,
            &reduced_tracked,
            engine,
            cfg,
        )?;
        for i in 0..nh {
            for j in i..nh {
                let (x, y) = (kept[i], kept[j]);
                let whole: Rational = direct.connected(x, y) - direct.connected(x, n + y);
                let side: Rational = reduced.connected(i, j) - reduced.connected(i, nh + j);
                if whole != side {
                    return Err(Error::Inconsistent(format!(
                        "pair ({x}, {y}): delta {} on the glued graph, {} with the other side collapsed",
                        rational::format(&whole),
                        rational::format(&side)
                    )));
                }
                checks += 1;
            }
        }
    }
    Ok(checks)
}
