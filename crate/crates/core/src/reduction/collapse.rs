use super::split::{bunkbed_split, BunkbedSplit, Embedding};
use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::graph::{BunkbedGraph, SplitAtCutVertex};
use crate::percolation::{connection_probability, Weight};
use crate::rational::{self, Rational};

/// `H = BB(side_h)` with the weight that makes it interchangeable with `F`
/// for connections between vertices of `H`.
#[derive(Clone, Debug)]
pub struct CollapsedSide {
    pub reduced_graph: BunkbedGraph,
    /// Equal to the original weight on every edge of `H` except the post at
    /// the cut vertex, which carries `collapsed_post_value`.
    pub reduced_weight: Weight,
    /// `P_G(v⁻ ∼ v⁺)` under the original weight restricted to `G`.
    pub collapsed_post_value: Rational,
    /// Position of `H`'s total graph inside `F`.
    pub embedding: Embedding,
}

/// Replaces side G by a single post at the cut vertex. `mu` is any weight on
/// `F = BB(split.whole)`, symmetric or not; `P_G(v⁻ ∼ v⁺)` is found by full
/// enumeration of G.
pub fn collapse_side(
    f: &BunkbedGraph,
    mu: &Weight,
    split: &SplitAtCutVertex,
    cfg: &EngineConfig,
) -> Result<CollapsedSide> {
    if f.base() != &split.whole {
        return Err(Error::InvalidGraph(
            "split does not belong to this bunkbed graph".into(),
        ));
    }
    mu.check_graph(f.total())?;
    let bs = bunkbed_split(split)?;
    let g_weight = bs.g_embedding.restrict(mu);
    let (vm, vp) = bs.g_cut();
    let value = connection_probability(bs.g.total(), &g_weight, vm, vp, cfg)
        .map_err(|e| e.in_block(&split.g_vertices))?;
    collapse_with(&bs, mu, value)
}

/// [`collapse_side`] with the post value already known.
pub(crate) fn collapse_with(
    bs: &BunkbedSplit,
    mu: &Weight,
    value: Rational,
) -> Result<CollapsedSide> {
    let reduced_weight = bs
        .h_embedding
        .restrict(mu)
        .with_value(bs.h_post_edge(), value.clone())?;
    Ok(CollapsedSide {
        reduced_graph: bs.h.clone(),
        reduced_weight,
        collapsed_post_value: value,
        embedding: bs.h_embedding.clone(),
    })
}

/// `mu` with the post at base vertex `v` closed for sure. Connections from
/// `v⁻` then behave as in `H` with that post deleted.
pub fn zero_post_weight(h: &BunkbedGraph, mu: &Weight, v: usize) -> Result<Weight> {
    mu.check_graph(h.total())?;
    h.base().check_vertex(v)?;
    mu.with_value(h.post_edge(v), rational::zero())
}
