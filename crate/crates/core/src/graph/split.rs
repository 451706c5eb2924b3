use std::collections::BTreeSet;

use super::{is_cut_vertex, Graph};
use crate::error::{Error, Result};

/// A graph cut into two sides sharing exactly one cut vertex.
///
/// Side vertices are numbered in increasing order of their index in `whole`;
/// `g_vertices[i]` is the vertex of `whole` that side vertex `i` stands for,
/// and `g_edges[j]` the edge of `whole` that side edge `j` stands for.
#[derive(Clone, Debug)]
pub struct SplitAtCutVertex {
    pub whole: Graph,
    pub cut_vertex: usize,
    pub side_g: Graph,
    pub side_h: Graph,
    pub g_vertices: Vec<usize>,
    pub h_vertices: Vec<usize>,
    pub g_edges: Vec<usize>,
    pub h_edges: Vec<usize>,
}

impl SplitAtCutVertex {
    /// Index of the cut vertex inside `side_g`.
    pub fn g_cut(&self) -> usize {
        self.g_vertices
            .iter()
            .position(|&w| w == self.cut_vertex)
            .expect("cut vertex is on both sides")
    }

    pub fn h_cut(&self) -> usize {
        self.h_vertices
            .iter()
            .position(|&w| w == self.cut_vertex)
            .expect("cut vertex is on both sides")
    }

    /// The same split with the roles of the two sides exchanged.
    pub fn swapped(&self) -> SplitAtCutVertex {
        SplitAtCutVertex {
            whole: self.whole.clone(),
            cut_vertex: self.cut_vertex,
            side_g: self.side_h.clone(),
            side_h: self.side_g.clone(),
            g_vertices: self.h_vertices.clone(),
            h_vertices: self.g_vertices.clone(),
            g_edges: self.h_edges.clone(),
            h_edges: self.g_edges.clone(),
        }
    }
}

/// Splits `g` at cut vertex `v`. `side_selector` lists indices into
/// `g.components_without(v)`; those components plus `v` form side G and the
/// rest plus `v` form side H.
pub fn split_at(g: &Graph, v: usize, side_selector: &[usize]) -> Result<SplitAtCutVertex> {
    g.check_vertex(v)?;
    if !is_cut_vertex(g, v) {
        return Err(Error::NotCutVertex(v));
    }
    let components = g.components_without(v);
    let selected: BTreeSet<usize> = side_selector.iter().copied().collect();
    if let Some(&bad) = selected.iter().find(|&&i| i >= components.len()) {
        return Err(Error::InvalidGraph(format!(
            "component {bad} does not exist; vertex {v} separates {} components",
            components.len()
        )));
    }
    if selected.is_empty() || selected.len() == components.len() {
        return Err(Error::DegenerateSplit(v));
    }
    let mut g_set = vec![v];
    let mut h_set = vec![v];
    for (i, comp) in components.iter().enumerate() {
        if selected.contains(&i) {
            g_set.extend(comp);
        } else {
            h_set.extend(comp);
        }
    }
    g_set.sort_unstable();
    h_set.sort_unstable();
    let (side_g, g_edges) = g.induced_subgraph(&g_set);
    let (side_h, h_edges) = g.induced_subgraph(&h_set);
    Ok(SplitAtCutVertex {
        whole: g.clone(),
        cut_vertex: v,
        side_g,
        side_h,
        g_vertices: g_set,
        h_vertices: h_set,
        g_edges,
        h_edges,
    })
}
