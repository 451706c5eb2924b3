use std::fmt;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Layer {
    Minus,
    Plus,
}

impl Layer {
    pub fn flip(self) -> Layer {
        match self {
            Layer::Minus => Layer::Plus,
            Layer::Plus => Layer::Minus,
        }
    }

    fn sign(self) -> char {
        match self {
            Layer::Minus => '-',
            Layer::Plus => '+',
        }
    }
}

/// A vertex `x-` or `x+` of a bunkbed graph, named by its base vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BunkbedVertex {
    pub base: usize,
    pub layer: Layer,
}

impl BunkbedVertex {
    pub fn minus(base: usize) -> Self {
        BunkbedVertex {
            base,
            layer: Layer::Minus,
        }
    }

    pub fn plus(base: usize) -> Self {
        BunkbedVertex {
            base,
            layer: Layer::Plus,
        }
    }

    pub fn flip(self) -> Self {
        BunkbedVertex {
            base: self.base,
            layer: self.layer.flip(),
        }
    }

    /// Parses `3-` / `3+`, where the base part is a label of `base` or an index.
    pub fn resolve(base: &Graph, token: &str) -> Result<Self> {
        let token = token.trim();
        let layer = match token.chars().last() {
            Some('-') => Layer::Minus,
            Some('+') => Layer::Plus,
            _ => {
                return Err(Error::InvalidGraph(format!(
                    "bunkbed vertex `{token}` must end in `-` or `+`"
                )))
            }
        };
        let v = base.resolve_vertex(&token[..token.len() - 1])?;
        Ok(BunkbedVertex { base: v, layer })
    }
}

impl fmt::Display for BunkbedVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.base, self.layer.sign())
    }
}

/// Provenance of an edge of `BB(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BunkbedEdge {
    /// `x-y-` for base edge index.
    Minus(usize),
    /// `x+y+` for base edge index.
    Plus(usize),
    /// `x-x+` for base vertex.
    Post(usize),
}

/// `BB(G) = G □ K2`.
///
/// Layout of the total graph: `x-` is vertex `x`, `x+` is vertex `n + x`.
/// Edges are the minus copies in base order, then the plus copies, then the
/// posts in vertex order, so minus copy `e` is edge `e`, plus copy `e` is
/// edge `m + e` and the post at `x` is edge `2m + x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BunkbedGraph {
    base: Graph,
    total: Graph,
}

impl BunkbedGraph {
    pub fn new(base: &Graph) -> Result<Self> {
        let n = base.vertex_count();
        let m = base.edge_count();
        let overflow = || {
            Error::InvalidGraph(format!(
                "bunkbed of a graph with {n} vertices and {m} edges is too large"
            ))
        };
        let total_vertices = n.checked_mul(2).ok_or_else(overflow)?;
        let total_edges = m
            .checked_mul(2)
            .and_then(|e| e.checked_add(n))
            .ok_or_else(overflow)?;
        let mut edges = Vec::with_capacity(total_edges);
        edges.extend(base.edges().iter().copied());
        edges.extend(base.edges().iter().map(|&(u, v)| (n + u, n + v)));
        edges.extend((0..n).map(|x| (x, n + x)));
        let mut total = Graph::new(total_vertices, edges)?;
        for x in 0..n {
            let name = base.label(x).map_or_else(|| x.to_string(), str::to_string);
            total.set_label(x, format!("{name}-"))?;
            total.set_label(n + x, format!("{name}+"))?;
        }
        Ok(BunkbedGraph {
            base: base.clone(),
            total,
        })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn total(&self) -> &Graph {
        &self.total
    }

    /// Index of a bunkbed vertex in the total graph.
    pub fn vertex(&self, v: BunkbedVertex) -> usize {
        match v.layer {
            Layer::Minus => v.base,
            Layer::Plus => self.base.vertex_count() + v.base,
        }
    }

    /// `x ↦ (x- index, x+ index)`.
    pub fn vertex_map(&self, x: usize) -> (usize, usize) {
        (x, self.base.vertex_count() + x)
    }

    pub fn vertex_of(&self, index: usize) -> BunkbedVertex {
        let n = self.base.vertex_count();
        if index < n {
            BunkbedVertex::minus(index)
        } else {
            BunkbedVertex::plus(index - n)
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = BunkbedVertex> + '_ {
        (0..self.total.vertex_count()).map(|i| self.vertex_of(i))
    }

    pub fn edge_index(&self, kind: BunkbedEdge) -> usize {
        let m = self.base.edge_count();
        match kind {
            BunkbedEdge::Minus(e) => e,
            BunkbedEdge::Plus(e) => m + e,
            BunkbedEdge::Post(x) => 2 * m + x,
        }
    }

    pub fn edge_kind(&self, index: usize) -> BunkbedEdge {
        let m = self.base.edge_count();
        if index < m {
            BunkbedEdge::Minus(index)
        } else if index < 2 * m {
            BunkbedEdge::Plus(index - m)
        } else {
            BunkbedEdge::Post(index - 2 * m)
        }
    }

    pub fn post_edge(&self, x: usize) -> usize {
        self.edge_index(BunkbedEdge::Post(x))
    }
}
