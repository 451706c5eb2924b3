use crate::error::{Error, Result};
use crate::graph::{BunkbedGraph, Graph, SplitAtCutVertex};
use crate::percolation::Weight;

/// Where a subgraph sits inside a bigger graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    /// `vertices[i]` is the vertex of the big graph that vertex `i` stands for.
    pub vertices: Vec<usize>,
    /// `edges[j]` is the edge of the big graph that edge `j` stands for.
    pub edges: Vec<usize>,
}

impl Embedding {
    /// The big graph's weight seen through the embedding.
    pub fn restrict(&self, w: &Weight) -> Weight {
        w.restrict(&self.edges)
    }

    /// Index of big-graph vertex `v` in the subgraph, if it is there.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }
}

/// Embedding of `BB(side)` into `BB(whole)`, where `side` is the subgraph of
/// `whole` induced on `vertices` and `edge_map` its edge map.
pub(crate) fn bunkbed_embedding(
    whole: &Graph,
    vertices: &[usize],
    edge_map: &[usize],
) -> Embedding {
    let n = whole.vertex_count();
    let m = whole.edge_count();
    let mut vs = vertices.to_vec();
    vs.extend(vertices.iter().map(|&x| n + x));
    let mut es = edge_map.to_vec();
    es.extend(edge_map.iter().map(|&e| m + e));
    es.extend(vertices.iter().map(|&x| 2 * m + x));
    Embedding {
        vertices: vs,
        edges: es,
    }
}

/// `F = BB(F̄)` cut along a split of `F̄` at `v`.
///
/// `G = BB(side_g)` keeps the post `v⁻v⁺`; `H = BB(side_h)` also has it and
/// `H₀` is `H` without it, so the edges of `F` are exactly the edges of `G`
/// and of `H₀`, each once. `H` and `H₀` share their vertex numbering.
#[derive(Clone, Debug)]
pub struct BunkbedSplit {
    pub whole: BunkbedGraph,
    pub cut_vertex: usize,
    pub g: BunkbedGraph,
    pub g_embedding: Embedding,
    pub h: BunkbedGraph,
    pub h_embedding: Embedding,
    pub h0: Graph,
    pub h0_embedding: Embedding,
    g_cut: usize,
    h_cut: usize,
}

impl BunkbedSplit {
    /// `(v⁻, v⁺)` in the total graph of `G`.
    pub fn g_cut(&self) -> (usize, usize) {
        self.g.vertex_map(self.g_cut)
    }

    /// `(v⁻, v⁺)` in the total graphs of `H` and `H₀`.
    pub fn h_cut(&self) -> (usize, usize) {
        self.h.vertex_map(self.h_cut)
    }

    /// The cut vertex as a vertex of `side_g`.
    pub fn g_cut_base(&self) -> usize {
        self.g_cut
    }

    pub fn h_cut_base(&self) -> usize {
        self.h_cut
    }

    /// Index of `v⁻v⁺` among the edges of `H`.
    pub fn h_post_edge(&self) -> usize {
        self.h.post_edge(self.h_cut)
    }
}

pub fn bunkbed_split(split: &SplitAtCutVertex) -> Result<BunkbedSplit> {
    let whole = BunkbedGraph::new(&split.whole)?;
    for (side, vertices, edges) in [
        (&split.side_g, &split.g_vertices, &split.g_edges),
        (&split.side_h, &split.h_vertices, &split.h_edges),
    ] {
        if side.vertex_count() != vertices.len() || side.edge_count() != edges.len() {
            return Err(Error::InvalidGraph(
                "split maps do not match its sides".into(),
            ));
        }
    }
    let g = BunkbedGraph::new(&split.side_g)?;
    let h = BunkbedGraph::new(&split.side_h)?;
    let g_embedding = bunkbed_embedding(&split.whole, &split.g_vertices, &split.g_edges);
    let h_embedding = bunkbed_embedding(&split.whole, &split.h_vertices, &split.h_edges);
    let (g_cut, h_cut) = (split.g_cut(), split.h_cut());
    let post = h.post_edge(h_cut);
    let h0 = h.total().without_edge(post);
    let mut h0_embedding = h_embedding.clone();
    h0_embedding.edges.remove(post);
    Ok(BunkbedSplit {
        whole,
        cut_vertex: split.cut_vertex,
        g,
        g_embedding,
        h,
        h_embedding,
        h0,
        h0_embedding,
        g_cut,
        h_cut,
    })
}
