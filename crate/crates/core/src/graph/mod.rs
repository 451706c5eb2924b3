//! Finite simple undirected graphs with stable vertex and edge indexing.
//!
//! The position of an edge in [`Graph::edges`] is its global index. Every
//! other module (weights, edge subsets, enumeration bit positions) refers to
//! edges by that index, so the order is never changed after construction.

mod bunkbed;
mod format;
mod split;

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

pub use bunkbed::{BunkbedEdge, BunkbedGraph, BunkbedVertex, Layer};
pub use format::{parse_graph, write_graph};
pub use split::{split_at, SplitAtCutVertex};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    labels: BTreeMap<usize, String>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and endpoints
    /// out of range.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        count: vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u}-{v}")));
            }
        }
        Ok(Graph {
            vertex_count,
            edges,
            labels: BTreeMap::new(),
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            vertex_count,
            ..Graph::default()
        }
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, edges).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::new(n, edges).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges).expect("complete graph is simple")
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i)).collect()).expect("star is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.edges[index]
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn set_label(&mut self, v: usize, name: impl Into<String>) -> Result<()> {
        self.check_vertex(v)?;
        self.labels.insert(v, name.into());
        Ok(())
    }

    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Result<Self> {
        for &v in labels.keys() {
            self.check_vertex(v)?;
        }
        self.labels = labels;
        Ok(self)
    }

    /// Resolves a vertex token: a label when one matches, otherwise an index.
    pub fn resolve_vertex(&self, token: &str) -> Result<usize> {
        if let Some((&v, _)) = self.labels.iter().find(|(_, name)| name.as_str() == token) {
            return Ok(v);
        }
        let v: usize = token
            .parse()
            .map_err(|_| Error::InvalidGraph(format!("unknown vertex `{token}`")))?;
        self.check_vertex(v)?;
        Ok(v)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count,
            })
        }
    }

    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|&(a, b)| (a == u && b == v) || (a == v && b == u))
    }

    /// Neighbor lists of `(neighbor, edge index)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Component id per vertex, numbered by smallest member.
    pub fn component_ids(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertex_count);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        let mut ids = vec![usize::MAX; self.vertex_count];
        let mut root_id = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            let r = uf.find(v);
            if root_id[r] == usize::MAX {
                root_id[r] = next;
                next += 1;
            }
            ids[v] = root_id[r];
        }
        ids
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        group_by_id(&self.component_ids())
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Components of `self \ {v}`, each sorted, ordered by smallest member.
    pub fn components_without(&self, v: usize) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertex_count);
        for &(a, b) in &self.edges {
            if a != v && b != v {
                uf.union(a, b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut first_of_root = vec![usize::MAX; self.vertex_count];
        for w in (0..self.vertex_count).filter(|&w| w != v) {
            let r = uf.find(w);
            if first_of_root[r] == usize::MAX {
                first_of_root[r] = w;
            }
            groups.entry(first_of_root[r]).or_default().push(w);
        }
        groups.into_values().collect()
    }

    /// Subgraph induced by `vertices` (in the given order, which becomes the
    /// new vertex numbering). Returns the subgraph and, for each of its edges,
    /// the index of the corresponding edge in `self`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut position = vec![usize::MAX; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if position[u] != usize::MAX && position[v] != usize::MAX {
                edges.push((position[u], position[v]));
                edge_map.push(i);
            }
        }
        let labels = vertices
            .iter()
            .enumerate()
            .filter_map(|(i, v)| self.labels.get(v).map(|l| (i, l.clone())))
            .collect();
        let graph = Graph {
            vertex_count: vertices.len(),
            edges,
            labels,
        };
        (graph, edge_map)
    }

    /// Copy without edge `index`; later edges shift down by one.
    pub fn without_edge(&self, index: usize) -> Graph {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Graph {
            vertex_count: self.vertex_count,
            edges,
            labels: self.labels.clone(),
        }
    }
}

pub(crate) fn group_by_id(ids: &[usize]) -> Vec<Vec<usize>> {
    let count = ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut groups = vec![Vec::new(); count];
    for (v, &id) in ids.iter().enumerate() {
        groups[id].push(v);
    }
    groups
}

/// A subset `K` of the edge set of some graph, as a bitset over edge indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct EdgeSet {
    words: Vec<u64>,
    len: usize,
}

impl EdgeSet {
    pub fn empty(edge_count: usize) -> Self {
        EdgeSet {
            words: vec![0; edge_count.div_ceil(64)],
            len: edge_count,
        }
    }

    pub fn full(edge_count: usize) -> Self {
        let mut set = EdgeSet::empty(edge_count);
        for i in 0..edge_count {
            set.insert(i);
        }
        set
    }

    pub fn from_indices(edge_count: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = EdgeSet::empty(edge_count);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Bit `i` of `mask` is edge `i`.
    pub fn from_mask(edge_count: usize, mask: u64) -> Self {
        assert!(edge_count <= 64 || mask >> 63 >> 1 == 0);
        let mut set = EdgeSet::empty(edge_count);
        if edge_count > 0 {
            let keep = if edge_count >= 64 {
                u64::MAX
            } else {
                (1u64 << edge_count) - 1
            };
            set.words[0] = mask & keep;
        }
        set
    }

    /// Number of edges in the ambient graph.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "edge {i} outside a universe of {}", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.contains(i))
    }
}

/// `co_K(x, y)`: whether `x` and `y` are joined by a path using only edges of `K`.
pub fn connected_in_subset(g: &Graph, subset: &EdgeSet, x: usize, y: usize) -> Result<bool> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if subset.universe() != g.edge_count() {
        return Err(Error::InvalidGraph(format!(
            "edge subset over {} edges used with a graph of {} edges",
            subset.universe(),
            g.edge_count()
        )));
    }
    if x == y {
        return Ok(true);
    }
    let mut uf = UnionFind::new(g.vertex_count());
    for i in subset.iter() {
        let (u, v) = g.edge(i);
        uf.union(u, v);
    }
    Ok(uf.same(x, y))
}

/// Vertices whose removal strictly increases the number of components,
/// in increasing order. Iterative lowpoint depth-first search.
pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, edge used to enter it, next neighbor position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, via, next) = *top;
            if next < adj[v].len() {
                top.2 += 1;
                let (w, e) = adj[v][next];
                if e == via {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

pub fn is_cut_vertex(g: &Graph, v: usize) -> bool {
    cut_vertices(g).contains(&v)
}

/// Connected, at least 3 vertices, and no cut vertex.
pub fn two_connected(g: &Graph) -> bool {
    g.vertex_count() >= 3 && g.is_connected() && cut_vertices(g).is_empty()
}

/// Result of identifying a vertex of one graph with a vertex of another.
#[derive(Clone, Debug)]
pub struct Glued {
    pub graph: Graph,
    /// Index of the identified vertex; equals `a`.
    pub glued_vertex: usize,
    /// Position of each vertex of `B` in the glued graph.
    pub b_vertex_map: Vec<usize>,
}

/// Disjoint union of `A` and `B` with `a` and `b` identified. Vertices of `A`
/// keep their indices; the remaining vertices of `B` follow in order. Edges of
/// `A` come first, then the edges of `B`.
pub fn glue(a_graph: &Graph, a: usize, b_graph: &Graph, b: usize) -> Result<Glued> {
    a_graph.check_vertex(a)?;
    b_graph.check_vertex(b)?;
    let na = a_graph.vertex_count();
    let mut b_map = vec![0; b_graph.vertex_count()];
    let mut next = na;
    for (w, slot) in b_map.iter_mut().enumerate() {
        if w == b {
            *slot = a;
        } else {
            *slot = next;
            next += 1;
        }
    }
    let mut edges = a_graph.edges().to_vec();
    edges.extend(b_graph.edges().iter().map(|&(u, v)| (b_map[u], b_map[v])));
    // A and B are disjoint before identification, so this cannot fail.
    let mut graph = Graph::new(next, edges)?;
    graph.labels = a_graph.labels.clone();
    for (&w, name) in &b_graph.labels {
        graph.labels.entry(b_map[w]).or_insert_with(|| name.clone());
    }
    Ok(Glued {
        graph,
        glued_vertex: a,
        b_vertex_map: b_map,
    })
}
