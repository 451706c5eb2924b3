//! Graph families: unlabeled trees and all graphs up to isomorphism.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_TREE_BOUND: usize = 8;
/// All graphs on 7 vertices already means 5040 relabelings per candidate.
pub const ALL_GRAPHS_BOUND: usize = 7;

fn neighbours(g: &Graph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for &(u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

fn is_tree(g: &Graph) -> bool {
    g.vertex_count() >= 1 && g.edge_count() + 1 == g.vertex_count() && g.is_connected()
}

/// One or two centres, found by peeling leaves.
fn centres(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in &adj[leaf] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn ahu(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut children: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| ahu(adj, w, v))
        .collect();
    children.sort_unstable();
    format!("({})", children.concat())
}

/// Centre-rooted AHU string; equal exactly for isomorphic trees. `None`
/// for graphs that are not trees.
pub fn tree_canonical_form(g: &Graph) -> Option<String> {
    if !is_tree(g) {
        return None;
    }
    let adj = neighbours(g);
    centres(&adj)
        .into_iter()
        .map(|c| ahu(&adj, c, usize::MAX))
        .min()
}

/// Every unlabeled tree on `n` vertices, one per isomorphism class, ordered
/// by canonical form. `n` must lie in `1..=DEFAULT_TREE_BOUND`.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>> {
    enumerate_trees_bounded(n, DEFAULT_TREE_BOUND)
}

pub fn enumerate_trees_bounded(n: usize, bound: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::InvalidGraph("a tree has at least one vertex".into()));
    }
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "tree size",
            value: n,
            bound,
        });
    }
    let mut level = BTreeMap::from([(String::from("()"), Graph::empty(1))]);
    for size in 2..=n {
        let mut next = BTreeMap::new();
        for tree in level.values() {
            for v in 0..size - 1 {
                let mut edges = tree.edges().to_vec();
                edges.push((v, size - 1));
                let grown = Graph::new(size, edges)?;
                let form = tree_canonical_form(&grown).expect("adding a leaf keeps a tree");
                next.entry(form).or_insert(grown);
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    j * (j - 1) / 2 + i
}

fn graph_mask(g: &Graph) -> u64 {
    g.edges()
        .iter()
        .fold(0, |m, &(u, v)| m | 1 << pair_index(u, v))
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if mask >> pair_index(i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges).expect("mask encodes a simple graph")
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Smallest adjacency mask over all relabelings.
fn canonical_mask(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        let m = edges
            .iter()
            .fold(0, |m, &(u, v)| m | 1 << pair_index(perm[u], perm[v]));
        best = best.min(m);
        if !next_permutation(&mut perm) {
            return best;
        }
    }
}

/// The relabeling-minimal form of `g`; isomorphic graphs share it.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    if g.vertex_count() > ALL_GRAPHS_BOUND {
        return Err(Error::BoundExceeded {
            what: "vertices for canonical form",
            value: g.vertex_count(),
            bound: ALL_GRAPHS_BOUND,
        });
    }
    Ok(graph_from_mask(
        g.vertex_count(),
        canonical_mask(g.vertex_count(), g.edges()),
    ))
}

/// Every graph on `n` vertices up to isomorphism, ordered by canonical mask.
/// Built by adding a vertex with every neighbourhood to the graphs on
/// `n - 1` vertices.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > ALL_GRAPHS_BOUND {
        return Err(Error::BoundExceeded {
            what: "vertices",
            value: n,
            bound: ALL_GRAPHS_BOUND,
        });
    }
    let mut level = vec![0u64];
    for size in 1..=n {
        let mut seen = std::collections::BTreeSet::new();
        for &mask in &level {
            let old = graph_from_mask(size - 1, mask);
            for nbhd in 0u64..1 << (size - 1) {
                let mut edges = old.edges().to_vec();
                edges.extend(
                    (0..size - 1)
                        .filter(|&i| nbhd >> i & 1 == 1)
                        .map(|i| (i, size - 1)),
                );
                seen.insert(canonical_mask(size, &edges));
            }
        }
        level = seen.into_iter().collect();
    }
    Ok(level
        .into_iter()
        .map(|mask| graph_from_mask(n, mask))
        .collect())
}

/// Whether two graphs on at most [`ALL_GRAPHS_BOUND`] vertices are isomorphic.
pub fn isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(graph_mask(&canonical_graph(a)?) == graph_mask(&canonical_graph(b)?))
}
