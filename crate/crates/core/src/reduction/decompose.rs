//! Recursive two-point probabilities along the cut vertices of the base.
//!
//! A query `P(a ∼ b)` on `BB(F̄)` is answered by the first rule that applies:
//!
//! 1. `a = b`, or `a` and `b` in different components: 1 or 0. Otherwise the
//!    other components are dropped.
//! 2. Some cut vertex has components that contain neither endpoint: they
//!    are collapsed into the post at that cut vertex (the post value is
//!    itself a recursive query on the collapsed side) and the query
//!    continues on the rest.
//! 3. Some cut vertex separates the endpoints: the three-term cross-side
//!    formula, with the four single-pair terms recursive and the two joint
//!    terms computed directly on their side.
//! 4. No cut vertex: the leaf engine on the whole bunkbed.

use std::time::Instant;

use super::collapse::{collapse_with, zero_post_weight};
use super::cross::{cross_side_probability, joint_terms, CrossSideTerms};
use super::split::{bunkbed_embedding, bunkbed_split, BunkbedSplit};
use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::graph::{cut_vertices, split_at, BunkbedGraph, BunkbedVertex, Graph};
use crate::percolation::{partition_masses, Method, ProbabilityReport, SymmetricWeight, Weight};
use crate::rational::{self, Rational};

/// Exact `P_{BB(F̄), μ}(a ∼ b)` by decomposition. `mu` is a weight on the
/// total graph of `BB(base)`; it need not be symmetric.
pub fn two_point_probability(
    base: &Graph,
    mu: &Weight,
    a: BunkbedVertex,
    b: BunkbedVertex,
    cfg: &EngineConfig,
) -> Result<ProbabilityReport> {
    let start = Instant::now();
    base.check_vertex(a.base)?;
    base.check_vertex(b.base)?;
    let bb = BunkbedGraph::new(base)?;
    mu.check_graph(bb.total())?;
    let problem = Problem {
        base: base.clone(),
        weight: mu.clone(),
        origin: (0..base.vertex_count()).collect(),
    };
    let mut solver = Solver { cfg, work: 0 };
    let value = solver.solve(&problem, a, b)?;
    Ok(ProbabilityReport {
        value,
        method: Method::Decomposition,
        atoms_evaluated: solver.work,
        elapsed: start.elapsed(),
    })
}

pub fn two_point_probability_symmetric(
    base: &Graph,
    mu: &SymmetricWeight,
    a: BunkbedVertex,
    b: BunkbedVertex,
    cfg: &EngineConfig,
) -> Result<ProbabilityReport> {
    let bb = BunkbedGraph::new(base)?;
    two_point_probability(base, &mu.to_weight(&bb), a, b, cfg)
}

struct Problem {
    base: Graph,
    /// Weight on the total graph of `BB(base)`.
    weight: Weight,
    /// Vertex of the caller's base graph that each base vertex stands for.
    origin: Vec<usize>,
}

impl Problem {
    fn side(&self, vertices: &[usize], edge_map: &[usize], sub: &Graph) -> Problem {
        let embedding = bunkbed_embedding(&self.base, vertices, edge_map);
        Problem {
            base: sub.clone(),
            weight: embedding.restrict(&self.weight),
            origin: vertices.iter().map(|&x| self.origin[x]).collect(),
        }
    }
}

fn moved(v: BunkbedVertex, vertices: &[usize]) -> BunkbedVertex {
    let base = vertices
        .iter()
        .position(|&x| x == v.base)
        .expect("vertex lies on this side");
    BunkbedVertex {
        base,
        layer: v.layer,
    }
}

struct Solver<'a> {
    cfg: &'a EngineConfig,
    work: u64,
}

impl Solver<'_> {
    fn solve(&mut self, p: &Problem, a: BunkbedVertex, b: BunkbedVertex) -> Result<Rational> {
        if a == b {
            return Ok(rational::one());
        }
        let ids = p.base.component_ids();
        if ids[a.base] != ids[b.base] {
            return Ok(rational::zero());
        }
        let n = p.base.vertex_count();
        if ids.iter().any(|&c| c != ids[a.base]) {
            let keep: Vec<usize> = (0..n).filter(|&x| ids[x] == ids[a.base]).collect();
            let (sub, edge_map) = p.base.induced_subgraph(&keep);
            let side = p.side(&keep, &edge_map, &sub);
            return self.solve(&side, moved(a, &keep), moved(b, &keep));
        }
        let cuts = cut_vertices(&p.base);
        if cuts.is_empty() {
            return self.leaf(p, a, b);
        }
        if let Some((v, selector)) = best_collapse(&p.base, &cuts, a.base, b.base) {
            return self.collapse(p, a, b, v, &selector);
        }
        let (v, selector) = best_separator(&p.base, &cuts, a.base);
        self.cross(p, a, b, v, &selector)
    }

    fn leaf(&mut self, p: &Problem, a: BunkbedVertex, b: BunkbedVertex) -> Result<Rational> {
        let bb = BunkbedGraph::new(&p.base)?;
        let (x, y) = (bb.vertex(a), bb.vertex(b));
        let edges: Vec<usize> = (0..bb.total().edge_count()).collect();
        let pm = partition_masses(
            bb.total(),
            &p.weight,
            &edges,
            &[x, y],
            self.cfg.leaf_engine,
            self.cfg,
        )
        .map_err(|e| e.in_block(&p.origin))?;
        self.work = self.work.saturating_add(pm.work());
        Ok(pm.connected(x, y))
    }

    fn split(
        &self,
        p: &Problem,
        v: usize,
        selector: &[usize],
    ) -> Result<(Problem, Problem, BunkbedSplit)> {
        let split = split_at(&p.base, v, selector)?;
        let bs = bunkbed_split(&split)?;
        let g = p.side(&split.g_vertices, &split.g_edges, &split.side_g);
        let h = p.side(&split.h_vertices, &split.h_edges, &split.side_h);
        Ok((g, h, bs))
    }

    /// Side G (the selected components) becomes one post; the query moves to H.
    fn collapse(
        &mut self,
        p: &Problem,
        a: BunkbedVertex,
        b: BunkbedVertex,
        v: usize,
        selector: &[usize],
    ) -> Result<Rational> {
        let (g, h, bs) = self.split(p, v, selector)?;
        let c = bs.g_cut_base();
        let value = self.solve(&g, BunkbedVertex::minus(c), BunkbedVertex::plus(c))?;
        let collapsed = collapse_with(&bs, &p.weight, value)?;
        let reduced = Problem {
            weight: collapsed.reduced_weight,
            ..h
        };
        let h_vertices: Vec<usize> =
            bs.h_embedding.vertices[..reduced.base.vertex_count()].to_vec();
        self.solve(&reduced, moved(a, &h_vertices), moved(b, &h_vertices))
    }

    /// `a` on side G, `b` on side H, neither at the cut vertex.
    fn cross(
        &mut self,
        p: &Problem,
        a: BunkbedVertex,
        b: BunkbedVertex,
        v: usize,
        selector: &[usize],
    ) -> Result<Rational> {
        let (g, h, bs) = self.split(p, v, selector)?;
        let g_vertices: Vec<usize> = bs.g_embedding.vertices[..g.base.vertex_count()].to_vec();
        let h_vertices: Vec<usize> = bs.h_embedding.vertices[..h.base.vertex_count()].to_vec();
        let (a, b) = (moved(a, &g_vertices), moved(b, &h_vertices));
        let (gc, hc) = (bs.g_cut_base(), bs.h_cut_base());

        let g_minus = self.solve(&g, a, BunkbedVertex::minus(gc))?;
        let g_plus = self.solve(&g, a, BunkbedVertex::plus(gc))?;
        let (gm, gp) = bs.g_cut();
        let g_total = bs.g.total();
        let g_edges: Vec<usize> = (0..g_total.edge_count()).collect();
        let (_, _, g_both, work) = joint_terms(
            g_total,
            &g.weight,
            &g_edges,
            bs.g.vertex(a),
            gm,
            gp,
            self.cfg.leaf_engine,
            self.cfg,
        )
        .map_err(|e| e.in_block(&g.origin))?;
        self.work = self.work.saturating_add(work);

        let h0 = Problem {
            weight: zero_post_weight(&bs.h, &h.weight, hc)?,
            ..h
        };
        let h0_minus = self.solve(&h0, b, BunkbedVertex::minus(hc))?;
        let h0_plus = self.solve(&h0, b, BunkbedVertex::plus(hc))?;
        let (hm, hp) = bs.h_cut();
        let h0_weight = bs.h0_embedding.restrict(&p.weight);
        let h0_edges: Vec<usize> = (0..bs.h0.edge_count()).collect();
        let (_, _, h0_both, work) = joint_terms(
            &bs.h0,
            &h0_weight,
            &h0_edges,
            bs.h.vertex(b),
            hm,
            hp,
            self.cfg.leaf_engine,
            self.cfg,
        )
        .map_err(|e| e.in_block(&h0.origin))?;
        self.work = self.work.saturating_add(work);

        let terms = CrossSideTerms {
            g_minus,
            g_plus,
            g_both,
            h0_minus,
            h0_plus,
            h0_both,
        };
        if !terms.is_consistent() {
            return Err(Error::InvalidWeight(format!(
                "inconsistent cross-side terms at vertex {}",
                p.origin[v]
            )));
        }
        Ok(cross_side_probability(&terms))
    }
}

/// Edges of `g` with an endpoint in one of the selected components.
fn edges_touching(g: &Graph, components: &[Vec<usize>], selected: &[usize]) -> usize {
    let mut inside = vec![false; g.vertex_count()];
    for &i in selected {
        for &x in &components[i] {
            inside[x] = true;
        }
    }
    g.edges()
        .iter()
        .filter(|&&(u, v)| inside[u] || inside[v])
        .count()
}

/// Cut vertex and components to collapse: those holding neither endpoint,
/// picking the cut vertex that removes the most edges. When both endpoints
/// sit on the cut vertex the component with the fewest edges stays.
fn best_collapse(g: &Graph, cuts: &[usize], pa: usize, pb: usize) -> Option<(usize, Vec<usize>)> {
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    for &v in cuts {
        let comps = g.components_without(v);
        let holds = |x: usize| comps.iter().position(|c| c.contains(&x));
        let (ca, cb) = (holds(pa), holds(pb));
        let mut selected: Vec<usize> = (0..comps.len())
            .filter(|&i| Some(i) != ca && Some(i) != cb)
            .collect();
        if ca.is_none() && cb.is_none() {
            let keep = (0..comps.len())
                .min_by_key(|&i| edges_touching(g, &comps, &[i]))
                .expect("a cut vertex has components");
            selected.retain(|&i| i != keep);
        }
        if selected.is_empty() {
            continue;
        }
        let removed = edges_touching(g, &comps, &selected);
        if best.as_ref().map_or(true, |(r, ..)| removed > *r) {
            best = Some((removed, v, selected));
        }
    }
    best.map(|(_, v, selected)| (v, selected))
}

/// Cut vertex whose two sides are closest in size, with the side holding
/// `pa` selected as G.
fn best_separator(g: &Graph, cuts: &[usize], pa: usize) -> (usize, Vec<usize>) {
    cuts.iter()
        .map(|&v| {
            let comps = g.components_without(v);
            let ca = comps
                .iter()
                .position(|c| c.contains(&pa))
                .expect("endpoints are off the cut vertex");
            let g_side = edges_touching(g, &comps, &[ca]);
            let imbalance = g_side.max(g.edge_count() - g_side);
            (imbalance, v, vec![ca])
        })
        .min_by_key(|(imbalance, v, _)| (*imbalance, *v))
        .map(|(_, v, selected)| (v, selected))
        .expect("at least one cut vertex")
}
