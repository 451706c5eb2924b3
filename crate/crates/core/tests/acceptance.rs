//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bunkbed_core::checker::{all_graphs, check_graph, enumerate_trees, CheckOptions, WeightSource};
use bunkbed_core::graph::{cut_vertices, split_at, EdgeSet, SplitAtCutVertex};
use bunkbed_core::percolation::{
    atom_probability, connection_probability, event_probability, sum_over_all_atoms,
};
use bunkbed_core::rational::{self, ratio};
use bunkbed_core::reduction::{
    bunkbed_split, collapse_side, cross_side_probability, cross_side_terms, two_point_probability,
    two_point_probability_symmetric, CrossSideTerms,
};
use bunkbed_core::{
    BunkbedGraph, BunkbedVertex, ConnectivitySpec, Engine, EngineConfig, Error, Graph, Rational,
    SymmetricWeight, Weight,
};
use common::*;
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const WEIGHTS_PER_SPLIT_GRAPH: u64 = 20;
const WEIGHTS_PER_GRAPH: u64 = 10;
const PROPERTY_INSTANCES: u64 = 500;

/// Every split of `g`: each cut vertex with each nonempty proper subset of
/// the components around it as side G.
fn splits(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for v in cut_vertices(g) {
        let c = g.components_without(v).len();
        for mask in 1u32..(1 << c) - 1 {
            out.push((v, (0..c).filter(|i| mask >> i & 1 == 1).collect()));
        }
    }
    out
}

/// `mu` with the post at `v` closed: the bunkbed then percolates like the
/// graph with that post deleted.
fn without_post(bb: &BunkbedGraph, mu: &Weight, v: usize) -> Weight {
    mu.with_value(bb.post_edge(v), rational::zero()).unwrap()
}

/// Both split identities over the same universe, sharing one exhaustive
/// enumeration of `F` per weight: every connected graph on at most 6
/// vertices with a cut vertex, every split, seeded random weights (not
/// symmetric), every same-side and every cross-side pair.
fn split_identities() -> [Outcome; 2] {
    let mut same = Ok((0, 0u64));
    let mut cross = Ok((0u64, 0u64));
    let cfg = EngineConfig::default();
    let graphs = cut_vertex_graphs();
    let mut split_count = 0;
    let mut layered = 0;
    for (gi, g) in graphs.iter().enumerate() {
        let f = BunkbedGraph::new(g).unwrap();
        let all_splits = splits(g);
        split_count += all_splits.len();
        let mut r = rng(1000 + gi as u64);
        for _ in 0..WEIGHTS_PER_SPLIT_GRAPH {
            let mu = random_weight(f.total(), &mut r);
            let oracle = Exhaustive::new(g, &mu);
            layered += !oracle.is_brute() as usize;
            for (v, selector) in &all_splits {
                let split = split_at(g, *v, selector).unwrap();
                if let Ok(counts) = &mut same {
                    match same_side_pairs(&f, &mu, &split, &oracle, &cfg) {
                        Ok(n) => counts.1 += n,
                        Err(e) => {
                            same = Err(format!(
                                "graph {:?}, cut {v}, side {selector:?}: {e}",
                                g.edges()
                            ))
                        }
                    }
                }
                if let Ok(counts) = &mut cross {
                    match cross_side_pairs(&mu, &split, &oracle, &cfg) {
                        Ok((n, lib)) => {
                            counts.0 += n;
                            counts.1 += lib;
                        }
                        Err(e) => {
                            cross = Err(format!(
                                "graph {:?}, cut {v}, side {selector:?}: {e}",
                                g.edges()
                            ))
                        }
                    }
                }
            }
        }
    }
    let universe = format!(
        "{} graphs, {split_count} splits, {WEIGHTS_PER_SPLIT_GRAPH} weights each ({layered} F oracles enumerated layer by layer)",
        graphs.len()
    );
    [
        same.map(|(_, n)| format!("{universe}; {n} same-side pairs equal")),
        cross.map(|(n, lib)| {
            format!("{universe}; {n} cross-side pairs equal, {lib} of them also through the library's term computation")
        }),
    ]
}

/// Collapses side G and compares every pair of H against `F`.
fn same_side_pairs(
    f: &BunkbedGraph,
    mu: &Weight,
    split: &SplitAtCutVertex,
    oracle: &Exhaustive,
    cfg: &EngineConfig,
) -> Result<u64, String> {
    let reduced = collapse_side(f, mu, split, cfg).map_err(|e| e.to_string())?;
    let h = Exhaustive::new(&split.side_h, &reduced.reduced_weight);
    let emb = &reduced.embedding.vertices;
    for i in 0..emb.len() {
        for j in 0..emb.len() {
            ensure!(
                h.connected(i, j) == oracle.connected(emb[i], emb[j]),
                "pair ({i}, {j}) of H differs"
            );
        }
    }
    Ok((emb.len() * emb.len()) as u64)
}

/// Six terms by exhaustive enumeration of G and of H with its post closed,
/// combined by inclusion-exclusion and compared against `F`.
fn cross_side_pairs(
    mu: &Weight,
    split: &SplitAtCutVertex,
    oracle: &Exhaustive,
    cfg: &EngineConfig,
) -> Result<(u64, u64), String> {
    let bs = bunkbed_split(split).unwrap();
    let g_side = Exhaustive::new(&split.side_g, &bs.g_embedding.restrict(mu));
    let h_weight = bs.h_embedding.restrict(mu);
    let h0 = Exhaustive::new(
        &split.side_h,
        &without_post(&bs.h, &h_weight, bs.h_cut_base()),
    );
    let (gm, gp) = bs.g_cut();
    let (hm, hp) = bs.h_cut();
    let small = bs.g.total().edge_count() <= 12 && bs.h0.edge_count() <= 12;
    let (mut compared, mut library) = (0, 0);
    for x in 0..bs.g.total().vertex_count() {
        for y in 0..bs.h.total().vertex_count() {
            let terms = CrossSideTerms {
                g_minus: g_side.connected(x, gm),
                g_plus: g_side.connected(x, gp),
                g_both: g_side.probability(&[(x, gm), (x, gp)]),
                h0_minus: h0.connected(y, hm),
                h0_plus: h0.connected(y, hp),
                h0_both: h0.probability(&[(y, hm), (y, hp)]),
            };
            ensure!(terms.is_consistent(), "inconsistent terms at ({x}, {y})");
            let (fx, fy) = (bs.g_embedding.vertices[x], bs.h_embedding.vertices[y]);
            ensure!(
                cross_side_probability(&terms) == oracle.connected(fx, fy),
                "pair ({fx}, {fy}) differs"
            );
            compared += 1;
            if small {
                let lib = cross_side_terms(&bs, mu, x, y, Engine::BruteForce, cfg)
                    .map_err(|e| e.to_string())?;
                ensure!(lib == terms, "library terms differ at ({x}, {y})");
                library += 1;
            }
        }
    }
    Ok((compared, library))
}

fn decomposition_against_oracle() -> Outcome {
    let cfg = EngineConfig::default();
    let (mut graphs, mut compared, mut layered) = (0, 0u64, 0);
    for n in 0..=6 {
        for (gi, g) in all_graphs(n).unwrap().iter().enumerate() {
            graphs += 1;
            let bb = BunkbedGraph::new(g).unwrap();
            let mut r = rng(((n as u64) << 32) + gi as u64);
            for _ in 0..WEIGHTS_PER_GRAPH {
                let w = random_symmetric(g, &mut r);
                let oracle = Exhaustive::new(g, &w.to_weight(&bb));
                layered += !oracle.is_brute() as usize;
                for a in 0..2 * n {
                    for b in a..2 * n {
                        let got = two_point_probability_symmetric(
                            g,
                            &w,
                            bunkbed_vertex(n, a),
                            bunkbed_vertex(n, b),
                            &cfg,
                        )
                        .map_err(|e| format!("{:?}: {e}", g.edges()))?;
                        ensure!(
                            got.value == oracle.connected(a, b),
                            "graph {:?}: pair ({a}, {b}) differs",
                            g.edges()
                        );
                        compared += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{graphs} graphs, {WEIGHTS_PER_GRAPH} weights each, {compared} pairs equal; \
         {layered} oracle runs enumerated layer by layer"
    ))
}

fn trees_on_the_grid() -> Outcome {
    let source = WeightSource::default_grid();
    let (mut trees, mut evaluations) = (0, 0u64);
    let mut smallest: Option<Rational> = None;
    for n in 1..=6 {
        for t in enumerate_trees(n).unwrap() {
            trees += 1;
            let report = check_graph(
                &t,
                &source,
                &CheckOptions::named(format!("tree-{n}-{trees}")),
            )
            .map_err(|e| e.to_string())?;
            ensure!(
                report.errors.is_empty(),
                "errors on {:?}: {:?}",
                t.edges(),
                report.errors
            );
            ensure!(
                !report.has_violations(),
                "violation on {:?}: {:?}",
                t.edges(),
                report.violations[0]
            );
            ensure!(
                report.weights_checked == 3u64.pow((t.edge_count() + n) as u32),
                "grid incomplete on {:?}",
                t.edges()
            );
            ensure!(
                report.pairs_checked == n * (n + 1) / 2,
                "pairs missing on {:?}",
                t.edges()
            );
            evaluations += report.weights_checked * report.pairs_checked as u64;
            let m = report.min_delta.clone().unwrap();
            smallest = Some(smallest.map_or(m.clone(), |s| s.min(m)));
        }
    }
    Ok(format!(
        "{trees} trees, {evaluations} (pair, weight) evaluations, no violations, smallest delta {}",
        rational::format(&smallest.unwrap())
    ))
}

fn long_path() -> Outcome {
    let cfg = EngineConfig::default();
    let g = Graph::path(13);
    let bb = BunkbedGraph::new(&g).unwrap();
    let w = Weight::uniform(bb.total(), ratio(1, 2)).unwrap();
    let start = Instant::now();
    let report = two_point_probability(
        &g,
        &w,
        BunkbedVertex::minus(0),
        BunkbedVertex::minus(12),
        &cfg,
    )
    .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(
        elapsed < Duration::from_secs(5),
        "decomposition took {elapsed:?}"
    );
    let ladder = ladder_end_to_end(13, &ratio(1, 2));
    ensure!(
        report.value == ladder,
        "decomposition {} vs ladder transfer {}",
        rational::format(&report.value),
        rational::format(&ladder)
    );
    match event_probability(bb.total(), &w, &ConnectivitySpec::connected(0, 12), &cfg) {
        Err(Error::CapExceeded {
            edges: 37, cap: 30, ..
        }) => {}
        other => {
            return Err(format!(
                "brute force should refuse 2^37 atoms, got {other:?}"
            ))
        }
    }
    let mut compared = 0;
    for len in 1..=5 {
        for first in 0..=13 - len {
            let window: Vec<usize> = (first..first + len).collect();
            let (sub, _) = g.induced_subgraph(&window);
            let sbb = BunkbedGraph::new(&sub).unwrap();
            let sw = Weight::uniform(sbb.total(), ratio(1, 2)).unwrap();
            for a in 0..2 * len {
                for b in 0..2 * len {
                    let brute = connection_probability(sbb.total(), &sw, a, b, &cfg)
                        .map_err(|e| e.to_string())?;
                    let dec = two_point_probability(
                        &sub,
                        &sw,
                        bunkbed_vertex(len, a),
                        bunkbed_vertex(len, b),
                        &cfg,
                    )
                    .map_err(|e| e.to_string())?;
                    ensure!(
                        brute == dec.value,
                        "window {window:?}: pair ({a}, {b}) differs"
                    );
                    compared += 1;
                }
            }
        }
    }
    Ok(format!(
        "P(0- ~ 12-) = {} in {elapsed:?}, equal to the ladder transfer value; brute force refuses 2^37 atoms; \
         {compared} sub-path pairs equal",
        rational::format(&report.value)
    ))
}

fn measure_properties() -> Outcome {
    let cfg = EngineConfig::default();
    let mut r = rng(6);
    for i in 0..PROPERTY_INSTANCES {
        let n = r.gen_range(1..=6);
        let max_edges = r.gen_range(0..=12);
        let g = graph_from_mask(n, r.gen(), max_edges);
        let w = random_weight(&g, &mut r);
        let total = sum_over_all_atoms(&g, &w, &cfg).map_err(|e| e.to_string())?;
        ensure!(
            total == rational::one(),
            "instance {i}: atoms sum to {}",
            rational::format(&total)
        );
        if g.edge_count() == 0 {
            continue;
        }
        let mut spec = ConnectivitySpec::default();
        for _ in 0..r.gen_range(1..=3) {
            let (x, y) = (r.gen_range(0..n), r.gen_range(0..n));
            spec = if r.gen_bool(0.7) {
                spec.and_connected(x, y)
            } else {
                spec.and_disconnected(x, y)
            };
        }
        let e = r.gen_range(0..g.edge_count());
        let t = w.value(e).clone();
        let p = |v: &Weight| {
            event_probability(&g, v, &spec, &cfg)
                .map(|r| r.value)
                .map_err(|e| e.to_string())
        };
        let closed = p(&w.with_value(e, rational::zero()).unwrap())?;
        let open = p(&w.with_value(e, rational::one()).unwrap())?;
        ensure!(
            p(&w)? == (rational::one() - &t) * closed + &t * open,
            "instance {i}: not affine in edge {e}"
        );
    }
    Ok(format!("{PROPERTY_INSTANCES} instances: atoms sum to 1 and every event is affine in the chosen edge"))
}

fn k2_worked_example() -> Outcome {
    let cfg = EngineConfig::default();
    let k2 = Graph::path(2);
    let bb = BunkbedGraph::new(&k2).unwrap();
    let total = bb.total();
    let w = Weight::uniform(total, ratio(1, 2)).unwrap();
    // 16 atoms, each of mass 1/16
    let (mut same, mut cross) = (rational::zero(), rational::zero());
    for mask in 0u64..16 {
        let k = EdgeSet::from_mask(4, mask);
        let p = atom_probability(total, &w, &k).unwrap();
        if bunkbed_core::graph::connected_in_subset(total, &k, 0, 1).unwrap() {
            same += &p;
        }
        if bunkbed_core::graph::connected_in_subset(total, &k, 0, 3).unwrap() {
            cross += &p;
        }
    }
    ensure!(
        (same.clone(), cross.clone()) == (ratio(9, 16), ratio(7, 16)),
        "atom sums {same} / {cross}"
    );
    let brute_same = connection_probability(total, &w, 0, 1, &cfg).unwrap();
    let brute_cross = connection_probability(total, &w, 0, 3, &cfg).unwrap();
    let sw = SymmetricWeight::uniform(&k2, ratio(1, 2)).unwrap();
    let dec = |b| {
        two_point_probability_symmetric(&k2, &sw, BunkbedVertex::minus(0), b, &cfg)
            .unwrap()
            .value
    };
    let dec_same = dec(BunkbedVertex::minus(1));
    let dec_cross = dec(BunkbedVertex::plus(1));
    ensure!(
        brute_same == same && dec_same == same,
        "same-layer mismatch"
    );
    ensure!(
        brute_cross == cross && dec_cross == cross,
        "cross-layer mismatch"
    );
    let delta = bunkbed_core::checker::bunkbed_delta(&k2, &sw, 0, 1, &cfg)
        .unwrap()
        .delta;
    ensure!(
        delta == ratio(1, 8) && &same - &cross == delta,
        "delta {delta}"
    );
    Ok("same 9/16, cross 7/16, delta 1/8 by atom sum, brute force and decomposition".into())
}

fn single(run: fn() -> Outcome) -> impl Fn() -> Vec<Outcome> {
    move || vec![run()]
}

fn main() -> ExitCode {
    // groups of criteria computed together
    let groups: Vec<(Vec<&str>, Box<dyn Fn() -> Vec<Outcome>>)> = vec![
        (
            vec![
                "same-side collapse identity",
                "cross-side inclusion-exclusion identity",
            ],
            Box::new(|| split_identities().into()),
        ),
        (
            vec!["decomposition equals exhaustive enumeration"],
            Box::new(single(decomposition_against_oracle)),
        ),
        (
            vec!["trees on the full grid {1/4, 1/2, 3/4}"],
            Box::new(single(trees_on_the_grid)),
        ),
        (vec!["path on 13 vertices"], Box::new(single(long_path))),
        (
            vec!["normalization and multilinearity"],
            Box::new(single(measure_properties)),
        ),
        (
            vec!["K2 worked example"],
            Box::new(single(k2_worked_example)),
        ),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    let mut next_id = 1;
    for (names, run) in &groups {
        let ids: Vec<String> = (next_id..next_id + names.len())
            .map(|i| i.to_string())
            .collect();
        next_id += names.len();
        if !filter.is_empty() && !ids.iter().any(|id| filter.contains(id)) {
            continue;
        }
        let start = Instant::now();
        let outcomes = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            vec![Err(format!("panicked: {msg}")); names.len()]
        });
        let secs = start.elapsed().as_secs_f64();
        for ((id, name), outcome) in ids.iter().zip(names).zip(outcomes) {
            match outcome {
                Ok(detail) => println!("PASS {id} {name} [{secs:.1}s]: {detail}"),
                Err(detail) => {
                    failed += 1;
                    println!("FAIL {id} {name} [{secs:.1}s]: {detail}");
                }
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
