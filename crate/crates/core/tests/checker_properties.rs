//! Properties of bunkbed deltas and check reports.

mod common;

use bunkbed_core::checker::{
    bunkbed_delta, check_graph, enumerate_trees, search_candidates, verify_gluing_closure,
    Candidate, CheckMethod, CheckOptions, SearchFilters, SearchItem, Strategy as CheckStrategy,
    WeightSource,
};
use bunkbed_core::rational::{self, ratio};
use bunkbed_core::{EngineConfig, Graph, SymmetricWeight};
use common::*;
use proptest::prelude::*;

fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..=5, any::<u64>(), 0usize..=7).prop_map(|(n, mask, max)| graph_from_mask(n, mask, max))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn delta_is_symmetric_in_the_pair(g in small_graph(), seed in any::<u64>(), x in any::<u8>(), y in any::<u8>()) {
        let cfg = EngineConfig::default();
        let n = g.vertex_count();
        let (x, y) = (x as usize % n, y as usize % n);
        let w = random_symmetric(&g, &mut rng(seed));
        prop_assert_eq!(bunkbed_delta(&g, &w, x, y, &cfg).unwrap().delta, bunkbed_delta(&g, &w, y, x, &cfg).unwrap().delta);
    }

    #[test]
    fn diagonal_delta_is_nonnegative(g in small_graph(), seed in any::<u64>(), x in any::<u8>()) {
        let x = x as usize % g.vertex_count();
        let w = random_symmetric(&g, &mut rng(seed));
        let d = bunkbed_delta(&g, &w, x, x, &EngineConfig::default()).unwrap();
        prop_assert_eq!(&d.same_layer, &rational::one());
        prop_assert!(d.delta >= rational::zero());
    }

    #[test]
    fn boundary_weights(g in small_graph(), seed in any::<u64>(), x in any::<u8>(), y in any::<u8>()) {
        let cfg = EngineConfig::default();
        let n = g.vertex_count();
        let (x, y) = (x as usize % n, y as usize % n);
        let ids = g.component_ids();
        let full = SymmetricWeight::uniform(&g, rational::one()).unwrap();
        let d = bunkbed_delta(&g, &full, x, y, &cfg).unwrap();
        if ids[x] == ids[y] {
            prop_assert_eq!(&d.same_layer, &rational::one());
            prop_assert_eq!(&d.delta, &rational::zero());
        }
        let w = random_symmetric(&g, &mut rng(seed));
        let closed = SymmetricWeight::new(&g, w.base_values().to_vec(), vec![rational::zero(); n]).unwrap();
        let d = bunkbed_delta(&g, &closed, x, y, &cfg).unwrap();
        prop_assert_eq!(&d.delta, &d.same_layer);
    }

    #[test]
    fn trees_have_nonnegative_deltas(n in 1usize..=7, pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let trees = enumerate_trees(n).unwrap();
        let t = &trees[pick.index(trees.len())];
        let report = check_graph(t, &WeightSource::random(4, seed), &CheckOptions::default()).unwrap();
        prop_assert!(!report.has_violations());
        prop_assert!(report.errors.is_empty());
        prop_assert!(report.min_delta.unwrap() >= rational::zero());
    }
}

#[test]
fn reports_depend_only_on_graph_and_seed() {
    let g = Graph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
    let source = WeightSource::random(12, 2024);
    let run = |strategy| {
        let opts = CheckOptions {
            strategy,
            ..CheckOptions::default()
        };
        let mut r = check_graph(&g, &source, &opts).unwrap();
        r.elapsed_ms = 0;
        r
    };
    let a = run(CheckStrategy::Auto);
    let mut b = run(CheckStrategy::Decomposition);
    assert_eq!(a.method, CheckMethod::Enumeration);
    assert_eq!(b.method, CheckMethod::Decomposition);
    b.method = a.method;
    assert_eq!(a, b);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&run(CheckStrategy::Auto)).unwrap()
    );
}

#[test]
fn grid_sweep_agrees_with_per_weight_checks() {
    let g = Graph::star(2);
    let source = WeightSource::Grid(vec![ratio(1, 5), ratio(2, 3)]);
    let mut reports: Vec<_> = [
        CheckStrategy::GridSweep,
        CheckStrategy::Enumeration,
        CheckStrategy::Decomposition,
    ]
    .into_iter()
    .map(|strategy| {
        let opts = CheckOptions {
            strategy,
            threshold: ratio(1, 20),
            ..CheckOptions::default()
        };
        check_graph(&g, &source, &opts).unwrap()
    })
    .collect();
    for r in &mut reports {
        r.elapsed_ms = 0;
        r.method = CheckMethod::GridSweep;
        r.violations.sort_by(|a, b| {
            (a.x, a.y, &a.delta)
                .cmp(&(b.x, b.y, &b.delta))
                .then(a.weight.base_values().cmp(b.weight.base_values()))
                .then(a.weight.post_values().cmp(b.weight.post_values()))
        });
    }
    assert!(!reports[0].violations.is_empty());
    assert_eq!(reports[0], reports[1]);
    assert_eq!(reports[1], reports[2]);
}

#[test]
fn search_saves_what_it_finds() {
    let dir = tempfile::tempdir().unwrap();
    let candidates = (1..=5)
        .flat_map(|n| enumerate_trees(n).unwrap())
        .enumerate()
        .map(|(i, t)| Ok(Candidate::new(format!("tree{i}"), t)));
    // deltas of trees are nonnegative, so a positive threshold is needed to
    // produce anything to save
    let opts = CheckOptions {
        threshold: ratio(1, 1000),
        ..CheckOptions::default()
    };
    let source = WeightSource::random(3, 5);
    let mut saved = 0;
    for item in search_candidates(
        candidates,
        &source,
        SearchFilters::default(),
        &opts,
        Some(dir.path()),
    ) {
        match item {
            SearchItem::Checked { report, persisted } => {
                assert_eq!(report.violations.len(), persisted.len());
                saved += persisted.len();
            }
            other => panic!("unexpected {other:?}"),
        }
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), saved);
}

#[test]
fn gluing_two_triangles() {
    let report = verify_gluing_closure(
        &Graph::cycle(3),
        0,
        &Graph::cycle(3),
        1,
        &WeightSource::random(6, 8),
        &CheckOptions::default(),
    )
    .unwrap();
    assert!(!report.has_violations());
    assert_eq!(report.closure_checks, Some(6 * 12));
}
