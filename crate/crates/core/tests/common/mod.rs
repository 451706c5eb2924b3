//! Oracles and generators shared by the integration tests.

#![allow(dead_code)]

use std::collections::HashMap;

use bunkbed_core::checker::all_graphs;
use bunkbed_core::graph::cut_vertices;
use bunkbed_core::percolation::{partition_masses, PartitionMasses};
use bunkbed_core::{
    BunkbedGraph, BunkbedVertex, Engine, EngineConfig, Graph, Rational, SymmetricWeight, Weight,
};
use num::{BigInt, ToPrimitive};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Bunkbeds within the default enumeration cap go to the brute-force engine;
/// larger ones to the layer-by-layer enumeration below.
pub const BRUTE_FORCE_EDGES: usize = 30;

/// `a / d` with `d` in `1..=9` and `a` in `0..=d`, so that `0` and `1` turn up.
pub fn random_value(rng: &mut ChaCha8Rng) -> Rational {
    let d: i64 = rng.gen_range(1..=9);
    let a: i64 = rng.gen_range(0..=d);
    Rational::new(a.into(), d.into())
}

pub fn random_weight(g: &Graph, rng: &mut ChaCha8Rng) -> Weight {
    Weight::new(g, (0..g.edge_count()).map(|_| random_value(rng)).collect()).unwrap()
}

pub fn random_symmetric(base: &Graph, rng: &mut ChaCha8Rng) -> SymmetricWeight {
    let edges = (0..base.edge_count()).map(|_| random_value(rng)).collect();
    let posts = (0..base.vertex_count())
        .map(|_| random_value(rng))
        .collect();
    SymmetricWeight::new(base, edges, posts).unwrap()
}

/// Bunkbed vertex with total-graph index `i`: `x⁻ = x`, `x⁺ = n + x`.
pub fn bunkbed_vertex(n: usize, i: usize) -> BunkbedVertex {
    if i < n {
        BunkbedVertex::minus(i)
    } else {
        BunkbedVertex::plus(i - n)
    }
}

/// Connected graphs on at most 6 vertices with a cut vertex, one per
/// isomorphism class.
pub fn cut_vertex_graphs() -> Vec<Graph> {
    (2..=6)
        .flat_map(|n| all_graphs(n).unwrap())
        .filter(|g| g.is_connected() && !cut_vertices(g).is_empty())
        .collect()
}

/// Exhaustive connectivity distribution of all `2n` vertices of `BB(base)`.
pub struct Exhaustive {
    source: Source,
    /// `pairs[u][v] = P(u ∼ v)`.
    pairs: Vec<Vec<Rational>>,
}

enum Source {
    Brute(PartitionMasses),
    Layered(Layered),
}

impl Exhaustive {
    pub fn new(base: &Graph, mu: &Weight) -> Self {
        let bb = BunkbedGraph::new(base).unwrap();
        let total = bb.total();
        if total.edge_count() <= BRUTE_FORCE_EDGES {
            let edges: Vec<usize> = (0..total.edge_count()).collect();
            let tracked: Vec<usize> = (0..total.vertex_count()).collect();
            let pm = partition_masses(
                total,
                mu,
                &edges,
                &tracked,
                Engine::BruteForce,
                &EngineConfig::default(),
            )
            .unwrap();
            let pairs = tracked
                .iter()
                .map(|&u| tracked.iter().map(|&v| pm.connected(u, v)).collect())
                .collect();
            Exhaustive {
                source: Source::Brute(pm),
                pairs,
            }
        } else {
            let layered = Layered::new(base, mu);
            Exhaustive {
                pairs: layered.pair_matrix(),
                source: Source::Layered(layered),
            }
        }
    }

    pub fn connected(&self, u: usize, v: usize) -> Rational {
        self.pairs[u][v].clone()
    }

    pub fn probability(&self, positive: &[(usize, usize)]) -> Rational {
        match &self.source {
            Source::Brute(pm) => pm.probability(positive, &[]),
            Source::Layered(l) => l.probability(positive),
        }
    }

    pub fn is_brute(&self) -> bool {
        matches!(self.source, Source::Brute(_))
    }
}

type Key = u64;

fn label(key: Key, v: usize) -> u64 {
    key >> (4 * v) & 0xf
}

fn canonical(labels: &[u64]) -> Key {
    let mut map = [u64::MAX; 16];
    let mut next = 0;
    let mut key = 0;
    for (v, &l) in labels.iter().enumerate() {
        if map[l as usize] == u64::MAX {
            map[l as usize] = next;
            next += 1;
        }
        key |= map[l as usize] << (4 * v);
    }
    key
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn split(r: &Rational) -> (u128, u128) {
    (r.numer().to_u128().unwrap(), r.denom().to_u128().unwrap())
}

/// Sum over all atoms of `BB(base)`, grouped by layer: the two layers are
/// enumerated separately (each over the `2^m` subsets of its copy of the base
/// edges), paired, and the posts are added one at a time. Masses are exact
/// integers over the product of all denominators.
pub struct Layered {
    vertices: usize,
    masses: HashMap<Key, u128>,
    denominator: u128,
}

impl Layered {
    pub fn new(base: &Graph, mu: &Weight) -> Self {
        let (n, m) = (base.vertex_count(), base.edge_count());
        assert!(2 * n <= 16);
        let values = mu.values();
        let layer = |offset: usize| -> (HashMap<Key, u128>, u128) {
            let factors: Vec<(u128, u128)> = (0..m).map(|e| split(&values[offset + e])).collect();
            let denominator = factors
                .iter()
                .try_fold(1u128, |d, f| d.checked_mul(f.1))
                .unwrap();
            let mut out = HashMap::new();
            for mask in 0u64..1 << m {
                let mut mass = 1u128;
                let mut parent: Vec<usize> = (0..n).collect();
                for (e, &(a, d)) in factors.iter().enumerate() {
                    if mask >> e & 1 == 1 {
                        mass *= a;
                        let (u, v) = base.edge(e);
                        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                        parent[ru] = rv;
                    } else {
                        mass *= d - a;
                    }
                }
                if mass == 0 {
                    continue;
                }
                let labels: Vec<u64> = (0..n).map(|v| find(&mut parent, v) as u64).collect();
                *out.entry(canonical(&labels)).or_insert(0) += mass;
            }
            (out, denominator)
        };
        let (minus, d_minus) = layer(0);
        let (plus, d_plus) = layer(m);
        let mut states: HashMap<Key, u128> = HashMap::new();
        for (&k1, &m1) in &minus {
            let blocks = (0..n).map(|v| label(k1, v)).max().map_or(0, |l| l + 1);
            for (&k2, &m2) in &plus {
                let mut labels: Vec<u64> = (0..n).map(|v| label(k1, v)).collect();
                labels.extend((0..n).map(|v| label(k2, v) + blocks));
                *states.entry(canonical(&labels)).or_insert(0) += m1.checked_mul(m2).unwrap();
            }
        }
        let mut denominator = d_minus.checked_mul(d_plus).unwrap();
        for x in 0..n {
            let (a, d) = split(&values[2 * m + x]);
            denominator = denominator.checked_mul(d).unwrap();
            let mut next: HashMap<Key, u128> = HashMap::new();
            for (&key, &mass) in &states {
                if d > a {
                    *next.entry(key).or_insert(0) += mass.checked_mul(d - a).unwrap();
                }
                if a > 0 {
                    let (lx, ly) = (label(key, x), label(key, n + x));
                    let labels: Vec<u64> = (0..2 * n)
                        .map(|v| {
                            if label(key, v) == ly {
                                lx
                            } else {
                                label(key, v)
                            }
                        })
                        .collect();
                    *next.entry(canonical(&labels)).or_insert(0) += mass.checked_mul(a).unwrap();
                }
            }
            states = next;
        }
        Layered {
            vertices: 2 * n,
            masses: states,
            denominator,
        }
    }

    pub fn pair_matrix(&self) -> Vec<Vec<Rational>> {
        let k = self.vertices;
        let mut sums = vec![vec![0u128; k]; k];
        for (&key, &mass) in &self.masses {
            for u in 0..k {
                for v in 0..k {
                    if label(key, u) == label(key, v) {
                        sums[u][v] += mass;
                    }
                }
            }
        }
        let d = BigInt::from(self.denominator);
        sums.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|s| Rational::new(BigInt::from(s), d.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn probability(&self, positive: &[(usize, usize)]) -> Rational {
        assert!(positive
            .iter()
            .all(|&(u, v)| u < self.vertices && v < self.vertices));
        let total: u128 = self
            .masses
            .iter()
            .filter(|(&key, _)| {
                positive
                    .iter()
                    .all(|&(u, v)| label(key, u) == label(key, v))
            })
            .map(|(_, &mass)| mass)
            .sum();
        Rational::new(BigInt::from(total), BigInt::from(self.denominator))
    }
}

/// `P(0⁻ ∼ (n-1)⁻)` on the bunkbed of the path with `n` vertices, every edge
/// open with probability `p`, by a left-to-right transfer over the columns of
/// the ladder. The state is the partition of `{0⁻, j⁻, j⁺}`.
pub fn ladder_end_to_end(n: usize, p: &Rational) -> Rational {
    let one = Rational::from_integer(1.into());
    let q = &one - p;
    // labels of (origin, column minus, column plus), canonical by first use
    let mut states: HashMap<[u8; 3], Rational> = HashMap::new();
    let canon = |l: [u8; 3]| -> [u8; 3] {
        let mut map = [u8::MAX; 6];
        let mut next = 0;
        let mut out = [0; 3];
        for i in 0..3 {
            if map[l[i] as usize] == u8::MAX {
                map[l[i] as usize] = next;
                next += 1;
            }
            out[i] = map[l[i] as usize];
        }
        out
    };
    // column 0: origin is 0⁻ itself; the post decides 0⁺
    states.insert([0, 0, 0], p.clone());
    states.insert([0, 0, 1], q.clone());
    for _ in 1..n {
        let mut next: HashMap<[u8; 3], Rational> = HashMap::new();
        for (l, mass) in &states {
            // new column vertices start as fresh labels 4 and 5
            for rung_minus in [false, true] {
                for rung_plus in [false, true] {
                    for post in [false, true] {
                        let mut w = mass.clone();
                        for open in [rung_minus, rung_plus, post] {
                            w *= if open { p } else { &q };
                        }
                        // slots: origin, old minus, old plus, new minus, new plus
                        let mut big = [l[0], l[1], l[2], 4, 5];
                        let mut join = |a: usize, b: usize| {
                            let (from, to) = (big[b], big[a]);
                            for x in big.iter_mut() {
                                if *x == from {
                                    *x = to;
                                }
                            }
                        };
                        if rung_minus {
                            join(1, 3);
                        }
                        if rung_plus {
                            join(2, 4);
                        }
                        if post {
                            join(3, 4);
                        }
                        let key = canon([big[0], big[3], big[4]]);
                        *next
                            .entry(key)
                            .or_insert_with(|| Rational::from_integer(0.into())) += w;
                    }
                }
            }
        }
        states = next;
    }
    states
        .into_iter()
        .filter(|(l, _)| l[0] == l[1])
        .map(|(_, mass)| mass)
        .sum()
}

/// Graph on `n` vertices holding the pairs `i < j` whose bit is set in
/// `mask`, in pair order, keeping at most `max_edges` of them.
pub fn graph_from_mask(n: usize, mask: u64, max_edges: usize) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> (bit % 64) & 1 == 1 && edges.len() < max_edges {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}
