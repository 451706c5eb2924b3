//! Every grid point from a single enumeration.
//!
//! A symmetric weight has one dimension per base edge and one per post. An
//! atom of `BB(G)` fixes a state per dimension: four states for a base edge
//! (which of its two copies are open) and two for a post. The probability of
//! an event is the sum over atoms of its indicator times one factor per
//! dimension, so for all grid points at once it is the indicator tensor
//! contracted, dimension by dimension, with a `grid × states` factor matrix.
//! With every grid value written over a common denominator `L` the factors
//! are integers and the results are exact numerators over `L^(2m + n)`.

use num::{BigInt, Integer, One, ToPrimitive};
use rayon::prelude::*;

use super::delta::BunkbedDelta;
use super::report::Collector;
use super::source::grid_point;
use crate::graph::Graph;
use crate::percolation::SymmetricWeight;
use crate::rational::Rational;

/// Largest bunkbed edge count the sweep enumerates.
pub const MAX_SWEEP_EDGES: usize = 24;
/// Largest intermediate tensor, in entries.
pub const MAX_SWEEP_ENTRIES: u64 = 1 << 23;

fn common_denominator(grid: &[Rational]) -> BigInt {
    grid.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()))
}

/// Sizes of the tensor before each contraction and after the last.
fn tensor_sizes(m: usize, n: usize, g: u64) -> Option<Vec<u64>> {
    let mut size = 1u64.checked_shl((2 * m + n) as u32)?;
    let mut sizes = vec![size];
    for r in std::iter::repeat(4)
        .take(m)
        .chain(std::iter::repeat(2).take(n))
    {
        size = (size / r).checked_mul(g)?;
        sizes.push(size);
    }
    Some(sizes)
}

pub fn feasible(base: &Graph, grid: &[Rational]) -> bool {
    let (n, m) = (base.vertex_count(), base.edge_count());
    let k = 2 * m + n;
    if grid.is_empty() || 2 * n > 16 || k > MAX_SWEEP_EDGES {
        return false;
    }
    if common_denominator(grid).bits() * k as u64 > 120 {
        return false;
    }
    match tensor_sizes(m, n, grid.len() as u64) {
        Some(sizes) => sizes.iter().all(|&s| s <= MAX_SWEEP_ENTRIES),
        None => false,
    }
}

/// Partition of all `2n` bunkbed vertices for one atom: 4-bit labels by
/// first appearance. Bits `2e`, `2e + 1` open the minus and plus copy of
/// base edge `e`; bit `2m + x` opens the post at `x`.
fn atom_partition(links: &[(usize, usize)], vertices: usize, mask: u64) -> u64 {
    let mut parent = [0u8; 16];
    for (i, p) in parent.iter_mut().enumerate() {
        *p = i as u8;
    }
    fn find(parent: &mut [u8; 16], mut x: usize) -> usize {
        while parent[x] as usize != x {
            parent[x] = parent[parent[x] as usize];
            x = parent[x] as usize;
        }
        x
    }
    let mut bits = mask;
    while bits != 0 {
        let (a, b) = links[bits.trailing_zeros() as usize];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb as u8;
        bits &= bits - 1;
    }
    let mut label_of_root = [u8::MAX; 16];
    let mut next = 0u8;
    let mut key = 0u64;
    for v in 0..vertices {
        let r = find(&mut parent, v);
        if label_of_root[r] == u8::MAX {
            label_of_root[r] = next;
            next += 1;
        }
        key |= (label_of_root[r] as u64) << (4 * v);
    }
    key
}

fn label(key: u64, v: usize) -> u64 {
    key >> (4 * v) & 0xf
}

struct Factors {
    radices: Vec<usize>,
    /// `matrices[d][grid index][state]`.
    matrices: Vec<Vec<Vec<i128>>>,
}

impl Factors {
    fn new(m: usize, n: usize, numerators: &[i128], l: i128) -> Self {
        let edge: Vec<Vec<i128>> = numerators
            .iter()
            .map(|&a| vec![(l - a) * (l - a), a * (l - a), a * (l - a), a * a])
            .collect();
        let post: Vec<Vec<i128>> = numerators.iter().map(|&a| vec![l - a, a]).collect();
        let mut radices = vec![4; m];
        radices.extend(std::iter::repeat(2).take(n));
        let mut matrices = vec![edge; m];
        matrices.extend(std::iter::repeat(post).take(n));
        Factors { radices, matrices }
    }

    /// The same factors restricted to one grid point.
    fn at(&self, point: u64) -> Factors {
        let g = self.matrices.first().map_or(1, |mat| mat.len() as u64);
        let mut index = point;
        let matrices = self
            .matrices
            .iter()
            .map(|mat| {
                let row = mat[(index % g) as usize].clone();
                index /= g;
                vec![row]
            })
            .collect();
        Factors {
            radices: self.radices.clone(),
            matrices,
        }
    }
}

/// Contracts dimension 0 first; the result is indexed like
/// [`grid_point`], first dimension fastest.
fn contract(mut t: Vec<i128>, factors: &Factors) -> Vec<i128> {
    for (r, mat) in factors.radices.iter().zip(&factors.matrices) {
        let rows = t.len() / r;
        let mut out = vec![0i128; rows * mat.len()];
        for (chunk, f) in out.chunks_mut(rows).zip(mat) {
            for (row, slot) in chunk.iter_mut().enumerate() {
                *slot = t[row * r..row * r + r]
                    .iter()
                    .zip(f)
                    .map(|(a, b)| a * b)
                    .sum();
            }
        }
        t = out;
    }
    t
}

/// Per pair: index and numerator of the smallest delta, and every index
/// whose numerator is below `bound`.
type PairSweep = ((u64, i128), Vec<u64>);

pub(crate) fn run(
    base: &Graph,
    grid: &[Rational],
    pairs: &[(usize, usize)],
    collector: &mut Collector,
) {
    let (n, m) = (base.vertex_count(), base.edge_count());
    let k = 2 * m + n;
    let mut links = Vec::with_capacity(k);
    for &(u, v) in base.edges() {
        links.push((u, v));
        links.push((n + u, n + v));
    }
    links.extend((0..n).map(|x| (x, n + x)));

    let l = common_denominator(grid);
    let denominator = l.pow(k as u32);
    let li = l.to_i128().expect("checked by feasible");
    let numerators: Vec<i128> = grid
        .iter()
        .map(|v| {
            (v.numer() * (&l / v.denom()))
                .to_i128()
                .expect("checked by feasible")
        })
        .collect();
    let factors = Factors::new(m, n, &numerators, li);

    let keys: Vec<u64> = (0..1u64 << k)
        .into_par_iter()
        .map(|mask| atom_partition(&links, 2 * n, mask))
        .collect();

    // delta < threshold  <=>  numerator < ceil(threshold * D)
    let scaled = collector.threshold() * Rational::from_integer(denominator.clone());
    let bound = scaled.ceil().to_integer().to_i128().unwrap_or(
        if scaled > Rational::from_integer(0.into()) {
            i128::MAX
        } else {
            i128::MIN
        },
    );

    let indicator = |x: usize, y: usize, layer_offset: usize| -> Vec<i128> {
        keys.iter()
            .map(|&key| (label(key, x) == label(key, y + layer_offset)) as i128)
            .collect()
    };

    let sweeps: Vec<PairSweep> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let diff: Vec<i128> = keys
                .iter()
                .map(|&key| {
                    let xl = label(key, x);
                    (xl == label(key, y)) as i128 - (xl == label(key, n + y)) as i128
                })
                .collect();
            let deltas = contract(diff, &factors);
            let mut best = (0u64, i128::MAX);
            let mut below = Vec::new();
            for (i, &d) in deltas.iter().enumerate() {
                if d < best.1 {
                    best = (i as u64, d);
                }
                if d < bound {
                    below.push(i as u64);
                }
            }
            (best, below)
        })
        .collect();

    let den = Rational::from_integer(denominator);
    let dims = m + n;
    let weight_at = |point: u64| {
        let values = grid_point(grid, dims, point);
        SymmetricWeight::new(base, values[..m].to_vec(), values[m..].to_vec())
            .expect("grid values are probabilities")
    };
    let exact = |x: usize, y: usize, point: u64| {
        let f = factors.at(point);
        let same = contract(indicator(x, y, 0), &f)[0];
        let cross = contract(indicator(x, y, n), &f)[0];
        let w = weight_at(point);
        BunkbedDelta::new(
            base,
            &w,
            x,
            y,
            Rational::from_integer(same.into()) / &den,
            Rational::from_integer(cross.into()) / &den,
        )
    };
    for (slot, (&(x, y), ((best, best_value), below))) in pairs.iter().zip(&sweeps).enumerate() {
        let d = exact(x, y, *best);
        debug_assert_eq!(d.delta, Rational::from_integer((*best_value).into()) / &den);
        collector.offer_best(slot, d);
        for &point in below {
            collector.violation(exact(x, y, point));
        }
    }
    collector.weights_checked = (grid.len() as u64).pow(dims as u32);
}
