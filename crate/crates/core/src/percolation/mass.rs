//! Integer bookkeeping shared by the exact engines.
//!
//! Edge `e` with weight `a_e / d_e` contributes the factor `a_e` when open
//! and `d_e - a_e` when closed. Every atom then has probability
//! `(product of factors) / D` with `D = prod d_e`, so engines can sum plain
//! integers and divide once at the end. When `D` fits in 127 bits the sums
//! are carried in `u128` (no partial sum exceeds `D`); otherwise in `BigUint`.

use std::ops::{AddAssign, Mul};

use num::{BigInt, BigUint, One, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use crate::rational::Rational;

pub(crate) trait Mass:
    Clone + Send + Sync + Zero + One + AddAssign + Mul<Output = Self>
{
    fn from_big(value: &BigUint) -> Self;
    fn into_big(self) -> BigUint;
}

impl Mass for u128 {
    fn from_big(value: &BigUint) -> Self {
        value.to_u128().expect("factor fits the chosen width")
    }

    fn into_big(self) -> BigUint {
        BigUint::from(self)
    }
}

impl Mass for BigUint {
    fn from_big(value: &BigUint) -> Self {
        value.clone()
    }

    fn into_big(self) -> BigUint {
        self
    }
}

/// Open/closed integer factors of a list of edges over a common denominator.
#[derive(Clone, Debug)]
pub(crate) struct ScaledEdges {
    pub open: Vec<BigUint>,
    pub closed: Vec<BigUint>,
    pub denominator: BigUint,
}

impl ScaledEdges {
    pub fn new<'a>(weights: impl IntoIterator<Item = &'a Rational>) -> Self {
        let mut open = Vec::new();
        let mut closed = Vec::new();
        let mut denominator = BigUint::one();
        for w in weights {
            let num = w.numer().to_biguint().expect("weights are nonnegative");
            let den = w.denom().to_biguint().expect("denominators are positive");
            closed.push(&den - &num);
            denominator *= &den;
            open.push(num);
        }
        ScaledEdges {
            open,
            closed,
            denominator,
        }
    }

    pub fn fits_u128(&self) -> bool {
        self.denominator.bits() <= 127
    }

    pub fn factors<M: Mass>(&self) -> (Vec<M>, Vec<M>) {
        (
            self.open.iter().map(M::from_big).collect(),
            self.closed.iter().map(M::from_big).collect(),
        )
    }
}

/// Canonical partition of up to 16 tracked vertices: label `i` (4 bits at
/// position `4i`) numbers the blocks in order of first appearance.
pub(crate) type PartitionKey = u64;

pub(crate) const MAX_TRACKED: usize = 16;

pub(crate) fn pack_labels(labels: &[u8]) -> PartitionKey {
    labels
        .iter()
        .enumerate()
        .fold(0, |key, (i, &l)| key | (l as u64) << (4 * i))
}

pub(crate) fn label_of(key: PartitionKey, slot: usize) -> u8 {
    (key >> (4 * slot) & 0xf) as u8
}

/// Distribution of the partition induced on the tracked vertices, as integer
/// masses over a common denominator.
#[derive(Clone, Debug)]
pub struct PartitionMasses {
    pub(crate) tracked: Vec<usize>,
    pub(crate) masses: FxHashMap<PartitionKey, BigUint>,
    pub(crate) denominator: BigUint,
    pub(crate) work: u64,
}

impl PartitionMasses {
    pub(crate) fn from_masses<M: Mass>(
        tracked: Vec<usize>,
        masses: FxHashMap<PartitionKey, M>,
        denominator: BigUint,
        work: u64,
    ) -> Self {
        PartitionMasses {
            tracked,
            masses: masses.into_iter().map(|(k, m)| (k, m.into_big())).collect(),
            denominator,
            work,
        }
    }

    pub fn tracked(&self) -> &[usize] {
        &self.tracked
    }

    pub fn work(&self) -> u64 {
        self.work
    }

    fn slot(&self, v: usize) -> usize {
        self.tracked
            .iter()
            .position(|&t| t == v)
            .unwrap_or_else(|| panic!("vertex {v} is not tracked"))
    }

    /// Probability that the partition satisfies all constraints.
    pub fn probability(
        &self,
        positive: &[(usize, usize)],
        negative: &[(usize, usize)],
    ) -> Rational {
        let pos: Vec<(usize, usize)> = positive
            .iter()
            .map(|&(x, y)| (self.slot(x), self.slot(y)))
            .collect();
        let neg: Vec<(usize, usize)> = negative
            .iter()
            .map(|&(x, y)| (self.slot(x), self.slot(y)))
            .collect();
        let mut total = BigUint::zero();
        for (&key, mass) in &self.masses {
            let ok = pos
                .iter()
                .all(|&(a, b)| label_of(key, a) == label_of(key, b))
                && neg
                    .iter()
                    .all(|&(a, b)| label_of(key, a) != label_of(key, b));
            if ok {
                total += mass;
            }
        }
        Rational::new(BigInt::from(total), BigInt::from(self.denominator.clone()))
    }

    pub fn connected(&self, x: usize, y: usize) -> Rational {
        self.probability(&[(x, y)], &[])
    }

    /// Sum of all masses over the denominator; 1 for a correct engine.
    pub fn total(&self) -> Rational {
        let sum: BigUint = self.masses.values().sum();
        Rational::new(BigInt::from(sum), BigInt::from(self.denominator.clone()))
    }
}

/// Relabels `labels` in place so blocks are numbered by first appearance.
pub(crate) fn canonicalize(labels: &mut [u8]) {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    for l in labels.iter_mut() {
        if map[*l as usize] == u8::MAX {
            map[*l as usize] = next;
            next += 1;
        }
        *l = map[*l as usize];
    }
}
