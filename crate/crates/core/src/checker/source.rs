use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::percolation::SymmetricWeight;
use crate::rational::{self, Rational};

pub const DEFAULT_RANDOM_DENOMINATOR: u64 = 64;

/// Where the symmetric weights of a check come from.
///
/// A symmetric weight on `BB(G)` has one value per base edge and one per
/// post; these `m + n` numbers are its dimensions, base edges first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightSource {
    /// Every point of `values^(m + n)`, first dimension fastest.
    Grid(Vec<Rational>),
    /// `count` weights whose values are `k / denominator` with `k` uniform
    /// in `0..=denominator`, from a ChaCha8 stream seeded with `seed`.
    Random {
        count: usize,
        denominator: u64,
        seed: u64,
    },
    Explicit(Vec<SymmetricWeight>),
}

impl WeightSource {
    /// The grid `{1/4, 1/2, 3/4}`.
    pub fn default_grid() -> Self {
        WeightSource::Grid(vec![
            rational::ratio(1, 4),
            rational::ratio(1, 2),
            rational::ratio(3, 4),
        ])
    }

    pub fn random(count: usize, seed: u64) -> Self {
        WeightSource::Random {
            count,
            denominator: DEFAULT_RANDOM_DENOMINATOR,
            seed,
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            WeightSource::Random { seed, .. } => Some(*seed),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            WeightSource::Grid(values) => {
                if values.is_empty() {
                    return Err(Error::InvalidWeight("empty grid".into()));
                }
                if let Some(bad) = values.iter().find(|v| !rational::is_probability(v)) {
                    return Err(Error::InvalidWeight(format!(
                        "grid value {} is outside [0, 1]",
                        rational::format(bad)
                    )));
                }
                Ok(())
            }
            WeightSource::Random { denominator, .. } if *denominator == 0 => Err(
                Error::InvalidWeight("random denominator must be positive".into()),
            ),
            _ => Ok(()),
        }
    }

    /// Number of weights for `base`, if it fits in a `u64`.
    pub fn len(&self, base: &Graph) -> Option<u64> {
        match self {
            WeightSource::Grid(values) => {
                let dims = (base.edge_count() + base.vertex_count()) as u32;
                (values.len() as u64).checked_pow(dims)
            }
            WeightSource::Random { count, .. } => Some(*count as u64),
            WeightSource::Explicit(list) => Some(list.len() as u64),
        }
    }

    pub fn is_empty(&self, base: &Graph) -> bool {
        self.len(base) == Some(0)
    }

    /// The weights in order. Deterministic for a given source and graph.
    pub fn weights<'a>(
        &'a self,
        base: &'a Graph,
    ) -> Result<Box<dyn Iterator<Item = SymmetricWeight> + Send + 'a>> {
        self.validate()?;
        let m = base.edge_count();
        let dims = m + base.vertex_count();
        let build = move |values: Vec<Rational>| {
            let posts = values[m..].to_vec();
            let mut edges = values;
            edges.truncate(m);
            SymmetricWeight::new(base, edges, posts)
                .expect("values are probabilities of the right shape")
        };
        Ok(match self {
            WeightSource::Grid(values) => {
                let total = self.len(base).ok_or(Error::BoundExceeded {
                    what: "grid points",
                    value: usize::MAX,
                    bound: u64::MAX as usize,
                })?;
                Box::new((0..total).map(move |index| build(grid_point(values, dims, index))))
            }
            WeightSource::Random {
                count,
                denominator,
                seed,
            } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let d = *denominator;
                Box::new((0..*count).map(move |_| {
                    let values = (0..dims)
                        .map(|_| Rational::new(rng.gen_range(0..=d).into(), d.into()))
                        .collect();
                    build(values)
                }))
            }
            WeightSource::Explicit(list) => {
                for w in list {
                    if w.base_values().len() != m || w.post_values().len() != base.vertex_count() {
                        return Err(Error::InvalidWeight(
                            "explicit weight does not fit the graph".into(),
                        ));
                    }
                }
                Box::new(list.iter().cloned())
            }
        })
    }
}

/// Values of grid point `index`, first dimension fastest.
pub(crate) fn grid_point(values: &[Rational], dims: usize, mut index: u64) -> Vec<Rational> {
    let g = values.len() as u64;
    (0..dims)
        .map(|_| {
            let v = values[(index % g) as usize].clone();
            index /= g;
            v
        })
        .collect()
}
