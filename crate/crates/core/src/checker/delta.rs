use serde::{Deserialize, Serialize};

use crate::config::EngineConfig;
use crate::error::Result;
use crate::graph::{BunkbedVertex, Graph};
use crate::percolation::SymmetricWeight;
use crate::rational::{self, Rational};
use crate::reduction::two_point_probability_symmetric;

/// `P(x⁻ ∼ y⁻) − P(x⁻ ∼ y⁺)` for one symmetric weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BunkbedDelta {
    #[serde(skip)]
    pub base: Graph,
    pub x: usize,
    pub y: usize,
    pub weight: SymmetricWeight,
    #[serde(with = "rational::serde_str")]
    pub same_layer: Rational,
    #[serde(with = "rational::serde_str")]
    pub cross_layer: Rational,
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
}

impl BunkbedDelta {
    pub fn new(
        base: &Graph,
        weight: &SymmetricWeight,
        x: usize,
        y: usize,
        same_layer: Rational,
        cross_layer: Rational,
    ) -> Self {
        BunkbedDelta {
            base: base.clone(),
            x,
            y,
            weight: weight.clone(),
            delta: &same_layer - &cross_layer,
            same_layer,
            cross_layer,
        }
    }
}

/// Both probabilities by decomposition.
pub fn bunkbed_delta(
    base: &Graph,
    w: &SymmetricWeight,
    x: usize,
    y: usize,
    cfg: &EngineConfig,
) -> Result<BunkbedDelta> {
    base.check_vertex(x)?;
    base.check_vertex(y)?;
    let xm = BunkbedVertex::minus(x);
    let same = two_point_probability_symmetric(base, w, xm, BunkbedVertex::minus(y), cfg)?.value;
    let cross = two_point_probability_symmetric(base, w, xm, BunkbedVertex::plus(y), cfg)?.value;
    Ok(BunkbedDelta::new(base, w, x, y, same, cross))
}
