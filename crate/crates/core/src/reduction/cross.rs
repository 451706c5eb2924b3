use super::split::BunkbedSplit;
use crate::config::{Engine, EngineConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::percolation::{partition_masses, Weight};
use crate::rational::{self, Rational};

/// The six probabilities that determine `P_F(x ∼ y)` for `x` in `G` and `y`
/// in `H`: connections of `x` to `v⁻`, `v⁺` and both inside `G`, and of `y`
/// inside `H₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossSideTerms {
    pub g_minus: Rational,
    pub g_plus: Rational,
    pub g_both: Rational,
    pub h0_minus: Rational,
    pub h0_plus: Rational,
    pub h0_both: Rational,
}

impl CrossSideTerms {
    /// All terms are probabilities and each joint term is at most both of
    /// its marginals.
    pub fn is_consistent(&self) -> bool {
        let sides = [
            (&self.g_minus, &self.g_plus, &self.g_both),
            (&self.h0_minus, &self.h0_plus, &self.h0_both),
        ];
        sides.iter().all(|(m, p, both)| {
            [m, p, both].iter().all(|r| rational::is_probability(r)) && both <= m && both <= p
        })
    }
}

/// Inclusion-exclusion over the two ways through the cut:
/// `g⁻·h₀⁻ + g⁺·h₀⁺ − g±·h₀±`.
pub fn cross_side_probability(terms: &CrossSideTerms) -> Rational {
    &terms.g_minus * &terms.h0_minus + &terms.g_plus * &terms.h0_plus
        - &terms.g_both * &terms.h0_both
}

/// `(P(x ∼ a), P(x ∼ b), P(x ∼ a and x ∼ b))` over the listed edges, with one
/// engine run. Returns the work spent as well.
pub(crate) fn joint_terms(
    g: &Graph,
    w: &Weight,
    edges: &[usize],
    x: usize,
    a: usize,
    b: usize,
    engine: Engine,
    cfg: &EngineConfig,
) -> Result<(Rational, Rational, Rational, u64)> {
    let mut tracked = vec![x];
    for t in [a, b] {
        if !tracked.contains(&t) {
            tracked.push(t);
        }
    }
    let pm = partition_masses(g, w, edges, &tracked, engine, cfg)?;
    Ok((
        pm.connected(x, a),
        pm.connected(x, b),
        pm.probability(&[(x, a), (x, b)], &[]),
        pm.work(),
    ))
}

/// The six terms by direct computation on `G` and `H₀`. `x` is a vertex of
/// `G`'s total graph and `y` one of `H`'s.
pub fn cross_side_terms(
    bs: &BunkbedSplit,
    mu: &Weight,
    x: usize,
    y: usize,
    engine: Engine,
    cfg: &EngineConfig,
) -> Result<CrossSideTerms> {
    mu.check_graph(bs.whole.total())?;
    bs.g.total().check_vertex(x)?;
    bs.h0.check_vertex(y)?;
    let g = bs.g.total();
    let g_weight = bs.g_embedding.restrict(mu);
    let g_edges: Vec<usize> = (0..g.edge_count()).collect();
    let (gm, gp) = bs.g_cut();
    let (g_minus, g_plus, g_both, _) = joint_terms(g, &g_weight, &g_edges, x, gm, gp, engine, cfg)?;
    let h0_weight = bs.h0_embedding.restrict(mu);
    let h0_edges: Vec<usize> = (0..bs.h0.edge_count()).collect();
    let (hm, hp) = bs.h_cut();
    let (h0_minus, h0_plus, h0_both, _) =
        joint_terms(&bs.h0, &h0_weight, &h0_edges, y, hm, hp, engine, cfg)?;
    let terms = CrossSideTerms {
        g_minus,
        g_plus,
        g_both,
        h0_minus,
        h0_plus,
        h0_both,
    };
    if !terms.is_consistent() {
        return Err(Error::InvalidWeight("inconsistent cross-side terms".into()));
    }
    Ok(terms)
}
