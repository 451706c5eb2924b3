use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BunkbedEdge, BunkbedGraph, Graph};
use crate::rational::{self, Rational};

/// Per-edge open probability `μ(e)`, indexed by global edge index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    values: Vec<Rational>,
}

impl Weight {
    pub fn new(graph: &Graph, values: Vec<Rational>) -> Result<Self> {
        if values.len() != graph.edge_count() {
            return Err(Error::InvalidWeight(format!(
                "{} values for a graph with {} edges",
                values.len(),
                graph.edge_count()
            )));
        }
        check_range(&values)?;
        Ok(Weight { values })
    }

    pub fn uniform(graph: &Graph, p: Rational) -> Result<Self> {
        Weight::new(graph, vec![p; graph.edge_count()])
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, edge: usize) -> &Rational {
        &self.values[edge]
    }

    pub fn edge_count(&self) -> usize {
        self.values.len()
    }

    /// Copy with `μ(edge)` replaced.
    pub fn with_value(&self, edge: usize, value: Rational) -> Result<Self> {
        if edge >= self.values.len() {
            return Err(Error::InvalidWeight(format!("no edge {edge}")));
        }
        check_range(std::slice::from_ref(&value))?;
        let mut values = self.values.clone();
        values[edge] = value;
        Ok(Weight { values })
    }

    /// Weight on a subgraph whose edge `i` is edge `edge_map[i]` here.
    pub fn restrict(&self, edge_map: &[usize]) -> Weight {
        Weight {
            values: edge_map.iter().map(|&e| self.values[e].clone()).collect(),
        }
    }

    pub fn check_graph(&self, graph: &Graph) -> Result<()> {
        if self.values.len() == graph.edge_count() {
            Ok(())
        } else {
            Err(Error::InvalidWeight(format!(
                "weight has {} values but the graph has {} edges",
                self.values.len(),
                graph.edge_count()
            )))
        }
    }
}

fn check_range(values: &[Rational]) -> Result<()> {
    match values.iter().find(|v| !rational::is_probability(v)) {
        Some(bad) => Err(Error::InvalidWeight(format!(
            "value {} is outside [0, 1]",
            rational::format(bad)
        ))),
        None => Ok(()),
    }
}

/// A weight on `BB(G)` that gives both copies of each base edge the same
/// value. Posts are free. Unequal copies cannot be represented.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SymmetricRecord", into = "SymmetricRecord")]
pub struct SymmetricWeight {
    base_values: Vec<Rational>,
    post_values: Vec<Rational>,
}

impl SymmetricWeight {
    pub fn new(
        base: &Graph,
        base_values: Vec<Rational>,
        post_values: Vec<Rational>,
    ) -> Result<Self> {
        if base_values.len() != base.edge_count() || post_values.len() != base.vertex_count() {
            return Err(Error::InvalidWeight(format!(
                "symmetric weight needs {} edge values and {} post values, got {} and {}",
                base.edge_count(),
                base.vertex_count(),
                base_values.len(),
                post_values.len()
            )));
        }
        check_range(&base_values)?;
        check_range(&post_values)?;
        Ok(SymmetricWeight {
            base_values,
            post_values,
        })
    }

    pub fn uniform(base: &Graph, p: Rational) -> Result<Self> {
        SymmetricWeight::new(
            base,
            vec![p.clone(); base.edge_count()],
            vec![p; base.vertex_count()],
        )
    }

    pub fn base_values(&self) -> &[Rational] {
        &self.base_values
    }

    pub fn post_values(&self) -> &[Rational] {
        &self.post_values
    }

    pub fn with_post(&self, x: usize, value: Rational) -> Result<Self> {
        check_range(std::slice::from_ref(&value))?;
        let mut out = self.clone();
        out.post_values[x] = value;
        Ok(out)
    }

    /// The induced weight on the total graph of `bb`.
    pub fn to_weight(&self, bb: &BunkbedGraph) -> Weight {
        assert_eq!(self.base_values.len(), bb.base().edge_count());
        assert_eq!(self.post_values.len(), bb.base().vertex_count());
        let values = (0..bb.total().edge_count())
            .map(|i| match bb.edge_kind(i) {
                BunkbedEdge::Minus(e) | BunkbedEdge::Plus(e) => self.base_values[e].clone(),
                BunkbedEdge::Post(x) => self.post_values[x].clone(),
            })
            .collect();
        Weight { values }
    }

    /// Reads a weight on `BB(G)` back as symmetric, if it is.
    pub fn from_weight(bb: &BunkbedGraph, w: &Weight) -> Option<Self> {
        let m = bb.base().edge_count();
        let n = bb.base().vertex_count();
        let minus = &w.values()[..m];
        let plus = &w.values()[m..2 * m];
        if minus != plus {
            return None;
        }
        Some(SymmetricWeight {
            base_values: minus.to_vec(),
            post_values: w.values()[2 * m..2 * m + n].to_vec(),
        })
    }
}

/// JSON shape of a symmetric weight: `{"edges": [...], "posts": [...]}`.
#[derive(Clone, Serialize, Deserialize)]
struct SymmetricRecord {
    #[serde(with = "rational::serde_str_vec")]
    edges: Vec<Rational>,
    #[serde(with = "rational::serde_str_vec")]
    posts: Vec<Rational>,
}

impl From<SymmetricWeight> for SymmetricRecord {
    fn from(w: SymmetricWeight) -> Self {
        SymmetricRecord {
            edges: w.base_values,
            posts: w.post_values,
        }
    }
}

impl TryFrom<SymmetricRecord> for SymmetricWeight {
    type Error = Error;

    fn try_from(r: SymmetricRecord) -> Result<Self> {
        check_range(&r.edges)?;
        check_range(&r.posts)?;
        Ok(SymmetricWeight {
            base_values: r.edges,
            post_values: r.posts,
        })
    }
}
