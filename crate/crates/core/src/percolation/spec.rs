use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};

/// An event given as a conjunction of pairwise constraints: every positive
/// pair joined by open edges and every negative pair not joined. With a
/// restriction only edges in the mask are read; the others are marginalized.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConnectivitySpec {
    pub positive: Vec<(usize, usize)>,
    pub negative: Vec<(usize, usize)>,
    pub restriction: Option<EdgeSet>,
}

impl ConnectivitySpec {
    /// The event `x ~ y`.
    pub fn connected(x: usize, y: usize) -> Self {
        ConnectivitySpec {
            positive: vec![(x, y)],
            ..Default::default()
        }
    }

    pub fn and_connected(mut self, x: usize, y: usize) -> Self {
        self.positive.push((x, y));
        self
    }

    pub fn and_disconnected(mut self, x: usize, y: usize) -> Self {
        self.negative.push((x, y));
        self
    }

    pub fn restricted_to(mut self, edges: EdgeSet) -> Self {
        self.restriction = Some(edges);
        self
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        for &(x, y) in self.positive.iter().chain(&self.negative) {
            g.check_vertex(x)?;
            g.check_vertex(y)?;
        }
        if let Some(mask) = &self.restriction {
            if mask.universe() != g.edge_count() {
                return Err(Error::InvalidGraph(format!(
                    "restriction mask over {} edges for a graph with {} edges",
                    mask.universe(),
                    g.edge_count()
                )));
            }
        }
        Ok(())
    }

    /// Distinct vertices mentioned by the constraints, in order of appearance.
    pub fn tracked_vertices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for &(x, y) in self.positive.iter().chain(&self.negative) {
            for v in [x, y] {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }

    /// Edges the event reads.
    pub fn effective_edges(&self, g: &Graph) -> Vec<usize> {
        match &self.restriction {
            Some(mask) => mask.iter().collect(),
            None => (0..g.edge_count()).collect(),
        }
    }
}
