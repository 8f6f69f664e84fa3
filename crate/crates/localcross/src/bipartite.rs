use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

/// A bipartite graph with an explicit side assignment, as needed by the
/// 2-layer recognizers.  `fixed_x_order` pins the left-to-right order of the
/// X layer for the one-sided variant.
#[derive(Debug, Clone)]
pub struct BipartiteInstance {
    pub graph: Graph,
    x_side: Vec<usize>,
    y_side: Vec<usize>,
    side_of: Vec<Side>,
    pub fixed_x_order: Option<Vec<usize>>,
}

impl BipartiteInstance {
    pub fn new(
        graph: Graph,
        x_side: Vec<usize>,
        fixed_x_order: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n = graph.vertex_count();
        let mut side_of = vec![Side::Y; n];
        let mut x_sorted = x_side;
        x_sorted.sort_unstable();
        x_sorted.dedup();
        for &v in &x_sorted {
            if v >= n {
                return Err(Error::invalid(format!("X vertex {v} out of range")));
            }
            side_of[v] = Side::X;
        }
        for e in graph.edges() {
            if side_of[e.u] == side_of[e.v] {
                return Err(Error::invalid(format!(
                    "edge ({},{}) does not cross the bipartition",
                    e.u, e.v
                )));
            }
        }
        if let Some(order) = &fixed_x_order {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != x_sorted {
                return Err(Error::invalid(
                    "fixed_x_order is not a permutation of the X side".to_string(),
                ));
            }
        }
        let y_side: Vec<usize> = (0..n).filter(|&v| side_of[v] == Side::Y).collect();
        Ok(BipartiteInstance { graph, x_side: x_sorted, y_side, side_of, fixed_x_order })
    }

    /// Derive the sides from a proper 2-coloring; in every component the
    /// smallest vertex lands on the X side.  Fails on odd cycles.
    pub fn from_graph(graph: Graph) -> Result<Self> {
        let coloring = graph
            .bipartition()
            .ok_or_else(|| Error::invalid("graph is not bipartite".to_string()))?;
        let x: Vec<usize> = (0..graph.vertex_count()).filter(|&v| coloring[v] == 0).collect();
        BipartiteInstance::new(graph, x, None)
    }

    pub fn x_side(&self) -> &[usize] {
        &self.x_side
    }

    pub fn y_side(&self) -> &[usize] {
        &self.y_side
    }

    pub fn side(&self, v: usize) -> Side {
        self.side_of[v]
    }

    /// The X endpoint of an edge.
    pub fn x_end(&self, e: crate::graph::Edge) -> usize {
        if self.side_of[e.u] == Side::X {
            e.u
        } else {
            e.v
        }
    }

    pub fn y_end(&self, e: crate::graph::Edge) -> usize {
        if self.side_of[e.u] == Side::Y {
            e.u
        } else {
            e.v
        }
    }

    pub fn with_order(mut self, order: Vec<usize>) -> Result<Self> {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != self.x_side {
            return Err(Error::invalid(
                "fixed_x_order is not a permutation of the X side".to_string(),
            ));
        }
        self.fixed_x_order = Some(order);
        Ok(self)
    }
}
