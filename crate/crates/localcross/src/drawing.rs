//! Drawing types and the pairwise crossing counters used to verify
//! certificates.  The counters here are deliberately simple (O(m^2) over edge
//! pairs); the solvers keep their own incremental bookkeeping, and agreement
//! between the two routes is what the test suites check.

use crate::bipartite::BipartiteInstance;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use serde::{Deserialize, Serialize};

/// 2-layer drawing: a left-to-right order for each layer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoLayerDrawing {
    pub x_order: Vec<usize>,
    pub y_order: Vec<usize>,
}

/// Circular drawing: the clockwise cyclic order of all vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircularDrawing {
    pub cycle: Vec<usize>,
}

/// Linear vertex order, used for bandwidth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearLayout {
    pub order: Vec<usize>,
}

/// How crossings are charged in the weighted 2-layer variant: either each
/// crossing of e adds the other edge's weight to e's load, or it adds the
/// product of both weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    Sum,
    Product,
}

fn positions(order: &[usize], n: usize, what: &str) -> Result<Vec<usize>> {
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n {
            return Err(Error::invalid(format!("{what}: vertex {v} out of range")));
        }
        if pos[v] != usize::MAX {
            return Err(Error::invalid(format!("{what}: vertex {v} appears twice")));
        }
        pos[v] = i;
    }
    Ok(pos)
}

impl TwoLayerDrawing {
    /// Checks the drawing is a permutation pair matching the instance sides.
    pub fn validate(&self, inst: &BipartiteInstance) -> Result<()> {
        let n = inst.graph.vertex_count();
        let mut xs = self.x_order.clone();
        xs.sort_unstable();
        if xs != inst.x_side() {
            return Err(Error::invalid("x_order is not a permutation of the X side"));
        }
        let mut ys = self.y_order.clone();
        ys.sort_unstable();
        if ys != inst.y_side() {
            return Err(Error::invalid("y_order is not a permutation of the Y side"));
        }
        positions(&self.x_order, n, "x_order")?;
        positions(&self.y_order, n, "y_order")?;
        Ok(())
    }
}

impl CircularDrawing {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        if self.cycle.len() != n {
            return Err(Error::invalid(format!(
                "cycle lists {} vertices, graph has {n}",
                self.cycle.len()
            )));
        }
        positions(&self.cycle, n, "cycle")?;
        Ok(())
    }

    /// Canonical representative of the rotation/reflection class: smallest
    /// vertex first, then the lexicographically smaller direction.
    pub fn canonicalize(&self) -> CircularDrawing {
        if self.cycle.is_empty() {
            return self.clone();
        }
        let n = self.cycle.len();
        let start = (0..n).min_by_key(|&i| self.cycle[i]).unwrap();
        let fwd: Vec<usize> = (0..n).map(|i| self.cycle[(start + i) % n]).collect();
        let bwd: Vec<usize> = (0..n).map(|i| self.cycle[(start + n - i) % n]).collect();
        CircularDrawing { cycle: if fwd <= bwd { fwd } else { bwd } }
    }
}

/// Do edges `e` and `f` cross in the 2-layer drawing?  Edges sharing an
/// endpoint never cross; otherwise they cross exactly when the X order and
/// the Y order of their endpoints disagree.
pub fn two_layer_cross(
    inst: &BipartiteInstance,
    d: &TwoLayerDrawing,
    e: Edge,
    f: Edge,
) -> Result<bool> {
    for edge in [e, f] {
        if inst.graph.edge_id(edge.u, edge.v).is_none() {
            return Err(Error::invalid(format!("unknown edge ({},{})", edge.u, edge.v)));
        }
    }
    let n = inst.graph.vertex_count();
    let px = positions(&d.x_order, n, "x_order")?;
    let py = positions(&d.y_order, n, "y_order")?;
    Ok(two_layer_cross_pos(inst, &px, &py, e, f))
}

fn two_layer_cross_pos(
    inst: &BipartiteInstance,
    px: &[usize],
    py: &[usize],
    e: Edge,
    f: Edge,
) -> bool {
    let (ex, ey) = (inst.x_end(e), inst.y_end(e));
    let (fx, fy) = (inst.x_end(f), inst.y_end(f));
    if ex == fx || ey == fy {
        return false;
    }
    (px[ex] < px[fx]) != (py[ey] < py[fy])
}

/// Crossing count per edge id (unit weights).
pub fn two_layer_crossings_per_edge(
    inst: &BipartiteInstance,
    d: &TwoLayerDrawing,
) -> Result<Vec<usize>> {
    d.validate(inst)?;
    let n = inst.graph.vertex_count();
    let px = positions(&d.x_order, n, "x_order")?;
    let py = positions(&d.y_order, n, "y_order")?;
    let edges = inst.graph.edges();
    let mut counts = vec![0usize; edges.len()];
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if two_layer_cross_pos(inst, &px, &py, edges[i], edges[j]) {
                counts[i] += 1;
                counts[j] += 1;
            }
        }
    }
    Ok(counts)
}

/// Weighted crossing load per edge id.  `Sum` charges the crossing partner's
/// weight, `Product` the product of both weights.
pub fn two_layer_weighted_load(
    inst: &BipartiteInstance,
    d: &TwoLayerDrawing,
    mode: WeightMode,
) -> Result<Vec<u64>> {
    d.validate(inst)?;
    let n = inst.graph.vertex_count();
    let px = positions(&d.x_order, n, "x_order")?;
    let py = positions(&d.y_order, n, "y_order")?;
    let edges = inst.graph.edges();
    let w = inst.graph.weights();
    let mut load = vec![0u64; edges.len()];
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if two_layer_cross_pos(inst, &px, &py, edges[i], edges[j]) {
                match mode {
                    WeightMode::Sum => {
                        load[i] += w[j];
                        load[j] += w[i];
                    }
                    WeightMode::Product => {
                        let p = w[i] * w[j];
                        load[i] += p;
                        load[j] += p;
                    }
                }
            }
        }
    }
    Ok(load)
}

pub fn is_two_layer_k_planar(
    inst: &BipartiteInstance,
    d: &TwoLayerDrawing,
    k: usize,
) -> Result<bool> {
    Ok(two_layer_crossings_per_edge(inst, d)?.into_iter().all(|c| c <= k))
}

/// Does edge `e` pierce the chord spanned by the (not necessarily adjacent)
/// vertex pair `pair` in the circular drawing?  True exactly when the two
/// point pairs interleave on the circle.
pub fn circular_pierce(
    g: &Graph,
    d: &CircularDrawing,
    e: Edge,
    pair: (usize, usize),
) -> Result<bool> {
    if g.edge_id(e.u, e.v).is_none() {
        return Err(Error::invalid(format!("unknown edge ({},{})", e.u, e.v)));
    }
    d.validate(g)?;
    let pos = positions(&d.cycle, g.vertex_count(), "cycle")?;
    if pair.0 >= g.vertex_count() || pair.1 >= g.vertex_count() || pair.0 == pair.1 {
        return Err(Error::invalid(format!("bad chord pair ({},{})", pair.0, pair.1)));
    }
    Ok(chords_interleave(pos[e.u], pos[e.v], pos[pair.0], pos[pair.1]))
}

pub(crate) fn chords_interleave(a0: usize, a1: usize, b0: usize, b1: usize) -> bool {
    if a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1 {
        return false;
    }
    let (a0, a1) = if a0 < a1 { (a0, a1) } else { (a1, a0) };
    let (b0, b1) = if b0 < b1 { (b0, b1) } else { (b1, b0) };
    (a0 < b0 && b0 < a1 && a1 < b1) || (b0 < a0 && a0 < b1 && b1 < a1)
}

/// Crossing count per edge id in a circular drawing.
pub fn circular_crossings_per_edge(g: &Graph, d: &CircularDrawing) -> Result<Vec<usize>> {
    d.validate(g)?;
    let pos = positions(&d.cycle, g.vertex_count(), "cycle")?;
    let edges = g.edges();
    let mut counts = vec![0usize; edges.len()];
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (e, f) = (edges[i], edges[j]);
            if chords_interleave(pos[e.u], pos[e.v], pos[f.u], pos[f.v]) {
                counts[i] += 1;
                counts[j] += 1;
            }
        }
    }
    Ok(counts)
}

pub fn is_outer_k_planar(g: &Graph, d: &CircularDrawing, k: usize) -> Result<bool> {
    Ok(circular_crossings_per_edge(g, d)?.into_iter().all(|c| c <= k))
}

/// Maximum stretch |pos(u) - pos(v)| over the edges, for a full layout.
pub fn layout_bandwidth(g: &Graph, layout: &LinearLayout) -> Result<usize> {
    let pos = positions(&layout.order, g.vertex_count(), "layout")?;
    if layout.order.len() != g.vertex_count() {
        return Err(Error::invalid("layout does not place every vertex"));
    }
    Ok(g.edges()
        .iter()
        .map(|e| pos[e.u].abs_diff(pos[e.v]))
        .max()
        .unwrap_or(0))
}
