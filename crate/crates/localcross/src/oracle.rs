//! Brute-force reference solvers.
//!
//! These enumerate drawings outright, with only pruning that is obviously
//! sound: placing more vertices never un-crosses a pair that is already
//! fixed, so a partial drawing whose worst edge is over budget can be
//! abandoned.  They share no code with the dynamic programs they are used to
//! check.  All of them scan candidates in ascending vertex order, so the
//! first drawing found is reproducible run to run.

use crate::bipartite::BipartiteInstance;
use crate::drawing::{chords_interleave, CircularDrawing, LinearLayout, TwoLayerDrawing, WeightMode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use itertools::Itertools;

/// Size caps.  The enumerations behind these oracles are factorial, so a
/// call refuses instances past the cap instead of hanging.
#[derive(Debug, Clone)]
pub struct OracleLimits {
    /// Largest free layer for the fixed-order 2-layer oracle.
    pub max_one_sided_y: usize,
    /// Largest total vertex count for the free 2-layer oracle.
    pub max_two_sided_n: usize,
    /// Largest vertex count for the circular oracle.
    pub max_outer_n: usize,
    /// Largest vertex count for the bandwidth oracle.
    pub max_bandwidth_n: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_one_sided_y: 9,
            max_two_sided_n: 10,
            max_outer_n: 9,
            max_bandwidth_n: 10,
        }
    }
}

/// Exhaustive DFS over the free layer.  Charges per crossing are unit unless
/// a weight mode is given.
struct YDfs<'a> {
    inst: &'a BipartiteInstance,
    px: &'a [usize],
    k: u64,
    mode: Option<WeightMode>,
    loads: Vec<u64>,
    used: Vec<bool>,
    order: Vec<usize>,
    placed_edges: Vec<usize>,
}

impl YDfs<'_> {
    fn charge(&self, e: usize, f: usize) -> (u64, u64) {
        let w = self.inst.graph.weights();
        match self.mode {
            None => (1, 1),
            Some(WeightMode::Sum) => (w[f], w[e]),
            Some(WeightMode::Product) => {
                let p = w[e] * w[f];
                (p, p)
            }
        }
    }

    fn dfs(&mut self) -> bool {
        if self.order.len() == self.inst.y_side().len() {
            return true;
        }
        for idx in 0..self.inst.y_side().len() {
            let y = self.inst.y_side()[idx];
            if self.used[y] {
                continue;
            }
            // Crossings between the new vertex's edges and everything placed
            // are final from here on, so the budget check below can prune.
            let mut applied: Vec<(usize, u64)> = Vec::new();
            let mut ok = true;
            'edges: for &(xf, fid) in self.inst.graph.incident(y) {
                for pe in 0..self.placed_edges.len() {
                    let eid = self.placed_edges[pe];
                    let xe = self.inst.x_end(self.inst.graph.edges()[eid]);
                    if self.px[xe] > self.px[xf] {
                        let (de, df) = self.charge(eid, fid);
                        self.loads[eid] += de;
                        applied.push((eid, de));
                        self.loads[fid] += df;
                        applied.push((fid, df));
                        if self.loads[eid] > self.k || self.loads[fid] > self.k {
                            ok = false;
                            break 'edges;
                        }
                    }
                }
            }
            if ok {
                self.used[y] = true;
                self.order.push(y);
                let before = self.placed_edges.len();
                for &(_, fid) in self.inst.graph.incident(y) {
                    self.placed_edges.push(fid);
                }
                if self.dfs() {
                    return true;
                }
                self.placed_edges.truncate(before);
                self.order.pop();
                self.used[y] = false;
            }
            for &(id, d) in &applied {
                self.loads[id] -= d;
            }
        }
        false
    }
}

fn run_y_dfs(
    inst: &BipartiteInstance,
    x_order: Vec<usize>,
    k: u64,
    mode: Option<WeightMode>,
) -> Option<TwoLayerDrawing> {
    let n = inst.graph.vertex_count();
    let mut px = vec![usize::MAX; n];
    for (i, &x) in x_order.iter().enumerate() {
        px[x] = i;
    }
    let mut search = YDfs {
        inst,
        px: &px,
        k,
        mode,
        loads: vec![0; inst.graph.edge_count()],
        used: vec![false; n],
        order: Vec::new(),
        placed_edges: Vec::new(),
    };
    if search.dfs() {
        let y_order = search.order;
        Some(TwoLayerDrawing { x_order, y_order })
    } else {
        None
    }
}

fn fixed_x_order(inst: &BipartiteInstance) -> Vec<usize> {
    inst.fixed_x_order.clone().unwrap_or_else(|| inst.x_side().to_vec())
}

/// Fixed X order, every Y permutation: first drawing with all edges crossed
/// at most `k` times, scanning Y candidates in ascending order.
pub fn one_sided_oracle(
    inst: &BipartiteInstance,
    k: usize,
    limits: &OracleLimits,
) -> Result<Option<TwoLayerDrawing>> {
    if inst.y_side().len() > limits.max_one_sided_y {
        return Err(Error::resource(format!(
            "one-sided oracle capped at {} free vertices",
            limits.max_one_sided_y
        )));
    }
    Ok(run_y_dfs(inst, fixed_x_order(inst), k as u64, None))
}

/// Weighted variant: each edge's accumulated charge must stay within `k`.
pub fn one_sided_weighted_oracle(
    inst: &BipartiteInstance,
    k: u64,
    mode: WeightMode,
    limits: &OracleLimits,
) -> Result<Option<TwoLayerDrawing>> {
    if inst.y_side().len() > limits.max_one_sided_y {
        return Err(Error::resource(format!(
            "one-sided oracle capped at {} free vertices",
            limits.max_one_sided_y
        )));
    }
    Ok(run_y_dfs(inst, fixed_x_order(inst), k, Some(mode)))
}

/// Both layers free.  X orders are enumerated lexicographically, keeping one
/// representative per reflection class (first entry smaller than the last);
/// reversing both layers together preserves every crossing, so nothing is
/// lost.
pub fn two_sided_oracle(
    inst: &BipartiteInstance,
    k: usize,
    limits: &OracleLimits,
) -> Result<Option<TwoLayerDrawing>> {
    if inst.graph.vertex_count() > limits.max_two_sided_n {
        return Err(Error::resource(format!(
            "two-sided oracle capped at {} vertices",
            limits.max_two_sided_n
        )));
    }
    let xs = inst.x_side().to_vec();
    for perm in xs.iter().copied().permutations(xs.len()) {
        if perm.len() >= 2 && perm[0] > perm[perm.len() - 1] {
            continue;
        }
        if let Some(d) = run_y_dfs(inst, perm, k as u64, None) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

struct OuterDfs<'a> {
    g: &'a Graph,
    k: usize,
    pos: Vec<usize>,
    cycle: Vec<usize>,
    loads: Vec<usize>,
    placed_edges: Vec<usize>,
}

impl OuterDfs<'_> {
    fn dfs(&mut self) -> bool {
        let n = self.g.vertex_count();
        if self.cycle.len() == n {
            // One representative per reflection class.
            return self.cycle[1] < self.cycle[n - 1];
        }
        let p = self.cycle.len();
        for v in 1..n {
            if self.pos[v] != usize::MAX {
                continue;
            }
            // Placed vertices sit on a circular arc in placement order, so
            // crossings among fully placed edges are already final.
            let mut applied: Vec<usize> = Vec::new();
            let mut ok = true;
            'edges: for &(u, fid) in self.g.incident(v) {
                if self.pos[u] == usize::MAX {
                    continue;
                }
                for pe in 0..self.placed_edges.len() {
                    let eid = self.placed_edges[pe];
                    let e = self.g.edges()[eid];
                    if chords_interleave(self.pos[e.u], self.pos[e.v], self.pos[u], p) {
                        self.loads[eid] += 1;
                        applied.push(eid);
                        self.loads[fid] += 1;
                        applied.push(fid);
                        if self.loads[eid] > self.k || self.loads[fid] > self.k {
                            ok = false;
                            break 'edges;
                        }
                    }
                }
            }
            if ok {
                self.pos[v] = p;
                self.cycle.push(v);
                let before = self.placed_edges.len();
                // Any edge of v to an earlier vertex is now fully placed.
                for &(u, fid) in self.g.incident(v) {
                    if self.pos[u] != usize::MAX && u != v && self.pos[u] < p {
                        self.placed_edges.push(fid);
                    }
                }
                if self.dfs() {
                    return true;
                }
                self.placed_edges.truncate(before);
                self.cycle.pop();
                self.pos[v] = usize::MAX;
            }
            for &id in &applied {
                self.loads[id] -= 1;
            }
        }
        false
    }
}

/// Every circular order with vertex 0 first (rotation) and one direction per
/// reflection class: first drawing with all edges crossed at most `k` times.
pub fn outer_oracle(
    g: &Graph,
    k: usize,
    limits: &OracleLimits,
) -> Result<Option<CircularDrawing>> {
    let n = g.vertex_count();
    if n > limits.max_outer_n {
        return Err(Error::resource(format!(
            "outer oracle capped at {} vertices",
            limits.max_outer_n
        )));
    }
    if n <= 3 {
        // Fewer than four vertices cannot produce a crossing.
        return Ok(Some(CircularDrawing { cycle: (0..n).collect() }));
    }
    let mut search = OuterDfs {
        g,
        k,
        pos: vec![usize::MAX; n],
        cycle: Vec::new(),
        loads: vec![0; g.edge_count()],
        placed_edges: Vec::new(),
    };
    search.pos[0] = 0;
    search.cycle.push(0);
    if search.dfs() {
        Ok(Some(CircularDrawing { cycle: search.cycle }))
    } else {
        Ok(None)
    }
}

struct BwDfs<'a> {
    g: &'a Graph,
    b: usize,
    pos: Vec<usize>,
    order: Vec<usize>,
    placed_deg: Vec<usize>,
}

impl BwDfs<'_> {
    fn dfs(&mut self) -> bool {
        let n = self.g.vertex_count();
        let p = self.order.len();
        if p == n {
            return true;
        }
        'cand: for v in 0..n {
            if self.pos[v] != usize::MAX {
                continue;
            }
            for &(u, _) in self.g.incident(v) {
                if self.pos[u] != usize::MAX && p - self.pos[u] > self.b {
                    continue 'cand;
                }
            }
            self.pos[v] = p;
            self.order.push(v);
            for &(u, _) in self.g.incident(v) {
                self.placed_deg[u] += 1;
            }
            // The position falling out of reach must have no unplaced
            // neighbors left, or every completion overshoots the bound.
            let expired_ok = if p >= self.b {
                let w = self.order[p - self.b];
                self.placed_deg[w] == self.g.degree(w)
            } else {
                true
            };
            if expired_ok && self.dfs() {
                return true;
            }
            for &(u, _) in self.g.incident(v) {
                self.placed_deg[u] -= 1;
            }
            self.order.pop();
            self.pos[v] = usize::MAX;
        }
        false
    }
}

/// First layout (ascending candidate scan) with every edge stretched at most
/// `b` positions, if one exists.
pub fn bandwidth_at_most(
    g: &Graph,
    b: usize,
    limits: &OracleLimits,
) -> Result<Option<LinearLayout>> {
    let n = g.vertex_count();
    if n > limits.max_bandwidth_n {
        return Err(Error::resource(format!(
            "bandwidth oracle capped at {} vertices",
            limits.max_bandwidth_n
        )));
    }
    let mut search = BwDfs {
        g,
        b,
        pos: vec![usize::MAX; n],
        order: Vec::new(),
        placed_deg: vec![0; n],
    };
    if search.dfs() {
        Ok(Some(LinearLayout { order: search.order }))
    } else {
        Ok(None)
    }
}

/// Exact bandwidth by growing the bound until a layout fits.
pub fn bandwidth_oracle(g: &Graph, limits: &OracleLimits) -> Result<usize> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(0);
    }
    for b in 0..n {
        if bandwidth_at_most(g, b, limits)?.is_some() {
            return Ok(b);
        }
    }
    unreachable!("bandwidth of an n-vertex graph is below n")
}
