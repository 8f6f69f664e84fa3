//! One-sided 2-layer recognition: the X layer order is fixed, the Y layer
//! order is searched.
//!
//! The solver sweeps the X order left to right with an active window.  Once
//! the part of the window to the right of its leftmost vertex spans at least
//! 2k+1 edges, no edge of that leftmost vertex can still be crossed by any
//! later edge in a drawing within budget, so the vertex is frozen and leaves
//! the window.  States record only the Y order restricted to the window
//! together with per-edge crossing budgets, which keeps the table small on
//! bounded-degree inputs.  Weighted budgets (sum or product charging) use the
//! same machinery with larger thresholds.

use crate::bipartite::BipartiteInstance;
use crate::drawing::{
    two_layer_crossings_per_edge, two_layer_weighted_load, TwoLayerDrawing, WeightMode,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::{DpStats, SolverConfig};
use itertools::Itertools;
use std::collections::HashMap;

/// Window scheduling policy for the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowMode {
    /// Freeze the leftmost window vertex as soon as the rest of the window
    /// spans at least 2k+1 edges.
    Dynamic,
    /// Freeze only once the rest of the window holds at least 2k+1 vertices.
    /// Every swept vertex has an edge, so this is a coarsening of
    /// [`WindowMode::Dynamic`] and both schedules accept the same instances.
    FixedVertexCount,
}

/// Result of a one-sided run: certificate plus table statistics.
#[derive(Debug, Clone)]
pub struct OneSidedReport {
    pub drawing: Option<TwoLayerDrawing>,
    pub stats: DpStats,
}

/// A leaf edge removed by the degree reduction, in removal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeafRemoval {
    /// The degree-one endpoint that was detached.
    pub leaf: usize,
    /// Its high-degree neighbor.
    pub anchor: usize,
}

/// Smallest vertex with more than 2k+2 neighbors of degree at least two, if
/// any.  Such a vertex rules out a 2-layer drawing with at most k crossings
/// per edge: order its 2k+3 or more non-leaf neighbors along Y, and the
/// second edge of the middle one must cross at least k+1 of the vertex's own
/// edges.
pub fn degree_obstruction(g: &Graph, k: usize) -> Option<usize> {
    (0..g.vertex_count()).find(|&v| {
        let non_leaf = g.neighbors(v).filter(|&u| g.degree(u) >= 2).count();
        non_leaf > 2 * k + 2
    })
}

/// Detach leaves hanging off high-degree anchors on one side.  While some
/// anchor has degree above 2k+2 and a degree-one neighbor, the edge to the
/// smallest such neighbor is removed.  The leaf vertices stay in the graph
/// (isolated) so all ids are preserved; [`reinsert_leaves`] puts them back
/// into a finished drawing without adding crossings.
pub fn reduce_leaves(
    g: &Graph,
    mut is_anchor: impl FnMut(usize) -> bool,
    k: usize,
) -> (Graph, Vec<LeafRemoval>) {
    let mut deg: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    let mut dropped = vec![false; g.edge_count()];
    let mut removed = Vec::new();
    loop {
        let mut pick = None;
        'anchor: for a in 0..g.vertex_count() {
            if !is_anchor(a) || deg[a] <= 2 * k + 2 {
                continue;
            }
            for &(u, e) in g.incident(a) {
                if !dropped[e] && deg[u] == 1 {
                    pick = Some((a, u, e));
                    break 'anchor;
                }
            }
        }
        match pick {
            Some((a, u, e)) => {
                dropped[e] = true;
                deg[a] -= 1;
                deg[u] -= 1;
                removed.push(LeafRemoval { leaf: u, anchor: a });
            }
            None => break,
        }
    }
    let mut reduced = Graph::new(g.vertex_count());
    for (id, e) in g.edges().iter().enumerate() {
        if !dropped[id] {
            reduced
                .add_weighted_edge(e.u, e.v, g.weight(id))
                .expect("edges of a valid graph remain valid");
        }
    }
    (reduced, removed)
}

/// Put reduced leaves back into a layer order, newest removal first.  Each
/// leaf goes immediately left of the (k+2)-th currently present neighbor of
/// its anchor.  The anchor still has at least 2k+2 other edges at that
/// moment, so any edge crossing the new leaf edge would have to pass k+1
/// anchor edges on one side, which no drawing within budget contains.
pub(crate) fn reinsert_leaves(
    g: &Graph,
    y_order: &mut Vec<usize>,
    removed: &[LeafRemoval],
    k: usize,
) {
    for r in removed.iter().rev() {
        let mut pos: HashMap<usize, usize> = HashMap::new();
        for (i, &y) in y_order.iter().enumerate() {
            pos.insert(y, i);
        }
        let mut nbr: Vec<usize> = g
            .neighbors(r.anchor)
            .filter_map(|u| pos.get(&u).copied())
            .collect();
        nbr.sort_unstable();
        let at = nbr[k + 1];
        y_order.insert(at, r.leaf);
    }
}

/// Smallest window span at X position `i`: the least `l` such that the
/// vertices `x_i..=x_{i+l}` of the instance's X order carry at least 2k+1
/// edges, capped at the remaining length of the order.
pub fn dynamic_window(inst: &BipartiteInstance, k: usize, i: usize) -> Result<usize> {
    let order = default_x_order(inst);
    if i >= order.len() {
        return Err(Error::invalid(format!(
            "window start {} out of range for {} X vertices",
            i,
            order.len()
        )));
    }
    let need = 2 * k + 1;
    let mut edges = 0usize;
    for (l, &x) in order[i..].iter().enumerate() {
        edges += inst.graph.degree(x);
        if edges >= need {
            return Ok(l);
        }
    }
    Ok(order.len() - 1 - i)
}

/// The instance's fixed X order, defaulting to ascending ids.
fn default_x_order(inst: &BipartiteInstance) -> Vec<usize> {
    match &inst.fixed_x_order {
        Some(o) => o.clone(),
        None => inst.x_side().to_vec(),
    }
}

/// Check the far-apart ordering property of a drawing: any two edges whose X
/// endpoints are more than 2k positions apart (counting only X vertices with
/// at least one edge) must have their Y endpoints in the same relative order.
/// Every drawing with at most k crossings per edge satisfies this.
pub fn check_far_edge_order(
    inst: &BipartiteInstance,
    d: &TwoLayerDrawing,
    k: usize,
) -> Result<bool> {
    d.validate(inst)?;
    let n = inst.graph.vertex_count();
    let mut xrank = vec![usize::MAX; n];
    let mut r = 0usize;
    for &x in &d.x_order {
        if inst.graph.degree(x) > 0 {
            xrank[x] = r;
            r += 1;
        }
    }
    let mut ypos = vec![usize::MAX; n];
    for (i, &y) in d.y_order.iter().enumerate() {
        ypos[y] = i;
    }
    let ends: Vec<(usize, usize)> = inst
        .graph
        .edges()
        .iter()
        .map(|&e| (xrank[inst.x_end(e)], ypos[inst.y_end(e)]))
        .collect();
    for (i, &(xe, ye)) in ends.iter().enumerate() {
        for &(xf, yf) in &ends[i + 1..] {
            let (near, far) = if xe <= xf { ((xe, ye), (xf, yf)) } else { ((xf, yf), (xe, ye)) };
            if far.0 > near.0 + 2 * k && far.1 < near.1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Fixed-order recognition with unit crossing budgets.
pub fn solve_one_sided(
    inst: &BipartiteInstance,
    k: usize,
    cfg: &SolverConfig,
) -> Result<Option<TwoLayerDrawing>> {
    Ok(solve_one_sided_full(inst, k, WindowMode::Dynamic, cfg)?.drawing)
}

/// Fixed-order recognition with an explicit window policy and statistics.
pub fn solve_one_sided_full(
    inst: &BipartiteInstance,
    k: usize,
    window: WindowMode,
    cfg: &SolverConfig,
) -> Result<OneSidedReport> {
    if inst.graph.is_weighted() {
        return Err(Error::invalid(
            "weighted instance passed to the unweighted solver; use solve_one_sided_weighted",
        ));
    }
    let mut stats = DpStats::default();
    if degree_obstruction(&inst.graph, k).is_some() {
        return Ok(OneSidedReport { drawing: None, stats });
    }
    let (reduced, removed) = reduce_leaves(
        &inst.graph,
        |v| inst.side(v) == crate::bipartite::Side::X,
        k,
    );
    let x_order = default_x_order(inst);
    let sweep_y = match sweep(&reduced, &x_order, k as u64, None, window, cfg, &mut stats)? {
        Some(order) => order,
        None => return Ok(OneSidedReport { drawing: None, stats }),
    };
    let removed_set: Vec<bool> = {
        let mut s = vec![false; inst.graph.vertex_count()];
        for r in &removed {
            s[r.leaf] = true;
        }
        s
    };
    let mut y_order = sweep_y;
    for &y in inst.y_side() {
        if reduced.degree(y) == 0 && !removed_set[y] {
            y_order.push(y);
        }
    }
    reinsert_leaves(&inst.graph, &mut y_order, &removed, k);
    let drawing = TwoLayerDrawing { x_order, y_order };
    let counts = two_layer_crossings_per_edge(inst, &drawing)?;
    if counts.iter().any(|&c| c > k) {
        return Err(Error::BadCertificate(
            "internal: sweep produced a drawing over budget".into(),
        ));
    }
    Ok(OneSidedReport { drawing: Some(drawing), stats })
}

/// Fixed-order recognition with weighted crossing budgets.  No degree
/// reduction applies: a leaf edge of large weight can be impossible to place.
pub fn solve_one_sided_weighted(
    inst: &BipartiteInstance,
    k: u64,
    mode: WeightMode,
    cfg: &SolverConfig,
) -> Result<Option<TwoLayerDrawing>> {
    Ok(solve_one_sided_weighted_full(inst, k, mode, cfg)?.drawing)
}

/// Weighted recognition with statistics.
pub fn solve_one_sided_weighted_full(
    inst: &BipartiteInstance,
    k: u64,
    mode: WeightMode,
    cfg: &SolverConfig,
) -> Result<OneSidedReport> {
    let mut stats = DpStats::default();
    let x_order = default_x_order(inst);
    let sweep_y = match sweep(
        &inst.graph,
        &x_order,
        k,
        Some(mode),
        WindowMode::Dynamic,
        cfg,
        &mut stats,
    )? {
        Some(order) => order,
        None => return Ok(OneSidedReport { drawing: None, stats }),
    };
    let mut y_order = sweep_y;
    for &y in inst.y_side() {
        if inst.graph.degree(y) == 0 {
            y_order.push(y);
        }
    }
    let drawing = TwoLayerDrawing { x_order, y_order };
    let loads = two_layer_weighted_load(inst, &drawing, mode)?;
    if loads.iter().any(|&c| c > k) {
        return Err(Error::BadCertificate(
            "internal: weighted sweep produced a drawing over budget".into(),
        ));
    }
    Ok(OneSidedReport { drawing: Some(drawing), stats })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum StepKind {
    Base,
    Extend,
    Shrink,
}

#[derive(Debug, Clone)]
struct State {
    /// Window Y vertices left to right.
    order: Vec<u32>,
    /// Crossing budget per tracked edge, parallel to the step's tracked list.
    chi: Vec<u64>,
    /// Index into the previous step's state list.
    parent: usize,
}

struct Step {
    kind: StepKind,
    states: Vec<State>,
}

struct Sweep<'a> {
    g: &'a Graph,
    k: u64,
    mode: Option<WeightMode>,
    /// Sweep X order (vertices with at least one edge).
    xs: Vec<usize>,
    /// Edge id -> sweep position of its X endpoint.
    ex: Vec<usize>,
    /// Edge id -> Y endpoint.
    ey: Vec<usize>,
    /// Prefix sums of degrees along `xs`.
    deg_prefix: Vec<usize>,
    cap: usize,
    created: usize,
}

impl<'a> Sweep<'a> {
    fn charges(&self, old_edge: usize, new_edge: usize) -> (u64, u64) {
        match self.mode {
            None => (1, 1),
            Some(WeightMode::Sum) => (self.g.weight(new_edge), self.g.weight(old_edge)),
            Some(WeightMode::Product) => {
                let p = self.g.weight(old_edge).saturating_mul(self.g.weight(new_edge));
                (p, p)
            }
        }
    }

    fn tracked_edges(&self, a: usize, b: usize) -> Vec<usize> {
        let mut t: Vec<usize> = (0..self.g.edge_count())
            .filter(|&e| self.ex[e] >= a && self.ex[e] <= b)
            .collect();
        t.sort_unstable();
        t
    }

    fn bump(&mut self, added: usize) -> Result<()> {
        self.created += added;
        if self.created > self.cap {
            return Err(Error::resource(format!(
                "state table exceeded cap of {} entries",
                self.cap
            )));
        }
        Ok(())
    }
}

/// Sort, deduplicate and dominance-prune a step's states.  Two states with
/// the same window order where one's budgets are pointwise no larger make the
/// other redundant.
fn compact(states: &mut Vec<State>) {
    states.sort_unstable_by(|s, t| {
        s.order
            .cmp(&t.order)
            .then_with(|| s.chi.cmp(&t.chi))
            .then_with(|| s.parent.cmp(&t.parent))
    });
    states.dedup_by(|s, t| s.order == t.order && s.chi == t.chi);
    let mut keep = vec![true; states.len()];
    let mut i = 0;
    while i < states.len() {
        let mut j = i + 1;
        while j < states.len() && states[j].order == states[i].order {
            j += 1;
        }
        for p in i..j {
            if !keep[p] {
                continue;
            }
            for q in i..j {
                if p == q || !keep[q] {
                    continue;
                }
                // q dominated by p: p's budgets pointwise <= q's.
                if states[p]
                    .chi
                    .iter()
                    .zip(&states[q].chi)
                    .all(|(x, y)| x <= y)
                {
                    keep[q] = false;
                }
            }
        }
        i = j;
    }
    let mut it = keep.iter();
    states.retain(|_| *it.next().unwrap());
}

/// Run the window sweep over `x_order` and return a Y order for the swept
/// (non-isolated) Y vertices, or `None` if no drawing fits the budget.  Also
/// used by the free-order solver to finish off instances with few X vertices
/// by trying every X order.
pub(crate) fn sweep(
    g: &Graph,
    x_order: &[usize],
    k: u64,
    mode: Option<WeightMode>,
    window: WindowMode,
    cfg: &SolverConfig,
    stats: &mut DpStats,
) -> Result<Option<Vec<usize>>> {
    let n = g.vertex_count();
    let xs: Vec<usize> = x_order.iter().copied().filter(|&x| g.degree(x) > 0).collect();
    if xs.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let nx = xs.len();
    let mut xpos = vec![usize::MAX; n];
    for (i, &x) in xs.iter().enumerate() {
        xpos[x] = i;
    }
    let mut ex = vec![usize::MAX; g.edge_count()];
    let mut ey = vec![usize::MAX; g.edge_count()];
    for (id, e) in g.edges().iter().enumerate() {
        if xpos[e.u] != usize::MAX {
            ex[id] = xpos[e.u];
            ey[id] = e.v;
        } else {
            ex[id] = xpos[e.v];
            ey[id] = e.u;
        }
        debug_assert_ne!(ex[id], usize::MAX, "edge with no X endpoint");
    }
    let mut deg_prefix = vec![0usize; nx + 1];
    for (i, &x) in xs.iter().enumerate() {
        deg_prefix[i + 1] = deg_prefix[i] + g.degree(x);
    }
    let mut sw = Sweep {
        g,
        k,
        mode,
        xs,
        ex,
        ey,
        deg_prefix,
        cap: cfg.table_cap,
        created: 0,
    };
    let threshold = k.saturating_mul(2).saturating_add(1);

    // Base step: all orderings of the first vertex's neighborhood.
    let first = sw.xs[0];
    let nbrs: Vec<u32> = {
        let mut v: Vec<u32> = g.neighbors(first).map(|u| u as u32).collect();
        v.sort_unstable();
        v
    };
    let tracked0 = sw.tracked_edges(0, 0);
    if factorial_capped(nbrs.len(), sw.cap) > sw.cap {
        return Err(Error::resource(format!(
            "initial neighborhood of size {} exceeds the state cap",
            nbrs.len()
        )));
    }
    let mut base_states: Vec<State> = nbrs
        .iter()
        .copied()
        .permutations(nbrs.len())
        .map(|order| State { order, chi: vec![0; tracked0.len()], parent: usize::MAX })
        .collect();
    sw.bump(base_states.len())?;
    compact(&mut base_states);
    let mut steps = vec![Step { kind: StepKind::Base, states: base_states }];
    let mut tracked = tracked0;
    stats.peak_states = steps[0].states.len();

    let mut a = 0usize;
    let mut b = 0usize;
    while a < nx {
        debug_assert!(a <= b);
        let shrinkable = b == nx - 1
            || match window {
                WindowMode::Dynamic => {
                    (sw.deg_prefix[b + 1] - sw.deg_prefix[a + 1]) as u64 >= threshold
                }
                WindowMode::FixedVertexCount => (b - a) as u64 >= threshold,
            };
        let prev = steps.last().unwrap();
        let next = if shrinkable {
            let next_tracked = sw.tracked_edges(a + 1, b);
            let step = shrink_step(&sw, prev, &tracked, &next_tracked)?;
            a += 1;
            tracked = next_tracked;
            step
        } else {
            let next_tracked = sw.tracked_edges(a, b + 1);
            let step = match extend_step(&sw, prev, &tracked, &next_tracked, a, b)? {
                Some(s) => s,
                None => {
                    stats.states_created = sw.created;
                    stats.steps = steps.len();
                    return Ok(None);
                }
            };
            b += 1;
            tracked = next_tracked;
            step
        };
        sw.bump(next.states.len())?;
        stats.peak_states = stats.peak_states.max(next.states.len());
        if next.states.is_empty() {
            stats.states_created = sw.created;
            stats.steps = steps.len() + 1;
            return Ok(None);
        }
        steps.push(next);
    }
    stats.states_created = sw.created;
    stats.steps = steps.len();

    Ok(Some(reconstruct(&steps)))
}

/// Freeze the leftmost window vertex: project every state onto the remaining
/// tracked edges and the remaining window Y vertices.
fn shrink_step(
    sw: &Sweep,
    prev: &Step,
    tracked: &[usize],
    next_tracked: &[usize],
) -> Result<Step> {
    let keep_edge: Vec<Option<usize>> = tracked
        .iter()
        .map(|e| next_tracked.binary_search(e).ok())
        .collect();
    let mut stay = vec![false; sw.g.vertex_count()];
    for &e in next_tracked {
        stay[sw.ey[e]] = true;
    }
    let mut out = Vec::with_capacity(prev.states.len());
    for (pi, s) in prev.states.iter().enumerate() {
        let order: Vec<u32> = s.order.iter().copied().filter(|&v| stay[v as usize]).collect();
        let mut chi = vec![0u64; next_tracked.len()];
        for (i, &k) in keep_edge.iter().enumerate() {
            if let Some(j) = k {
                chi[j] = s.chi[i];
            }
        }
        out.push(State { order, chi, parent: pi });
    }
    compact(&mut out);
    Ok(Step { kind: StepKind::Shrink, states: out })
}

/// Bring the next X vertex into the window.  Its edges to Y vertices already
/// in the window get charged against every tracked edge they cross; its edges
/// to new Y vertices are placed by a depth-first insertion that tries every
/// slot and prunes as soon as a budget overflows.  Returns `None` for the
/// whole instance when a new Y vertex has a neighbor left of the window: that
/// vertex was dropped at an earlier freeze whose window spanned 2k+1 edges,
/// and the pair of its edges around that span forces some edge over budget in
/// every drawing respecting the fixed X order.
fn extend_step(
    sw: &Sweep,
    prev: &Step,
    tracked: &[usize],
    next_tracked: &[usize],
    a: usize,
    b: usize,
) -> Result<Option<Step>> {
    let x_new = sw.xs[b + 1];
    let mut in_window = vec![false; sw.g.vertex_count()];
    for &e in tracked {
        in_window[sw.ey[e]] = true;
    }
    let mut new_vertices: Vec<u32> = Vec::new();
    let mut attach: Vec<(u32, usize)> = Vec::new(); // (existing Y vertex, edge id)
    for &(u, e) in sw.g.incident(x_new) {
        if in_window[u] {
            attach.push((u as u32, e));
        } else {
            if sw.g.incident(u).iter().any(|&(_, f)| sw.ex[f] < a) {
                return Ok(None); // re-entry: structurally infeasible
            }
            new_vertices.push(u as u32);
        }
    }
    new_vertices.sort_unstable();
    attach.sort_unstable();

    let old_idx: Vec<usize> = tracked
        .iter()
        .map(|e| next_tracked.binary_search(e).expect("tracked edges persist"))
        .collect();
    // Old tracked edges indexed by their Y endpoint, in next_tracked indexing.
    let mut old_at: HashMap<u32, Vec<usize>> = HashMap::new();
    for (i, &e) in tracked.iter().enumerate() {
        old_at.entry(sw.ey[e] as u32).or_default().push(old_idx[i]);
    }
    let edge_of_new: HashMap<u32, usize> = new_vertices
        .iter()
        .map(|&v| {
            let e = sw
                .g
                .incident(x_new)
                .iter()
                .find(|&&(u, _)| u as u32 == v)
                .expect("new vertex is a neighbor")
                .1;
            (v, next_tracked.binary_search(&e).expect("new edge tracked"))
        })
        .collect();

    let mut candidates: Vec<State> = Vec::new();
    let mut generated = 0usize;
    for (pi, s) in prev.states.iter().enumerate() {
        let mut chi = vec![0u64; next_tracked.len()];
        for (i, &j) in old_idx.iter().enumerate() {
            chi[j] = s.chi[i];
        }
        // Edges of the new X vertex into the existing window: their
        // crossings with old tracked edges are fully determined.
        let mut pos = HashMap::new();
        for (i, &v) in s.order.iter().enumerate() {
            pos.insert(v, i);
        }
        let mut ok = true;
        'attach: for &(z, f) in &attach {
            let fj = next_tracked.binary_search(&f).expect("attach edge tracked");
            let pz = pos[&z];
            for (i, &e) in tracked.iter().enumerate() {
                let u = sw.ey[e] as u32;
                if u == z {
                    continue;
                }
                if pz < pos[&u] {
                    let (c_old, c_new) = sw.charges(e, f);
                    chi[old_idx[i]] = chi[old_idx[i]].saturating_add(c_old);
                    chi[fj] = chi[fj].saturating_add(c_new);
                    if chi[old_idx[i]] > sw.k || chi[fj] > sw.k {
                        ok = false;
                        break 'attach;
                    }
                }
            }
        }
        if !ok {
            continue;
        }
        let mut order = s.order.clone();
        insert_new(
            sw,
            &mut order,
            &mut chi,
            &new_vertices,
            &old_at,
            &edge_of_new,
            next_tracked,
            pi,
            &mut candidates,
            &mut generated,
        )?;
    }
    compact(&mut candidates);
    Ok(Some(Step { kind: StepKind::Extend, states: candidates }))
}

/// Depth-first insertion of the new Y vertices (ascending id) into every slot
/// of the evolving window order.  Each new vertex carries exactly one tracked
/// edge, to the entering X vertex, so its crossings are exactly the old
/// tracked edges whose Y endpoint ends up to its right.
#[allow(clippy::too_many_arguments)]
fn insert_new(
    sw: &Sweep,
    order: &mut Vec<u32>,
    chi: &mut Vec<u64>,
    rest: &[u32],
    old_at: &HashMap<u32, Vec<usize>>,
    edge_of_new: &HashMap<u32, usize>,
    next_tracked: &[usize],
    parent: usize,
    out: &mut Vec<State>,
    generated: &mut usize,
) -> Result<()> {
    let Some((&v, rest_tail)) = rest.split_first() else {
        *generated += 1;
        if *generated + sw.created > sw.cap {
            return Err(Error::resource(format!(
                "state table exceeded cap of {} entries",
                sw.cap
            )));
        }
        out.push(State { order: order.clone(), chi: chi.clone(), parent });
        return Ok(());
    };
    let fj = edge_of_new[&v];
    let fid = next_tracked[fj];
    for p in 0..=order.len() {
        let mut applied: Vec<(usize, u64)> = Vec::new();
        let mut ok = true;
        for q in p..order.len() {
            let u = order[q];
            if let Some(list) = old_at.get(&u) {
                for &ej in list {
                    let (c_old, c_new) = sw.charges(next_tracked[ej], fid);
                    chi[ej] = chi[ej].saturating_add(c_old);
                    applied.push((ej, c_old));
                    chi[fj] = chi[fj].saturating_add(c_new);
                    applied.push((fj, c_new));
                    if chi[ej] > sw.k || chi[fj] > sw.k {
                        ok = false;
                    }
                }
            }
            if !ok {
                break;
            }
        }
        if ok {
            order.insert(p, v);
            insert_new(
                sw, order, chi, rest_tail, old_at, edge_of_new, next_tracked, parent, out,
                generated,
            )?;
            order.remove(p);
        }
        for (j, c) in applied {
            chi[j] -= c;
        }
    }
    Ok(())
}

/// Rebuild a full Y order from the surviving state chain.  Walking forward,
/// every vertex entering the window is placed immediately before the leftmost
/// already-placed window vertex that follows it in the child state's order,
/// or at the far right if none does.  Frozen vertices keep their final
/// positions, which is exactly why the freeze rule is sound: nothing to the
/// right of the freeze can still cross their edges.
fn reconstruct(steps: &[Step]) -> Vec<usize> {
    let mut picks = vec![0usize; steps.len()];
    let mut cur = 0usize;
    for t in (0..steps.len()).rev() {
        picks[t] = cur;
        cur = steps[t].states[cur].parent;
    }
    let mut global: Vec<u32> = steps[0].states[picks[0]].order.clone();
    for t in 1..steps.len() {
        if steps[t].kind != StepKind::Extend {
            continue;
        }
        let child = &steps[t].states[picks[t]];
        let parent = &steps[t - 1].states[picks[t - 1]];
        let in_parent = |v: u32| parent.order.contains(&v);
        for (i, &v) in child.order.iter().enumerate() {
            if in_parent(v) {
                continue;
            }
            match child.order[i + 1..].iter().copied().find(|&u| in_parent(u)) {
                Some(u) => {
                    let at = global.iter().position(|&g| g == u).expect("placed earlier");
                    global.insert(at, v);
                }
                None => global.push(v),
            }
        }
    }
    global.into_iter().map(|v| v as usize).collect()
}

fn factorial_capped(n: usize, cap: usize) -> usize {
    let mut f = 1usize;
    for i in 2..=n {
        f = f.saturating_mul(i);
        if f > cap {
            return f;
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::Side;
    use crate::oracle::{
        one_sided_oracle, one_sided_weighted_oracle, OracleLimits,
    };

    fn inst(n: usize, edges: &[(usize, usize)], x: &[usize]) -> BipartiteInstance {
        let g = Graph::from_edges(n, edges).unwrap();
        BipartiteInstance::new(g, x.to_vec(), None).unwrap()
    }

    #[test]
    fn k22_needs_one_crossing() {
        let i = inst(4, &[(0, 2), (0, 3), (1, 2), (1, 3)], &[0, 1]);
        let cfg = SolverConfig::default();
        assert!(solve_one_sided(&i, 0, &cfg).unwrap().is_none());
        let d = solve_one_sided(&i, 1, &cfg).unwrap().expect("k=1 feasible");
        let counts = two_layer_crossings_per_edge(&i, &d).unwrap();
        assert_eq!(counts.iter().max(), Some(&1));
    }

    #[test]
    fn path_is_crossing_free() {
        // P6 as a caterpillar: X = {0,2,4}, Y = {1,3,5}.
        let i = inst(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)], &[0, 2, 4]);
        let d = solve_one_sided(&i, 0, &SolverConfig::default())
            .unwrap()
            .expect("paths draw without crossings");
        let counts = two_layer_crossings_per_edge(&i, &d).unwrap();
        assert_eq!(counts.iter().max(), Some(&0));
    }

    #[test]
    fn star_reduces_and_reinserts() {
        // Center 0 with six leaves; k=0 strips leaves down to degree 2.
        let edges: Vec<(usize, usize)> = (1..=6).map(|y| (0, y)).collect();
        let i = inst(7, &edges, &[0]);
        let d = solve_one_sided(&i, 0, &SolverConfig::default())
            .unwrap()
            .expect("stars draw without crossings");
        assert_eq!(d.y_order.len(), 6);
        let counts = two_layer_crossings_per_edge(&i, &d).unwrap();
        assert_eq!(counts.iter().max(), Some(&0));
    }

    #[test]
    fn high_degree_obstruction_fires() {
        // Both sides of K_{2,3}: each X vertex has three non-leaf neighbors,
        // more than 2k+2 = 2 at k=0.
        let i = inst(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)], &[0, 1]);
        assert_eq!(degree_obstruction(&i.graph, 0), Some(0));
        assert!(solve_one_sided(&i, 0, &SolverConfig::default()).unwrap().is_none());
        assert!(degree_obstruction(&i.graph, 1).is_none());
    }

    #[test]
    fn reentry_detected_as_no() {
        // v = 5 neighbors both x0 and x3; the middle vertices carry three
        // edges, so v is dropped at the first freeze and must not return.
        let i = inst(
            9,
            &[(0, 5), (1, 6), (1, 7), (2, 8), (3, 5)],
            &[0, 1, 2, 3],
        );
        assert!(solve_one_sided(&i, 1, &SolverConfig::default()).unwrap().is_none());
        let oracle = one_sided_oracle(&i, 1, &OracleLimits::default()).unwrap();
        assert!(oracle.is_none());
        // With budget 2 the same instance fits.
        assert!(solve_one_sided(&i, 2, &SolverConfig::default()).unwrap().is_some());
    }

    #[test]
    fn window_modes_agree_on_small_graphs() {
        let cases = [
            inst(4, &[(0, 2), (0, 3), (1, 2), (1, 3)], &[0, 1]),
            inst(6, &[(0, 3), (0, 4), (1, 3), (1, 5), (2, 4), (2, 5)], &[0, 1, 2]),
            inst(7, &[(0, 4), (1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (0, 6)], &[0, 1, 2, 3]),
        ];
        let cfg = SolverConfig::default();
        for i in &cases {
            for k in 0..3 {
                let dynamic = solve_one_sided_full(i, k, WindowMode::Dynamic, &cfg).unwrap();
                let fixed =
                    solve_one_sided_full(i, k, WindowMode::FixedVertexCount, &cfg).unwrap();
                assert_eq!(dynamic.drawing.is_some(), fixed.drawing.is_some());
            }
        }
    }

    #[test]
    fn dynamic_window_examples() {
        // Matching: every X vertex has degree one, so at k=1 three vertices
        // are needed for 2k+1 = 3 edges.
        let m = inst(8, &[(0, 4), (1, 5), (2, 6), (3, 7)], &[0, 1, 2, 3]);
        assert_eq!(dynamic_window(&m, 1, 0).unwrap(), 2);
        assert_eq!(dynamic_window(&m, 1, 1).unwrap(), 2);
        // Tail is capped by the end of the order.
        assert_eq!(dynamic_window(&m, 1, 2).unwrap(), 1);
        assert_eq!(dynamic_window(&m, 1, 3).unwrap(), 0);
        // A single vertex of degree 2k+2 already spans 2k+1 edges.
        let star = inst(5, &[(0, 1), (0, 2), (0, 3), (0, 4)], &[0]);
        assert_eq!(dynamic_window(&star, 1, 0).unwrap(), 0);
        assert!(dynamic_window(&star, 1, 1).is_err());
    }

    #[test]
    fn matches_oracle_on_exhaustive_bipartite_family() {
        // All bipartite graphs on X = {0,1,2}, Y = {3,4,5} (ascending fixed
        // order), every subset of the nine possible edges, k in 0..=2.
        let cfg = SolverConfig::default();
        let limits = OracleLimits::default();
        let pairs: Vec<(usize, usize)> =
            (0..3).flat_map(|x| (3..6).map(move |y| (x, y))).collect();
        for mask in 0u32..512 {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let i = inst(6, &edges, &[0, 1, 2]);
            for k in 0..=2usize {
                let got = solve_one_sided(&i, k, &cfg).unwrap();
                let want = one_sided_oracle(&i, k, &limits).unwrap();
                assert_eq!(
                    got.is_some(),
                    want.is_some(),
                    "mask {:o} k {}: solver {:?} oracle {:?}",
                    mask,
                    k,
                    got,
                    want
                );
            }
        }
    }

    #[test]
    fn weighted_matches_oracle_on_k22() {
        let mut g = Graph::new(4);
        g.add_weighted_edge(0, 2, 1).unwrap();
        g.add_weighted_edge(0, 3, 2).unwrap();
        g.add_weighted_edge(1, 2, 5).unwrap();
        g.add_weighted_edge(1, 3, 1).unwrap();
        let i = BipartiteInstance::new(g, vec![0, 1], None).unwrap();
        let cfg = SolverConfig::default();
        let limits = OracleLimits::default();
        for mode in [WeightMode::Sum, WeightMode::Product] {
            for k in 0..=12u64 {
                let got = solve_one_sided_weighted(&i, k, mode, &cfg).unwrap();
                let want = one_sided_weighted_oracle(&i, k, mode, &limits).unwrap();
                assert_eq!(got.is_some(), want.is_some(), "mode {:?} k {}", mode, k);
                if let Some(d) = got {
                    let loads = two_layer_weighted_load(&i, &d, mode).unwrap();
                    assert!(loads.iter().all(|&l| l <= k));
                }
            }
        }
    }

    #[test]
    fn weighted_modes_differ() {
        // K_{2,2} forces one crossing and the Y order picks which pair it
        // is: weights {2, 3} (sum load 3, product 6) or {1, 5} (sum load 5,
        // product 5).  The two modes prefer opposite orders.
        let mut g = Graph::new(4);
        g.add_weighted_edge(0, 2, 1).unwrap();
        g.add_weighted_edge(0, 3, 2).unwrap();
        g.add_weighted_edge(1, 2, 3).unwrap();
        g.add_weighted_edge(1, 3, 5).unwrap();
        let i = BipartiteInstance::new(g, vec![0, 1], Some(vec![0, 1])).unwrap();
        let cfg = SolverConfig::default();
        let limits = OracleLimits::default();
        for (mode, threshold) in [(WeightMode::Sum, 3), (WeightMode::Product, 5)] {
            let yes = solve_one_sided_weighted(&i, threshold, mode, &cfg).unwrap();
            assert!(yes.is_some(), "{mode:?} at {threshold}");
            assert!(solve_one_sided_weighted(&i, threshold - 1, mode, &cfg).unwrap().is_none());
            assert!(one_sided_weighted_oracle(&i, threshold, mode, &limits).unwrap().is_some());
            assert!(one_sided_weighted_oracle(&i, threshold - 1, mode, &limits).unwrap().is_none());
        }
        let sum_d = solve_one_sided_weighted(&i, 3, WeightMode::Sum, &cfg).unwrap().unwrap();
        assert_eq!(sum_d.y_order, vec![2, 3]);
        let prod_d = solve_one_sided_weighted(&i, 5, WeightMode::Product, &cfg).unwrap().unwrap();
        assert_eq!(prod_d.y_order, vec![3, 2]);
    }

    #[test]
    fn respects_fixed_order_direction() {
        // Edges (0,4),(1,4),(1,5),(2,5),(2,6),(3,6) form a caterpillar; both
        // the ascending order and its reverse admit crossing-free drawings,
        // but an interleaved order does not.
        let g = Graph::from_edges(7, &[(0, 4), (1, 4), (1, 5), (2, 5), (2, 6), (3, 6)]).unwrap();
        let asc = BipartiteInstance::new(g.clone(), vec![0, 1, 2, 3], None).unwrap();
        let cfg = SolverConfig::default();
        assert!(solve_one_sided(&asc, 0, &cfg).unwrap().is_some());
        let swapped =
            BipartiteInstance::new(g, vec![0, 1, 2, 3], Some(vec![0, 2, 1, 3])).unwrap();
        assert!(solve_one_sided(&swapped, 0, &cfg).unwrap().is_none());
        assert!(solve_one_sided(&swapped, 1, &cfg).unwrap().is_none());
        assert!(solve_one_sided(&swapped, 2, &cfg).unwrap().is_some());
    }

    #[test]
    fn far_edges_stay_ordered() {
        let i = inst(6, &[(0, 3), (0, 4), (1, 3), (1, 5), (2, 4), (2, 5)], &[0, 1, 2]);
        let d = solve_one_sided(&i, 1, &SolverConfig::default()).unwrap().unwrap();
        assert!(check_far_edge_order(&i, &d, 1).unwrap());
        // An inverted far pair violates the property at k=0.
        let m = inst(8, &[(0, 4), (1, 5), (2, 6), (3, 7)], &[0, 1, 2, 3]);
        let bad = TwoLayerDrawing {
            x_order: vec![0, 1, 2, 3],
            y_order: vec![7, 5, 6, 4],
        };
        assert!(!check_far_edge_order(&m, &bad, 0).unwrap());
    }

    #[test]
    fn tiny_cap_reports_resource_exhaustion() {
        let i = inst(6, &[(0, 3), (0, 4), (1, 3), (1, 5), (2, 4), (2, 5)], &[0, 1, 2]);
        let cfg = SolverConfig { table_cap: 2 };
        match solve_one_sided(&i, 1, &cfg) {
            Err(Error::Resource(_)) => {}
            other => panic!("expected resource error, got {:?}", other),
        }
    }

    #[test]
    fn leaf_reduction_keeps_anchor_degree() {
        let edges: Vec<(usize, usize)> = (1..=7).map(|y| (0, y)).collect();
        let g = Graph::from_edges(8, &edges).unwrap();
        let (reduced, removed) = reduce_leaves(&g, |v| v == 0, 0);
        assert_eq!(reduced.degree(0), 2);
        assert_eq!(removed.len(), 5);
        assert!(removed.iter().all(|r| r.anchor == 0));
        // Anchors on the other side never trigger.
        let (untouched, removed2) = reduce_leaves(&g, |v| v != 0, 0);
        assert_eq!(untouched.degree(0), 7);
        assert!(removed2.is_empty());
    }

    #[test]
    fn stats_are_populated() {
        let i = inst(6, &[(0, 3), (0, 4), (1, 3), (1, 5), (2, 4), (2, 5)], &[0, 1, 2]);
        let r = solve_one_sided_full(&i, 1, WindowMode::Dynamic, &SolverConfig::default())
            .unwrap();
        assert!(r.drawing.is_some());
        assert!(r.stats.states_created > 0);
        assert!(r.stats.peak_states > 0);
        assert!(r.stats.steps >= 2);
        assert_eq!(r.stats.max_components, 0);
    }

    #[test]
    fn empty_and_edgeless_instances_are_yes() {
        let i = inst(3, &[], &[0]);
        let d = solve_one_sided(&i, 0, &SolverConfig::default()).unwrap().unwrap();
        assert_eq!(d.x_order, vec![0]);
        assert_eq!(d.y_order, vec![1, 2]);
        assert_eq!(
            Graph::new(0).vertex_count(),
            0,
            "empty graph constructs fine"
        );
    }

    #[test]
    fn rejects_weighted_instance_in_unweighted_solver() {
        let mut g = Graph::new(2);
        g.add_weighted_edge(0, 1, 3).unwrap();
        let i = BipartiteInstance::new(g, vec![0], None).unwrap();
        assert!(matches!(
            solve_one_sided(&i, 1, &SolverConfig::default()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn deterministic_output() {
        let i = inst(7, &[(0, 4), (1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (0, 6)], &[0, 1, 2, 3]);
        let cfg = SolverConfig::default();
        let d1 = solve_one_sided(&i, 1, &cfg).unwrap();
        let d2 = solve_one_sided(&i, 1, &cfg).unwrap();
        assert_eq!(
            d1.as_ref().map(|d| (&d.x_order, &d.y_order)),
            d2.as_ref().map(|d| (&d.x_order, &d.y_order))
        );
    }

    #[test]
    fn trees_match_oracle_with_leaf_reduction_active() {
        // Spiders with high-degree centers exercise reduction and
        // reinsertion; compare against the oracle on each.
        let cfg = SolverConfig::default();
        let limits = OracleLimits::default();
        // Double spider: centers 0 and 1 on X, many leaves, bridge via 8.
        let i = inst(
            9,
            &[(0, 2), (0, 3), (0, 4), (0, 8), (1, 5), (1, 6), (1, 7), (1, 8)],
            &[0, 1],
        );
        for k in 0..=2usize {
            let got = solve_one_sided(&i, k, &cfg).unwrap();
            let want = one_sided_oracle(&i, k, &limits).unwrap();
            assert_eq!(got.is_some(), want.is_some(), "k {}", k);
        }
    }

    #[test]
    fn side_assignment_respected() {
        let i = inst(4, &[(0, 2), (0, 3), (1, 2), (1, 3)], &[0, 1]);
        assert_eq!(i.side(0), Side::X);
        assert_eq!(i.side(2), Side::Y);
    }
}
