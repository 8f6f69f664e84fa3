//! Outer drawing recognition: all vertices on a circle, edges as chords, and
//! the question whether some cyclic order leaves every edge with at most `k`
//! crossings.
//!
//! The solver first splits the graph into biconnected blocks.  Blocks can be
//! drawn independently and spliced together at their shared cut vertices
//! without creating any new crossings, because a freshly inserted block
//! occupies a contiguous arc and no edge leaves it except through the cut
//! vertex itself.
//!
//! Inside a block the solver runs a memoized recursion over "arc" subproblems.
//! A subproblem is a directed pole pair `(u, v)` plus the vertex set `R` that
//! has to occupy the arc between the poles, the order `tau` in which the
//! boundary edges (edges leaving `R` for the remainder of the graph) pierce
//! that arc, and a budget `chi(c)` for every boundary edge saying how many
//! crossings it may still collect inside the arc.  Splitting on the vertex `w`
//! that sits opposite the pole chord reduces an arc to two child arcs; a small
//! "triangle frame" drawing on the poles and the pierce points determines how
//! many crossings every boundary edge pays at this level, and the budgets
//! handed down follow the bookkeeping rules in [`check_consistency`].
//!
//! Candidate sets `R` are heavily pruned: in any valid drawing the arc between
//! two vertices is a union of connected components of the graph minus the two
//! poles and at most `k` pierced edges, and its boundary has at most `k`
//! edges.  [`candidate_arc_sets`] enumerates exactly these unions.

use std::collections::{BTreeMap, HashMap, HashSet};

use itertools::Itertools;

use crate::drawing::{circular_crossings_per_edge, CircularDrawing};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::{DpStats, SolverConfig};

/// Widest biconnected block the bitmask-based recursion accepts.
const MAX_BLOCK: usize = 128;

/// Result of [`solve_outer_full`]: certificate plus table statistics.
#[derive(Debug, Clone)]
pub struct OuterReport {
    pub drawing: Option<CircularDrawing>,
    pub stats: DpStats,
}

fn bit(i: usize) -> u128 {
    1u128 << i
}

fn mask_vertices(mut mask: u128) -> Vec<usize> {
    let mut out = Vec::new();
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        out.push(i);
        mask &= mask - 1;
    }
    out
}

/// Edge ids with exactly one endpoint in `r`, the other outside `r` and
/// distinct from both poles.  Ascending id order.
fn cut_edges(g: &Graph, r: u128, p: usize, q: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        let iu = r & bit(e.u) != 0;
        let iv = r & bit(e.v) != 0;
        if iu == iv {
            continue;
        }
        let outside = if iu { e.v } else { e.u };
        if outside != p && outside != q {
            out.push(id);
        }
    }
    out
}

fn cut_size(g: &Graph, r: u128, p: usize, q: usize) -> usize {
    cut_edges(g, r, p, q).len()
}

/// Connected components of `g` minus the poles and the banned edges, as
/// bitmasks ordered by smallest contained vertex.
fn components_without(g: &Graph, p: usize, q: usize, banned: &[usize]) -> Vec<u128> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    seen[p] = true;
    seen[q] = true;
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut mask = 0u128;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(x) = stack.pop() {
            mask |= bit(x);
            for &(nb, eid) in g.incident(x) {
                if seen[nb] || banned.contains(&eid) {
                    continue;
                }
                seen[nb] = true;
                stack.push(nb);
            }
        }
        comps.push(mask);
    }
    comps
}

/// Every vertex set that can occupy the arc between `u` and `v` in an outer
/// drawing with at most `k` crossings per edge: unions of connected components
/// of the graph minus `{u, v}` and at most `k` edges, with at most `k` edges
/// leaving the union toward the rest.  Sets are returned as sorted vertex
/// lists in ascending bitmask order and always include the empty set.
///
/// If the graph minus the poles falls apart into more than `2k + 3` pieces no
/// drawing exists at all and the list is empty.  Requires a biconnected graph.
pub fn candidate_arc_sets(g: &Graph, u: usize, v: usize, k: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    if u >= n || v >= n || u == v {
        return Err(Error::invalid(format!("bad pole pair ({u}, {v}) for {n} vertices")));
    }
    if g.biconnected_components().len() != 1 {
        return Err(Error::invalid("graph is not biconnected"));
    }
    if n > MAX_BLOCK {
        return Err(Error::resource(format!("{n} vertices exceed the {MAX_BLOCK}-vertex limit")));
    }
    let base = components_without(g, u, v, &[]);
    if base.len() > 2 * k + 3 {
        return Ok(Vec::new());
    }
    Ok(candidate_masks(g, u, v, k).into_iter().map(mask_vertices).collect())
}

/// Candidate arcs as bitmasks, ascending.  Assumes the component-count filter
/// has passed, so every union stays enumerable.
fn candidate_masks(g: &Graph, u: usize, v: usize, k: usize) -> Vec<u128> {
    let pool: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.u != u && e.u != v && e.v != u && e.v != v)
        .map(|(id, _)| id)
        .collect();
    let mut seen: HashSet<u128> = HashSet::new();
    let mut out: Vec<u128> = Vec::new();
    for size in 0..=k.min(pool.len()) {
        for banned in pool.iter().copied().combinations(size) {
            let comps = components_without(g, u, v, &banned);
            for pick in 0u64..(1u64 << comps.len()) {
                let mut mask = 0u128;
                for (i, &c) in comps.iter().enumerate() {
                    if pick & (1 << i) != 0 {
                        mask |= c;
                    }
                }
                if seen.insert(mask) && cut_size(g, mask, u, v) <= k {
                    out.push(mask);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Crossing counts inside the triangle frame of one split step.
///
/// The frame places, clockwise: pole `u`, the pierce points of `tau` in
/// order, pole `v`, the pierce points of `tau2` reversed, the split vertex
/// `w`, and the pierce points of `tau1` reversed.  Every boundary edge of the
/// parent arc (`tau`), of the `u`-`w` child (`tau1`) and of the `w`-`v` child
/// (`tau2`) is drawn once as a chord between its frame points, plus the pole
/// edge `{u, v}` when present; the map gives each chord's crossings with the
/// other chords.  Chords sharing a frame point never cross.
pub fn triangle_crossings(
    g: &Graph,
    u: usize,
    v: usize,
    w: usize,
    r1: &[usize],
    r2: &[usize],
    tau: &[usize],
    tau1: &[usize],
    tau2: &[usize],
) -> Result<BTreeMap<usize, usize>> {
    let n = g.vertex_count();
    if n > MAX_BLOCK {
        return Err(Error::resource(format!("{n} vertices exceed the {MAX_BLOCK}-vertex limit")));
    }
    for &x in [u, v, w].iter() {
        if x >= n {
            return Err(Error::invalid(format!("vertex {x} out of range")));
        }
    }
    if u == v || u == w || v == w {
        return Err(Error::invalid("poles and split vertex must be distinct"));
    }
    let mut r1m = 0u128;
    let mut r2m = 0u128;
    for (list, m) in [(r1, &mut r1m), (r2, &mut r2m)] {
        for &x in list {
            if x >= n {
                return Err(Error::invalid(format!("vertex {x} out of range")));
            }
            if x == u || x == v || x == w {
                return Err(Error::invalid(format!("vertex {x} may not be a pole or the split vertex")));
            }
            *m |= bit(x);
        }
    }
    if r1m & r2m != 0 {
        return Err(Error::invalid("child arcs overlap"));
    }
    let m = g.edges().len();
    for seq in [tau, tau1, tau2] {
        let mut sorted: Vec<usize> = seq.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != seq.len() {
            return Err(Error::invalid("duplicate edge in a pierce order"));
        }
        if seq.iter().any(|&e| e >= m) {
            return Err(Error::invalid("unknown edge id in a pierce order"));
        }
    }
    let set: fn(&[usize]) -> HashSet<usize> = |s| s.iter().copied().collect();
    let (st, s1, s2) = (set(tau), set(tau1), set(tau2));
    if let Some(&e) = tau.iter().find(|e| s1.contains(e) && s2.contains(e)) {
        return Err(Error::invalid(format!("edge {e} claimed by all three cuts")));
    }
    let check = |name: &str, want: Vec<usize>, got: &HashSet<usize>| -> Result<()> {
        let w: HashSet<usize> = want.iter().copied().collect();
        if &w != got {
            return Err(Error::invalid(format!("{name} does not list exactly the arc's boundary edges")));
        }
        Ok(())
    };
    check("tau", cut_edges(g, r1m | r2m | bit(w), u, v), &st)?;
    check("tau1", cut_edges(g, r1m, u, w), &s1)?;
    check("tau2", cut_edges(g, r2m, w, v), &s2)?;
    frame_crossings(g, u, v, w, r1m, r2m, tau, tau1, tau2)
}

/// Core of [`triangle_crossings`]; trusts that the pierce orders match the
/// cuts (the solver guarantees this by construction).
fn frame_crossings(
    g: &Graph,
    u: usize,
    v: usize,
    w: usize,
    r1: u128,
    r2: u128,
    tau: &[usize],
    tau1: &[usize],
    tau2: &[usize],
) -> Result<BTreeMap<usize, usize>> {
    let (l, l1, l2) = (tau.len(), tau1.len(), tau2.len());
    let pos_v = l + 1;
    let pos_w = l + l2 + 2;
    let t1pos = |j: usize| l + l2 + l1 + 2 - j;
    let t2pos = |j: usize| l + l2 + 1 - j;
    let index = |s: &[usize]| -> HashMap<usize, usize> {
        s.iter().enumerate().map(|(i, &e)| (e, i)).collect()
    };
    let (it, i1, i2) = (index(tau), index(tau1), index(tau2));
    let r = r1 | r2 | bit(w);
    let inner = |e: usize, m: u128| -> Result<usize> {
        let edge = g.edges()[e];
        match (m & bit(edge.u) != 0, m & bit(edge.v) != 0) {
            (true, false) => Ok(edge.u),
            (false, true) => Ok(edge.v),
            _ => Err(Error::invalid(format!("edge {e} does not pierce the arc boundary"))),
        }
    };

    let mut images: Vec<(usize, usize, usize)> = Vec::new();
    for (i, &e) in tau.iter().enumerate() {
        let rv = inner(e, r)?;
        let b = if rv == w {
            pos_w
        } else if r1 & bit(rv) != 0 {
            t1pos(*i1.get(&e).ok_or_else(|| {
                Error::invalid(format!("edge {e} reaches the first child but is missing from tau1"))
            })?)
        } else {
            t2pos(*i2.get(&e).ok_or_else(|| {
                Error::invalid(format!("edge {e} reaches the second child but is missing from tau2"))
            })?)
        };
        images.push((e, 1 + i, b));
    }
    for (j, &e) in tau1.iter().enumerate() {
        if it.contains_key(&e) {
            continue;
        }
        let rv = inner(e, r1)?;
        let edge = g.edges()[e];
        let other = if edge.u == rv { edge.v } else { edge.u };
        let a = if other == v {
            pos_v
        } else if r2 & bit(other) != 0 {
            t2pos(*i2.get(&e).ok_or_else(|| {
                Error::invalid(format!("edge {e} links both children but is missing from tau2"))
            })?)
        } else {
            return Err(Error::invalid(format!("edge {e} leaves the first child illegally")));
        };
        images.push((e, a, t1pos(j)));
    }
    for (j, &e) in tau2.iter().enumerate() {
        if it.contains_key(&e) || i1.contains_key(&e) {
            continue;
        }
        let rv = inner(e, r2)?;
        let edge = g.edges()[e];
        let other = if edge.u == rv { edge.v } else { edge.u };
        if other != u {
            return Err(Error::invalid(format!("edge {e} leaves the second child illegally")));
        }
        images.push((e, 0, t2pos(j)));
    }
    if let Some(uv) = g.edge_id(u, v) {
        images.push((uv, 0, pos_v));
    }

    let mut out: BTreeMap<usize, usize> = images.iter().map(|&(e, _, _)| (e, 0)).collect();
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if chords_cross((images[i].1, images[i].2), (images[j].1, images[j].2)) {
                *out.get_mut(&images[i].0).unwrap() += 1;
                *out.get_mut(&images[j].0).unwrap() += 1;
            }
        }
    }
    Ok(out)
}

fn chords_cross(p: (usize, usize), q: (usize, usize)) -> bool {
    let (a, b) = (p.0.min(p.1), p.0.max(p.1));
    let (c, d) = (q.0.min(q.1), q.0.max(q.1));
    if a == c || a == d || b == c || b == d {
        return false;
    }
    (a < c && c < b) != (a < d && d < b)
}

/// Checks whether a fully specified split of an arc subproblem is consistent.
///
/// `chi`, `chi1`, `chi2` are aligned with `tau`, `tau1`, `tau2` and hold the
/// crossing budgets of the parent respectively the two children.  With
/// `cross` denoting the triangle-frame counts, the rules are:
///
/// * both children have at most `k` boundary edges;
/// * a parent boundary edge ending in child `i` hands down exactly its
///   leftover, `chi_i(c) = chi(c) - cross(c)`;
/// * a parent boundary edge ending in `w` consumes its budget exactly,
///   `chi(c) = cross(c)`;
/// * a child boundary edge from pole `v` (resp. `u`) fits its child budget
///   plus the frame, `chi_i(c) + cross(c) <= k`;
/// * an edge linking the two children satisfies
///   `chi1(c) + chi2(c) + cross(c) <= k`;
/// * the pole edge `{u, v}`, when present, pays `cross <= k`.
pub fn check_consistency(
    g: &Graph,
    k: usize,
    u: usize,
    v: usize,
    w: usize,
    r1: &[usize],
    r2: &[usize],
    tau: &[usize],
    chi: &[usize],
    tau1: &[usize],
    chi1: &[usize],
    tau2: &[usize],
    chi2: &[usize],
) -> Result<bool> {
    for (t, c) in [(tau, chi), (tau1, chi1), (tau2, chi2)] {
        if t.len() != c.len() {
            return Err(Error::invalid("budget vector does not match its pierce order"));
        }
        if c.iter().any(|&x| x > k) {
            return Err(Error::invalid(format!("budget exceeds k = {k}")));
        }
    }
    let frame = triangle_crossings(g, u, v, w, r1, r2, tau, tau1, tau2)?;
    if tau1.len() > k || tau2.len() > k {
        return Ok(false);
    }
    if let Some(uv) = g.edge_id(u, v) {
        if frame[&uv] > k {
            return Ok(false);
        }
    }
    let mut r1m = 0u128;
    let mut r2m = 0u128;
    for &x in r1 {
        r1m |= bit(x);
    }
    for &x in r2 {
        r2m |= bit(x);
    }
    let index = |s: &[usize]| -> HashMap<usize, usize> {
        s.iter().enumerate().map(|(i, &e)| (e, i)).collect()
    };
    let (it, i1, i2) = (index(tau), index(tau1), index(tau2));
    for (i, &c) in tau.iter().enumerate() {
        let cr = frame[&c];
        let e = g.edges()[c];
        let rv = if (r1m | r2m | bit(w)) & bit(e.u) != 0 { e.u } else { e.v };
        if rv == w {
            if chi[i] != cr {
                return Ok(false);
            }
        } else if r1m & bit(rv) != 0 {
            if chi[i] < cr || chi1[i1[&c]] != chi[i] - cr {
                return Ok(false);
            }
        } else if chi[i] < cr || chi2[i2[&c]] != chi[i] - cr {
            return Ok(false);
        }
    }
    for (j, &c) in tau1.iter().enumerate() {
        if it.contains_key(&c) {
            continue;
        }
        let cr = frame[&c];
        let budget = if let Some(&j2) = i2.get(&c) { chi1[j] + chi2[j2] } else { chi1[j] };
        if budget + cr > k {
            return Ok(false);
        }
    }
    for (j, &c) in tau2.iter().enumerate() {
        if it.contains_key(&c) || i1.contains_key(&c) {
            continue;
        }
        if chi2[j] + frame[&c] > k {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    u: usize,
    v: usize,
    r: u128,
    tau: Vec<usize>,
    chi: Vec<usize>,
}

#[derive(Clone)]
struct Split {
    w: usize,
    r1: u128,
    r2: u128,
    tau1: Vec<usize>,
    chi1: Vec<usize>,
    tau2: Vec<usize>,
    chi2: Vec<usize>,
}

#[derive(Clone)]
enum Entry {
    No,
    Leaf,
    Node(Split),
}

#[derive(Clone, Copy)]
enum Slot {
    /// `chi1[i]` ranges over `0..=max`.
    C1Only { i: usize, max: usize },
    /// `chi2[i]` ranges over `0..=max`.
    C2Only { i: usize, max: usize },
    /// `chi1[i1] + chi2[i2]` ranges over `0..=max`.
    Shared { i1: usize, i2: usize, max: usize },
}

struct SplitArgs<'a> {
    u: usize,
    v: usize,
    w: usize,
    r1: u128,
    r2: u128,
    tau1: &'a [usize],
    tau2: &'a [usize],
}

struct OuterDp<'g> {
    g: &'g Graph,
    k: usize,
    cand: HashMap<(usize, usize), HashSet<u128>>,
    memo: HashMap<Key, Entry>,
    cap: usize,
    steps: usize,
}

impl<'g> OuterDp<'g> {
    fn cand_has(&self, a: usize, b: usize, mask: u128) -> bool {
        self.cand[&(a.min(b), a.max(b))].contains(&mask)
    }

    fn record(&mut self, key: Key, e: Entry) -> Result<bool> {
        if self.memo.len() >= self.cap {
            return Err(Error::resource(format!(
                "outer drawing table exceeded {} entries",
                self.cap
            )));
        }
        let yes = !matches!(e, Entry::No);
        self.memo.insert(key, e);
        Ok(yes)
    }

    /// Can the arc between `u` and `v` be filled with exactly `r`, with
    /// boundary edges piercing in `tau` order and `chi[i]` crossings still
    /// allowed on `tau[i]` inside the arc?
    fn draw(&mut self, u: usize, v: usize, r: u128, tau: &[usize], chi: &[usize]) -> Result<bool> {
        let key = Key { u, v, r, tau: tau.to_vec(), chi: chi.to_vec() };
        if let Some(e) = self.memo.get(&key) {
            return Ok(!matches!(e, Entry::No));
        }
        self.steps += 1;
        if r == 0 {
            return self.record(key, Entry::Leaf);
        }
        for w in mask_vertices(r) {
            let rem = r & !bit(w);
            let mut r1 = 0u128;
            loop {
                let r2 = rem ^ r1;
                if self.cand_has(u, w, r1) && self.cand_has(w, v, r2) {
                    if let Some(split) = self.try_split(u, v, w, r, r1, r2, tau, chi)? {
                        return self.record(key, Entry::Node(split));
                    }
                }
                if r1 == rem {
                    break;
                }
                r1 = r1.wrapping_sub(rem) & rem;
            }
        }
        self.record(key, Entry::No)
    }

    #[allow(clippy::too_many_arguments)]
    fn try_split(
        &mut self,
        u: usize,
        v: usize,
        w: usize,
        r: u128,
        r1: u128,
        r2: u128,
        tau: &[usize],
        chi: &[usize],
    ) -> Result<Option<Split>> {
        let k = self.k;
        let c1 = cut_edges(self.g, r1, u, w);
        let c2 = cut_edges(self.g, r2, w, v);
        if c1.len() > k || c2.len() > k {
            return Ok(None);
        }
        for tau1 in c1.iter().copied().permutations(c1.len()) {
            for tau2 in c2.iter().copied().permutations(c2.len()) {
                let frame = frame_crossings(self.g, u, v, w, r1, r2, tau, &tau1, &tau2)?;
                if let Some(uv) = self.g.edge_id(u, v) {
                    if frame[&uv] > k {
                        continue;
                    }
                }
                let index = |s: &[usize]| -> HashMap<usize, usize> {
                    s.iter().enumerate().map(|(i, &e)| (e, i)).collect()
                };
                let (it, i1, i2) = (index(tau), index(&tau1), index(&tau2));
                let mut chi1 = vec![0usize; tau1.len()];
                let mut chi2 = vec![0usize; tau2.len()];
                let mut slots: Vec<Slot> = Vec::new();
                let mut ok = true;
                for (i, &c) in tau.iter().enumerate() {
                    let cr = frame[&c];
                    let e = self.g.edges()[c];
                    let rv = if r & bit(e.u) != 0 { e.u } else { e.v };
                    if rv == w {
                        if chi[i] != cr {
                            ok = false;
                            break;
                        }
                    } else if r1 & bit(rv) != 0 {
                        match chi[i].checked_sub(cr) {
                            Some(b) => chi1[i1[&c]] = b,
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    } else {
                        match chi[i].checked_sub(cr) {
                            Some(b) => chi2[i2[&c]] = b,
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                }
                if !ok {
                    continue;
                }
                for (j, &c) in tau1.iter().enumerate() {
                    if it.contains_key(&c) {
                        continue;
                    }
                    let cr = frame[&c];
                    if cr > k {
                        ok = false;
                        break;
                    }
                    if let Some(&j2) = i2.get(&c) {
                        slots.push(Slot::Shared { i1: j, i2: j2, max: k - cr });
                    } else {
                        slots.push(Slot::C1Only { i: j, max: k - cr });
                    }
                }
                if !ok {
                    continue;
                }
                for (j, &c) in tau2.iter().enumerate() {
                    if it.contains_key(&c) || i1.contains_key(&c) {
                        continue;
                    }
                    let cr = frame[&c];
                    if cr > k {
                        ok = false;
                        break;
                    }
                    slots.push(Slot::C2Only { i: j, max: k - cr });
                }
                if !ok {
                    continue;
                }
                let args = SplitArgs { u, v, w, r1, r2, tau1: &tau1, tau2: &tau2 };
                if self.assign(&args, &slots, 0, &mut chi1, &mut chi2)? {
                    #[cfg(debug_assertions)]
                    {
                        let lv = |m: u128| mask_vertices(m);
                        debug_assert!(check_consistency(
                            self.g,
                            k,
                            u,
                            v,
                            w,
                            &lv(r1),
                            &lv(r2),
                            tau,
                            chi,
                            &tau1,
                            &chi1,
                            &tau2,
                            &chi2,
                        )
                        .unwrap_or(false));
                    }
                    return Ok(Some(Split { w, r1, r2, tau1, chi1, tau2, chi2 }));
                }
            }
        }
        Ok(None)
    }

    /// Enumerates the free budgets slot by slot, smallest values first, and
    /// recurses into the two children once all slots are fixed.
    fn assign(
        &mut self,
        a: &SplitArgs,
        slots: &[Slot],
        idx: usize,
        chi1: &mut Vec<usize>,
        chi2: &mut Vec<usize>,
    ) -> Result<bool> {
        if idx == slots.len() {
            return Ok(self.draw(a.u, a.w, a.r1, a.tau1, chi1)?
                && self.draw(a.w, a.v, a.r2, a.tau2, chi2)?);
        }
        match slots[idx] {
            Slot::C1Only { i, max } => {
                for val in 0..=max {
                    chi1[i] = val;
                    if self.assign(a, slots, idx + 1, chi1, chi2)? {
                        return Ok(true);
                    }
                }
            }
            Slot::C2Only { i, max } => {
                for val in 0..=max {
                    chi2[i] = val;
                    if self.assign(a, slots, idx + 1, chi1, chi2)? {
                        return Ok(true);
                    }
                }
            }
            Slot::Shared { i1, i2, max } => {
                for v1 in 0..=max {
                    chi1[i1] = v1;
                    for v2 in 0..=(max - v1) {
                        chi2[i2] = v2;
                        if self.assign(a, slots, idx + 1, chi1, chi2)? {
                            return Ok(true);
                        }
                    }
                }
            }
        }
        Ok(false)
    }

    /// Vertex sequence `[v, arc interior in drawing order, u]` of a solved
    /// subproblem, stitched together from the recorded splits.
    fn reconstruct(&self, u: usize, v: usize, r: u128, tau: &[usize], chi: &[usize]) -> Vec<usize> {
        let key = Key { u, v, r, tau: tau.to_vec(), chi: chi.to_vec() };
        match &self.memo[&key] {
            Entry::Leaf => vec![v, u],
            Entry::Node(s) => {
                let mut ba = self.reconstruct(s.w, v, s.r2, &s.tau2, &s.chi2);
                let ba1 = self.reconstruct(u, s.w, s.r1, &s.tau1, &s.chi1);
                debug_assert_eq!(ba.last(), ba1.first());
                ba.extend_from_slice(&ba1[1..]);
                ba
            }
            Entry::No => unreachable!("reconstruction of a refused subproblem"),
        }
    }
}

/// Solves one biconnected block.  Returns the cycle in block-local ids.
fn solve_block(
    g: &Graph,
    k: usize,
    cfg: &SolverConfig,
    stats: &mut DpStats,
) -> Result<Option<CircularDrawing>> {
    let n = g.vertex_count();
    if !g.density_guard(k) {
        return Ok(None);
    }
    if n <= 3 {
        return Ok(Some(CircularDrawing { cycle: (0..n).collect() }));
    }
    if n > MAX_BLOCK {
        return Err(Error::resource(format!(
            "block with {n} vertices exceeds the {MAX_BLOCK}-vertex limit"
        )));
    }

    let mut cand: HashMap<(usize, usize), HashSet<u128>> = HashMap::new();
    for u in 0..n {
        for v in u + 1..n {
            let pieces = components_without(g, u, v, &[]).len();
            stats.max_components = stats.max_components.max(pieces);
            if pieces > 2 * k + 3 {
                // Too many chunks would have to share the two arcs between
                // the poles; some boundary edge would exceed its budget.
                return Ok(None);
            }
            cand.insert((u, v), candidate_masks(g, u, v, k).into_iter().collect());
        }
    }

    let all = if n == 128 { u128::MAX } else { bit(n) - 1 };
    let mut dp = OuterDp { g, k, cand, memo: HashMap::new(), cap: cfg.table_cap, steps: 0 };
    let mut found = None;
    'pairs: for u in 0..n {
        for v in u + 1..n {
            let full = all ^ bit(u) ^ bit(v);
            if !dp.cand_has(u, v, full) {
                continue;
            }
            if dp.draw(u, v, full, &[], &[])? {
                found = Some(dp.reconstruct(u, v, full, &[], &[]));
                break 'pairs;
            }
        }
    }
    stats.states_created += dp.memo.len();
    stats.peak_states = stats.peak_states.max(dp.memo.len());
    stats.steps += dp.steps;
    Ok(found.map(|cycle| CircularDrawing { cycle }))
}

/// Recognizes outer drawings of a biconnected graph with at most `k`
/// crossings per edge.  Errors on graphs that are not biconnected.
pub fn solve_outer_biconnected(
    g: &Graph,
    k: usize,
    cfg: &SolverConfig,
) -> Result<Option<CircularDrawing>> {
    if g.is_weighted() {
        return Err(Error::invalid("outer drawings do not use edge weights"));
    }
    if g.biconnected_components().len() != 1 {
        return Err(Error::invalid("graph is not biconnected"));
    }
    let mut stats = DpStats::default();
    match solve_block(g, k, cfg, &mut stats)? {
        None => Ok(None),
        Some(d) => {
            let d = d.canonicalize();
            verify_outer(g, &d, k)?;
            Ok(Some(d))
        }
    }
}

fn verify_outer(g: &Graph, d: &CircularDrawing, k: usize) -> Result<()> {
    let per = circular_crossings_per_edge(g, d)?;
    if let Some((id, &c)) = per.iter().enumerate().find(|&(_, &c)| c > k) {
        let e = g.edges()[id];
        return Err(Error::BadCertificate(format!(
            "edge ({}, {}) has {c} crossings, budget {k}",
            e.u, e.v
        )));
    }
    Ok(())
}

/// Is there a circular vertex order drawing `g` with at most `k` crossings
/// per edge?  Returns a verified certificate drawing on success.
pub fn solve_outer(g: &Graph, k: usize, cfg: &SolverConfig) -> Result<Option<CircularDrawing>> {
    Ok(solve_outer_full(g, k, cfg)?.drawing)
}

/// [`solve_outer`] plus table statistics.
///
/// Handles arbitrary graphs: blocks are solved independently and spliced at
/// cut vertices, isolated vertices are appended.  Splicing inserts a block's
/// cycle right after its cut vertex, which never creates crossings because
/// the inserted arc is contiguous and only the cut vertex connects it to the
/// rest.
pub fn solve_outer_full(g: &Graph, k: usize, cfg: &SolverConfig) -> Result<OuterReport> {
    if g.is_weighted() {
        return Err(Error::invalid("outer drawings do not use edge weights"));
    }
    let n = g.vertex_count();
    let mut stats = DpStats::default();
    if n == 0 {
        return Ok(OuterReport { drawing: Some(CircularDrawing { cycle: Vec::new() }), stats });
    }
    if !g.density_guard(k) {
        return Ok(OuterReport { drawing: None, stats });
    }

    let mut blocks = g.biconnected_components();
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    let mut block_cycles: Vec<Vec<usize>> = Vec::new();
    for block in blocks.iter().filter(|b| b.len() >= 2) {
        let (sub, back) = g.induced(block);
        match solve_block(&sub, k, cfg, &mut stats)? {
            None => return Ok(OuterReport { drawing: None, stats }),
            Some(d) => block_cycles.push(d.cycle.iter().map(|&i| back[i]).collect()),
        }
    }

    let comps = g.connected_components();
    let mut comp_of = vec![usize::MAX; n];
    for (ci, comp) in comps.iter().enumerate() {
        for &x in comp {
            comp_of[x] = ci;
        }
    }
    let mut cycle: Vec<usize> = Vec::new();
    for (ci, comp) in comps.iter().enumerate() {
        if comp.len() == 1 {
            cycle.push(comp[0]);
            continue;
        }
        let todo: Vec<&Vec<usize>> =
            block_cycles.iter().filter(|c| comp_of[c[0]] == ci).collect();
        let mut placed = vec![false; todo.len()];
        let mut in_assembly = vec![false; n];
        let mut assembly: Vec<usize> = todo[0].clone();
        for &x in &assembly {
            in_assembly[x] = true;
        }
        placed[0] = true;
        let mut remaining = todo.len() - 1;
        while remaining > 0 {
            let mut progressed = false;
            for i in 1..todo.len() {
                if placed[i] {
                    continue;
                }
                let shared: Vec<usize> =
                    todo[i].iter().copied().filter(|&x| in_assembly[x]).collect();
                if shared.is_empty() {
                    continue;
                }
                debug_assert_eq!(shared.len(), 1, "blocks share at most one vertex");
                let at = assembly.iter().position(|&x| x == shared[0]).unwrap();
                let p = todo[i].iter().position(|&x| x == shared[0]).unwrap();
                let rest: Vec<usize> =
                    todo[i][p + 1..].iter().chain(todo[i][..p].iter()).copied().collect();
                for &x in &rest {
                    in_assembly[x] = true;
                }
                assembly.splice(at + 1..at + 1, rest);
                placed[i] = true;
                remaining -= 1;
                progressed = true;
            }
            debug_assert!(progressed, "block-cut structure must stay connected");
        }
        cycle.extend(assembly);
    }

    let d = CircularDrawing { cycle }.canonicalize();
    d.validate(g)?;
    verify_outer(g, &d, k)?;
    Ok(OuterReport { drawing: Some(d), stats })
}

/// Smallest `k <= k_max` admitting an outer drawing, or `None` when every
/// budget up to the cap fails.
pub fn local_outer_crossing_number(
    g: &Graph,
    k_max: usize,
    cfg: &SolverConfig,
) -> Result<Option<usize>> {
    for k in 0..=k_max {
        if solve_outer(g, k, cfg)?.is_some() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
