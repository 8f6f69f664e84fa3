//! Shared helpers for the integration suites: independent re-implementations
//! of the structural notions the solvers are tested against.  Everything here
//! is deliberately naive; these run on small inputs only.

#![allow(dead_code)] // each suite uses its own subset

use localcross::graph::Graph;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Tree whose non-leaf vertices form a path.
pub fn is_caterpillar(g: &Graph) -> bool {
    if !g.is_tree() {
        return false;
    }
    let spine: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) >= 2).collect();
    if spine.is_empty() {
        return true; // a single vertex or a single edge
    }
    // Removing the leaves of a tree leaves a tree; a path is one with all
    // degrees at most two.
    let (h, _) = g.induced(&spine);
    (0..h.vertex_count()).all(|v| h.degree(v) <= 2)
}

fn connected_mask(g: &Graph, mask: u32) -> bool {
    if mask == 0 {
        return false;
    }
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for u in g.neighbors(v) {
            let b = 1u32 << u;
            if mask & b != 0 && seen & b == 0 {
                seen |= b;
                stack.push(u);
            }
        }
    }
    seen == mask
}

fn masks_touch(g: &Graph, a: u32, b: u32) -> bool {
    g.edges().iter().any(|e| {
        let (bu, bv) = (1u32 << e.u, 1u32 << e.v);
        (a & bu != 0 && b & bv != 0) || (a & bv != 0 && b & bu != 0)
    })
}

/// Enumerates partitions of vertex subsets into exactly `blocks` connected
/// branch sets (canonical block labelling, so each unordered partition shows
/// up once) and hands the masks to `check`; true as soon as `check` is.
fn any_branch_partition(g: &Graph, blocks: usize, check: &dyn Fn(&[u32]) -> bool) -> bool {
    fn rec(
        g: &Graph,
        v: usize,
        blocks: usize,
        sets: &mut Vec<u32>,
        check: &dyn Fn(&[u32]) -> bool,
    ) -> bool {
        if v == g.vertex_count() {
            return sets.len() == blocks
                && sets.iter().all(|&m| connected_mask(g, m))
                && check(sets);
        }
        // Leave v out of every branch set.
        if rec(g, v + 1, blocks, sets, check) {
            return true;
        }
        let b = 1u32 << v;
        for i in 0..sets.len() {
            sets[i] |= b;
            if rec(g, v + 1, blocks, sets, check) {
                return true;
            }
            sets[i] &= !b;
        }
        if sets.len() < blocks {
            sets.push(b);
            if rec(g, v + 1, blocks, sets, check) {
                return true;
            }
            sets.pop();
        }
        false
    }
    rec(g, 0, blocks, &mut Vec::new(), check)
}

pub fn has_k4_minor(g: &Graph) -> bool {
    if g.vertex_count() < 4 || g.edges().len() < 6 {
        return false;
    }
    any_branch_partition(g, 4, &|sets| {
        (0..4).all(|i| (i + 1..4).all(|j| masks_touch(g, sets[i], sets[j])))
    })
}

pub fn has_k23_minor(g: &Graph) -> bool {
    if g.vertex_count() < 5 || g.edges().len() < 6 {
        return false;
    }
    any_branch_partition(g, 5, &|sets| {
        // Pick two blocks for the small side; all six cross pairs must touch.
        (0..5).any(|a| {
            (a + 1..5).any(|b| {
                (0..5)
                    .filter(|&x| x != a && x != b)
                    .all(|x| masks_touch(g, sets[a], sets[x]) && masks_touch(g, sets[b], sets[x]))
            })
        })
    })
}

/// Outerplanarity by forbidden minors: sparse and with neither a K4 nor a
/// K_{2,3} minor.
pub fn is_outerplanar(g: &Graph) -> bool {
    let n = g.vertex_count();
    let m = g.edges().len();
    if n >= 2 && m > 2 * n - 3 {
        return false;
    }
    !has_k4_minor(g) && !has_k23_minor(g)
}

/// Number of internally vertex-disjoint u-v paths, via unit-capacity max
/// flow on the vertex-split digraph.
pub fn disjoint_path_count(g: &Graph, s: usize, t: usize) -> usize {
    assert_ne!(s, t);
    let n = g.vertex_count();
    // Node 2v = v entering, 2v+1 = v leaving.  Arcs carry capacity 1; the
    // split arc of s and t is effectively unbounded (we re-add it each time).
    let mut cap = std::collections::HashMap::<(usize, usize), usize>::new();
    for v in 0..n {
        let inner = if v == s || v == t { usize::MAX / 2 } else { 1 };
        cap.insert((2 * v, 2 * v + 1), inner);
    }
    for e in g.edges() {
        cap.insert((2 * e.u + 1, 2 * e.v), 1);
        cap.insert((2 * e.v + 1, 2 * e.u), 1);
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = 0;
    loop {
        // BFS for an augmenting path.
        let mut prev = vec![usize::MAX; 2 * n];
        let mut queue = std::collections::VecDeque::from([source]);
        prev[source] = source;
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for y in 0..2 * n {
                if prev[y] == usize::MAX && cap.get(&(x, y)).copied().unwrap_or(0) > 0 {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[sink] == usize::MAX {
            return flow;
        }
        let mut y = sink;
        while y != source {
            let x = prev[y];
            *cap.get_mut(&(x, y)).unwrap() -= 1;
            *cap.entry((y, x)).or_insert(0) += 1;
            y = x;
        }
        flow += 1;
    }
}

/// Does the multiset split into two halves of equal sum?
pub fn partition_brute_force(elements: &[u64]) -> bool {
    let total: u64 = elements.iter().sum();
    if total % 2 == 1 {
        return false;
    }
    (0u32..1 << elements.len()).any(|mask| {
        let side: u64 = elements
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a)
            .sum();
        side * 2 == total
    })
}

/// Uniform labelled tree on `n` vertices from a random Pruefer sequence.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    assert!(n >= 1);
    if n == 1 {
        return Graph::new(1);
    }
    if n == 2 {
        return Graph::from_edges(2, [(0, 1)]).unwrap();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut need = vec![1usize; n];
    for &x in &seq {
        need[x] += 1;
    }
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
        (0..n).filter(|&v| need[v] == 1).map(std::cmp::Reverse).collect();
    let mut g = Graph::new(n);
    for &x in &seq {
        let std::cmp::Reverse(leaf) = heap.pop().unwrap();
        g.add_edge(leaf, x).unwrap();
        need[x] -= 1;
        if need[x] == 1 {
            heap.push(std::cmp::Reverse(x));
        }
    }
    let std::cmp::Reverse(a) = heap.pop().unwrap();
    let std::cmp::Reverse(b) = heap.pop().unwrap();
    g.add_edge(a, b).unwrap();
    g
}

/// Random connected graph: a random tree plus `extra` distinct chords.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Graph {
    let mut g = random_tree(rng, n);
    let mut absent: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| g.edge_id(u, v).is_none())
        .collect();
    absent.shuffle(rng);
    for &(u, v) in absent.iter().take(extra) {
        g.add_edge(u, v).unwrap();
    }
    g
}

/// Random bipartite graph on fixed sides {0..nx} and {nx..nx+ny} with `m`
/// distinct edges.
pub fn random_bipartite(rng: &mut ChaCha8Rng, nx: usize, ny: usize, m: usize) -> Graph {
    let mut pairs: Vec<(usize, usize)> =
        (0..nx).flat_map(|u| (0..ny).map(move |v| (u, nx + v))).collect();
    pairs.shuffle(rng);
    pairs.truncate(m.min(nx * ny));
    pairs.sort_unstable();
    Graph::from_edges(nx + ny, pairs).unwrap()
}
