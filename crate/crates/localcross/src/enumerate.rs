//! Catalogs of small graphs up to isomorphism.  The exhaustive test suites
//! iterate these instead of raw labelled graphs so the solver/oracle
//! cross-checks stay tractable.
//!
//! General graphs are built by vertex augmentation and deduplicated with a
//! brute-force canonical form (minimum edge bitmask over all vertex
//! permutations), which is fine for the sizes we need.  Trees go through the
//! classic rooted-at-the-center string code instead, so they scale a couple
//! of vertices further.

use crate::graph::Graph;
use std::collections::HashSet;

/// Calls `f` with every permutation of `0..n` (Heap's algorithm, no
/// allocation per step).
pub fn for_each_permutation<F: FnMut(&[usize])>(n: usize, mut f: F) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Index of the unordered pair {i, j} (i < j) in the triangular layout.
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// For each permutation, where every pair index lands.
fn build_perm_tables(n: usize) -> Vec<Vec<u32>> {
    let mut tables = Vec::new();
    for_each_permutation(n, |p| {
        let mut t = vec![0u32; n * (n - 1) / 2];
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
                t[pair_index(n, i, j)] = pair_index(n, a, b) as u32;
            }
        }
        tables.push(t);
    });
    tables
}

fn canonical_mask_with(tables: &[Vec<u32>], mask: u64) -> u64 {
    let mut best = u64::MAX;
    for t in tables {
        let mut m = 0u64;
        let mut bits = mask;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            m |= 1u64 << t[b];
            bits &= bits - 1;
        }
        best = best.min(m);
    }
    best
}

fn graph_to_mask(g: &Graph) -> u64 {
    let n = g.vertex_count();
    let mut mask = 0u64;
    for e in g.edges() {
        mask |= 1u64 << pair_index(n, e.u, e.v);
    }
    mask
}

fn mask_to_graph(n: usize, mask: u64) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if mask >> pair_index(n, i, j) & 1 == 1 {
                g.add_edge(i, j).expect("mask edges are valid");
            }
        }
    }
    g
}

/// Isomorphism-invariant fingerprint.  Equal masks mean isomorphic graphs.
pub fn canonical_mask(g: &Graph) -> u64 {
    let n = g.vertex_count();
    assert!(n <= 8, "brute-force canonical form is limited to 8 vertices");
    canonical_mask_with(&build_perm_tables(n), graph_to_mask(g))
}

/// All graphs on exactly `n` vertices, one per isomorphism class, ordered by
/// (edge count, canonical mask).
pub fn graphs(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n), "catalog is limited to 1..=8 vertices");
    let mut masks: Vec<u64> = vec![0];
    for sz in 2..=n {
        let tables = build_perm_tables(sz);
        // Re-index the pairs of the smaller graph inside the larger one.
        let mut embed = vec![0u32; (sz - 1) * (sz - 2) / 2];
        for i in 0..sz - 1 {
            for j in i + 1..sz - 1 {
                embed[pair_index(sz - 1, i, j)] = pair_index(sz, i, j) as u32;
            }
        }
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for &m in &masks {
            let mut base = 0u64;
            let mut bits = m;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                base |= 1u64 << embed[b];
                bits &= bits - 1;
            }
            for nb in 0u64..1 << (sz - 1) {
                let mut cand = base;
                for v in 0..sz - 1 {
                    if nb >> v & 1 == 1 {
                        cand |= 1u64 << pair_index(sz, v, sz - 1);
                    }
                }
                let c = canonical_mask_with(&tables, cand);
                if seen.insert(c) {
                    next.push(c);
                }
            }
        }
        masks = next;
    }
    masks.sort_by_key(|&m| (m.count_ones(), m));
    masks.into_iter().map(|m| mask_to_graph(n, m)).collect()
}

/// The connected members of [`graphs`], same order.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    graphs(n).into_iter().filter(Graph::is_connected).collect()
}

fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(adj, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Center-rooted string code; equal codes mean isomorphic trees.
pub fn tree_code(g: &Graph) -> String {
    let n = g.vertex_count();
    assert!(g.is_tree(), "tree code needs a tree");
    if n == 1 {
        return "()".into();
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    // Strip leaves until one or two center vertices remain.  A survivor can
    // reach degree 0 (its whole last layer went at once), so aliveness is
    // tracked separately from degree.
    let mut deg: Vec<usize> = (0..n).map(|v| adj[v].len()).collect();
    let mut removed = vec![false; n];
    let mut alive = n;
    let mut frontier: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    while alive > 2 {
        let mut nextf = Vec::new();
        for &v in &frontier {
            removed[v] = true;
            alive -= 1;
            for &w in &adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        nextf.push(w);
                    }
                }
            }
        }
        frontier = nextf;
    }
    let centers: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    match centers.as_slice() {
        [c] => rooted_code(&adj, *c, usize::MAX),
        [a, b] => {
            let mut pair = [rooted_code(&adj, *a, *b), rooted_code(&adj, *b, *a)];
            pair.sort();
            format!("[{}{}]", pair[0], pair[1])
        }
        _ => unreachable!("a tree has one or two centers"),
    }
}

/// All trees on exactly `n` vertices, one per isomorphism class, ordered by
/// their string code.
pub fn trees(n: usize) -> Vec<Graph> {
    assert!(n >= 1);
    let mut cur: Vec<Vec<(usize, usize)>> = vec![vec![]];
    for sz in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &cur {
            for attach in 0..sz - 1 {
                let mut edges = t.clone();
                edges.push((attach, sz - 1));
                let g = Graph::from_edges(sz, edges.iter().copied()).unwrap();
                let code = tree_code(&g);
                if seen.insert(code) {
                    next.push(edges);
                }
            }
        }
        cur = next;
    }
    let mut coded: Vec<(String, Vec<(usize, usize)>)> = cur
        .into_iter()
        .map(|edges| {
            let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
            (tree_code(&g), edges)
        })
        .collect();
    coded.sort();
    coded
        .into_iter()
        .map(|(_, edges)| Graph::from_edges(n, edges).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_count() {
        let mut count = 0;
        for_each_permutation(4, |_| count += 1);
        assert_eq!(count, 24);
        let mut seen = HashSet::new();
        for_each_permutation(4, |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn graph_counts_match_known_sequences() {
        assert_eq!(
            (1..=6).map(|n| graphs(n).len()).collect::<Vec<_>>(),
            vec![1, 2, 4, 11, 34, 156]
        );
        assert_eq!(
            (1..=6).map(|n| connected_graphs(n).len()).collect::<Vec<_>>(),
            vec![1, 1, 2, 6, 21, 112]
        );
    }

    #[test]
    fn tree_counts_match_known_sequence() {
        assert_eq!(
            (1..=9).map(|n| trees(n).len()).collect::<Vec<_>>(),
            vec![1, 1, 1, 2, 3, 6, 11, 23, 47]
        );
    }

    #[test]
    fn canonical_mask_is_permutation_invariant() {
        let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let c5_relabeled =
            Graph::from_edges(5, [(2, 4), (4, 1), (1, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_mask(&c5), canonical_mask(&c5_relabeled));
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(canonical_mask(&p4), canonical_mask(&star));
    }

    #[test]
    fn catalog_has_no_duplicates() {
        let all = graphs(5);
        let masks: HashSet<u64> = all.iter().map(canonical_mask).collect();
        assert_eq!(masks.len(), all.len());
    }

    #[test]
    fn tree_code_distinguishes_path_from_star() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(tree_code(&p4), tree_code(&star));
        let p4_relabeled = Graph::from_edges(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(tree_code(&p4), tree_code(&p4_relabeled));
    }
}
