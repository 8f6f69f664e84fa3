use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Undirected edge with canonical endpoint order `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

/// Simple undirected graph on dense vertex ids `0..n`.  Parallel edges and
/// self-loops are rejected.  Every edge carries a positive weight, 1 unless
/// stated otherwise; only the weighted 2-layer solver looks at weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    weights: Vec<u64>,
    adj: Vec<Vec<(usize, usize)>>, // (neighbor, edge id)
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, edges: Vec::new(), weights: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: std::borrow::Borrow<(usize, usize)>,
    {
        use std::borrow::Borrow;
        let mut g = Graph::new(n);
        for e in edges {
            let &(u, v) = e.borrow();
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize> {
        self.add_weighted_edge(u, v, 1)
    }

    pub fn add_weighted_edge(&mut self, u: usize, v: usize, w: u64) -> Result<usize> {
        if u >= self.n || v >= self.n {
            return Err(Error::invalid(format!(
                "edge ({u},{v}) out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::invalid(format!("self-loop at vertex {u}")));
        }
        if w == 0 {
            return Err(Error::invalid(format!("edge ({u},{v}) has zero weight")));
        }
        let e = Edge::new(u, v);
        if self.edge_id(e.u, e.v).is_some() {
            return Err(Error::invalid(format!("duplicate edge ({},{})", e.u, e.v)));
        }
        let id = self.edges.len();
        self.edges.push(e);
        self.weights.push(w);
        self.adj[u].push((v, id));
        self.adj[v].push((u, id));
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn weight(&self, edge_id: usize) -> u64 {
        self.weights[edge_id]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.iter().any(|&w| w != 1)
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        if u >= self.n || v >= self.n {
            return None;
        }
        // Scan the smaller adjacency list.
        let (base, other) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[base].iter().find(|&&(nb, _)| nb == other).map(|&(_, id)| id)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` paired with the connecting edge id.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(nb, _)| nb)
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &(nb, _) in &self.adj[v] {
                    if !seen[nb] {
                        seen[nb] = true;
                        stack.push(nb);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    /// Induced subgraph on `verts` (need not be sorted).  Returns the subgraph
    /// over dense ids `0..verts.len()` plus the map from new id to old id.
    pub fn induced(&self, verts: &[usize]) -> (Graph, Vec<usize>) {
        let mut order: Vec<usize> = verts.to_vec();
        order.sort_unstable();
        order.dedup();
        let mut back = vec![usize::MAX; self.n];
        for (new, &old) in order.iter().enumerate() {
            back[old] = new;
        }
        let mut g = Graph::new(order.len());
        for (id, e) in self.edges.iter().enumerate() {
            if back[e.u] != usize::MAX && back[e.v] != usize::MAX {
                g.add_weighted_edge(back[e.u], back[e.v], self.weights[id])
                    .expect("induced edge");
            }
        }
        (g, order)
    }

    /// Proper 2-coloring, if one exists.  `color[v]` is 0 or 1; in each
    /// connected component the smallest vertex gets color 0.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(nb, _) in &self.adj[v] {
                    if color[nb] == u8::MAX {
                        color[nb] = 1 - color[v];
                        queue.push_back(nb);
                    } else if color[nb] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// Vertex sets of the biconnected components (blocks), iterative
    /// Hopcroft-Tarjan.  Isolated vertices form singleton blocks; a bridge is
    /// a two-vertex block.  Blocks are sorted internally and by minimum
    /// vertex, so the output is deterministic.
    pub fn biconnected_components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0usize;
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();

        // Explicit DFS frame: (vertex, parent edge id, adjacency cursor).
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            if self.adj[root].is_empty() {
                disc[root] = timer;
                timer += 1;
                blocks.push(vec![root]);
                continue;
            }
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (v, pe, ref mut cursor)) = stack.last_mut() {
                if *cursor < self.adj[v].len() {
                    let (to, eid) = self.adj[v][*cursor];
                    *cursor += 1;
                    if eid == pe {
                        continue;
                    }
                    if disc[to] == usize::MAX {
                        edge_stack.push((v, to));
                        disc[to] = timer;
                        low[to] = timer;
                        timer += 1;
                        stack.push((to, eid, 0));
                    } else if disc[to] < disc[v] {
                        edge_stack.push((v, to));
                        low[v] = low[v].min(disc[to]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (parent, _, _)) = stack.last_mut() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] >= disc[parent] {
                            // parent is a cut vertex (or root); pop one block.
                            let mut verts = std::collections::BTreeSet::new();
                            while let Some(&(a, b)) = edge_stack.last() {
                                if disc[a] >= disc[v] || (a == parent && b == v) {
                                    verts.insert(a);
                                    verts.insert(b);
                                    edge_stack.pop();
                                    if a == parent && b == v {
                                        break;
                                    }
                                } else {
                                    break;
                                }
                            }
                            blocks.push(verts.into_iter().collect());
                        }
                    }
                }
            }
        }
        blocks.sort();
        blocks
    }

    /// Edge-count feasibility filter.  Outer k-planar graphs satisfy
    /// m <= floor(4.1 * sqrt(k) * n) for k >= 1 and the outerplanar bound
    /// m <= 2n - 3 for k = 0, so a violation certifies NO cheaply.
    pub fn density_guard(&self, k: usize) -> bool {
        let n = self.n as f64;
        let m = self.edges.len();
        if k == 0 {
            m <= (2 * self.n).saturating_sub(3)
        } else {
            m as f64 <= (4.1 * (k as f64).sqrt() * n).floor()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    #[test]
    fn edge_canonicalization_and_lookup() {
        let mut g = Graph::new(4);
        let id = g.add_edge(3, 1).unwrap();
        assert_eq!(g.edges()[id], Edge::new(1, 3));
        assert_eq!(g.edge_id(1, 3), Some(id));
        assert_eq!(g.edge_id(3, 1), Some(id));
        assert!(g.add_edge(1, 3).is_err());
        assert!(g.add_edge(2, 2).is_err());
        assert!(g.add_edge(0, 4).is_err());
    }

    #[test]
    fn components_and_tree_checks() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let comps = g.connected_components();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3, 4]]);
        assert!(!g.is_connected());
        assert!(!g.is_tree());
        assert!(path(4).is_tree());
        assert!(!complete(3).is_tree());
    }

    #[test]
    fn bipartition_of_even_and_odd_cycles() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let col = c4.bipartition().unwrap();
        assert_eq!(col, vec![0, 1, 0, 1]);
        let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(c5.bipartition().is_none());
    }

    #[test]
    fn blocks_of_two_triangles_sharing_a_vertex() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let blocks = g.biconnected_components();
        assert_eq!(blocks, vec![vec![0, 1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn blocks_of_path_are_bridges() {
        let blocks = path(4).biconnected_components();
        assert_eq!(blocks, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
    }

    #[test]
    fn block_of_biconnected_graph_is_everything() {
        let blocks = complete(5).biconnected_components();
        assert_eq!(blocks, vec![vec![0, 1, 2, 3, 4]]);
        // isolated vertex forms a singleton block
        assert_eq!(Graph::new(1).biconnected_components(), vec![vec![0]]);
    }

    #[test]
    fn density_guard_examples() {
        // K5 passes for k = 1: 10 <= floor(4.1 * 5) = 20.
        assert!(complete(5).density_guard(1));
        // K20 fails for k = 1: 190 > floor(4.1 * 20) = 82.
        assert!(!complete(20).density_guard(1));
        // Forests pass for any k >= 1.
        assert!(path(9).density_guard(1));
        assert!(path(9).density_guard(3));
        // k = 0 uses the outerplanar bound.
        assert!(path(9).density_guard(0));
        assert!(!complete(4).density_guard(0)); // 6 > 2*4-3
        assert!(complete(3).density_guard(0)); // 3 <= 3
    }
}
