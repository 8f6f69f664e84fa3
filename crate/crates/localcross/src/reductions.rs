//! Instance generators tying the drawing problems to two classic hard
//! problems.
//!
//! * Partition reduces to the weighted one-sided 2-layer problem: the gadget
//!   in [`partition_to_weighted_one_sided`] is drawable within its budget
//!   exactly when the input multiset splits into two halves of equal sum.
//! * Tree bandwidth reduces to the two-sided 2-layer problem
//!   ([`bandwidth_tree_to_two_sided`]) and, for budgets `b >= 3`, to the
//!   outer problem ([`bandwidth_to_outer`]).  A cheaper apex construction
//!   ([`tree_to_apex`]) brackets the bandwidth between outer crossing
//!   numbers, with [`apex_drawing_from_layout`] and
//!   [`layout_from_outer_drawing`] converting witnesses in both directions.
//!
//! All generators document their vertex id layout so tests and external
//! tools can address gadget parts directly.

use crate::bipartite::BipartiteInstance;
use crate::drawing::{CircularDrawing, LinearLayout};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Weighted one-sided instance produced from a Partition input.
#[derive(Debug, Clone)]
pub struct PartitionGadget {
    pub instance: BipartiteInstance,
    /// Load budget; the gadget is drawable within it iff the elements split
    /// into two equal-sum halves (sum mode).
    pub k: u64,
}

/// Builds the Partition gadget for the given multiset.
///
/// Layout for `n` elements: X is `x_0..x_{n+1}` with ids `0..=n+1` in that
/// fixed order; Y is the shared vertex `y_mid = n + 2` plus `y_i = n + 2 + i`
/// for element `i` (1-based).  The guard edges `(x_0, y_mid)` and
/// `(x_{n+1}, y_mid)` have weight 1, the element edge `(x_i, y_i)` has weight
/// `2 a_i`, and the budget is `k = sum + 1`.  Every element edge must cross a
/// guard edge, so the guards' loads count the elements placed on each side of
/// `y_mid` twice, and both stay within budget exactly for an even split.
///
/// Odd totals are rejected: Partition is then trivially NO, but the gadget
/// would still be drawable, so it only decides the problem for even sums.
pub fn partition_to_weighted_one_sided(elements: &[u64]) -> Result<PartitionGadget> {
    if elements.is_empty() {
        return Err(Error::invalid("Partition needs at least one element"));
    }
    if elements.iter().any(|&a| a == 0) {
        return Err(Error::invalid("Partition elements must be positive"));
    }
    let mut sum: u64 = 0;
    for &a in elements {
        sum = sum
            .checked_add(a)
            .ok_or_else(|| Error::invalid("element total overflows"))?;
        if a.checked_mul(2).is_none() {
            return Err(Error::invalid(format!("element {a} too large to weight")));
        }
    }
    if sum % 2 == 1 {
        return Err(Error::invalid(format!(
            "element total {sum} is odd: Partition is trivially NO and the gadget \
             would not reflect it"
        )));
    }
    let n = elements.len();
    let y_mid = n + 2;
    let mut g = Graph::new(2 * n + 3);
    g.add_weighted_edge(0, y_mid, 1)?;
    g.add_weighted_edge(n + 1, y_mid, 1)?;
    for (i, &a) in elements.iter().enumerate() {
        g.add_weighted_edge(i + 1, y_mid + i + 1, 2 * a)?;
    }
    let x: Vec<usize> = (0..=n + 1).collect();
    let instance = BipartiteInstance::new(g, x.clone(), Some(x))?;
    Ok(PartitionGadget { instance, k: sum + 1 })
}

/// Two-sided instance produced from a tree and a bandwidth budget.
#[derive(Debug, Clone)]
pub struct BandwidthGadget {
    pub graph: Graph,
    /// Crossing budget; the gadget is two-sided k-planar iff the tree has
    /// bandwidth at most `b`.
    pub k: usize,
    pub leaves_per_vertex: usize,
}

/// Builds the bandwidth gadget: subdivide every tree edge once and attach
/// `2 b^2` pendant leaves to every original vertex.
///
/// Ids: original vertices keep `0..n`; the subdivision vertex of edge `j`
/// (in the tree's edge order) is `n + j`; pendant `t` of original vertex `v`
/// is `n + (n - 1) + v * 2b^2 + t`.  One layer holds exactly the original
/// vertices.  The budget is `k = b^3 - b^2 + 2b - 2`.
pub fn bandwidth_tree_to_two_sided(tree: &Graph, b: usize) -> Result<BandwidthGadget> {
    if tree.is_weighted() {
        return Err(Error::invalid("bandwidth gadgets use unweighted trees"));
    }
    if !tree.is_tree() {
        return Err(Error::invalid("input graph is not a tree"));
    }
    if b == 0 {
        return Err(Error::invalid("bandwidth budget must be at least 1"));
    }
    let n = tree.vertex_count();
    let m = tree.edges().len();
    let l = 2 * b * b;
    let mut g = Graph::new(n + m + n * l);
    for (j, e) in tree.edges().iter().enumerate() {
        g.add_edge(e.u, n + j)?;
        g.add_edge(e.v, n + j)?;
    }
    for v in 0..n {
        for t in 0..l {
            g.add_edge(v, n + m + v * l + t)?;
        }
    }
    let k = b * b * b - b * b + 2 * b - 2;
    Ok(BandwidthGadget { graph: g, k, leaves_per_vertex: l })
}

/// Adds an apex vertex (id `n`) adjacent to every vertex of the tree.
///
/// Writing `b` for the tree's bandwidth and `k*` for the apex graph's least
/// outer crossing budget: `b <= k* + 1` and `k* <= max(0, 5b - 5)`.
pub fn tree_to_apex(tree: &Graph) -> Result<(Graph, usize)> {
    if tree.is_weighted() {
        return Err(Error::invalid("apex construction uses unweighted trees"));
    }
    if !tree.is_tree() {
        return Err(Error::invalid("input graph is not a tree"));
    }
    let n = tree.vertex_count();
    let mut g = Graph::new(n + 1);
    for e in tree.edges() {
        g.add_edge(e.u, e.v)?;
    }
    for v in 0..n {
        g.add_edge(v, n)?;
    }
    Ok((g, n))
}

/// Outer drawing of an apex graph read off a linear layout of the tree: the
/// apex first, then the tree vertices in layout order.  A layout of
/// bandwidth `b` puts at most `2b - 2` crossings on every apex edge and at
/// most `5b - 5` on every tree edge.
pub fn apex_drawing_from_layout(
    apex_graph: &Graph,
    apex: usize,
    layout: &LinearLayout,
) -> Result<CircularDrawing> {
    let n = apex_graph.vertex_count();
    if apex >= n {
        return Err(Error::invalid(format!("apex {apex} out of range")));
    }
    let mut seen = vec![false; n];
    seen[apex] = true;
    for &v in &layout.order {
        if v >= n || seen[v] {
            return Err(Error::invalid(format!("layout entry {v} out of range or repeated")));
        }
        seen[v] = true;
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::invalid("layout must place every non-apex vertex"));
    }
    let mut cycle = Vec::with_capacity(n);
    cycle.push(apex);
    cycle.extend_from_slice(&layout.order);
    Ok(CircularDrawing { cycle })
}

/// Linear layout read off an outer drawing of an apex graph: rotate the
/// cycle to start at the apex and drop it.  If the drawing has at most `k`
/// crossings per edge, the layout's bandwidth on the tree is at most
/// `k + 1`.
pub fn layout_from_outer_drawing(d: &CircularDrawing, apex: usize) -> Result<LinearLayout> {
    let p = d
        .cycle
        .iter()
        .position(|&x| x == apex)
        .ok_or_else(|| Error::invalid(format!("apex {apex} not in the drawing")))?;
    let order: Vec<usize> =
        d.cycle[p + 1..].iter().chain(d.cycle[..p].iter()).copied().collect();
    Ok(LinearLayout { order })
}

/// A row of `cliques()` copies of `K_t`, consecutive copies sharing one
/// vertex.  Clique `i` (1-based) holds members `j = 1..=t` with global id
/// `(i - 1)(t - 1) + j - 1`, so member `t` of clique `i` is member 1 of
/// clique `i + 1`.
#[derive(Debug, Clone, Copy)]
pub struct CliquePath {
    pub t: usize,
    /// Number of junction points: cliques plus one.
    pub l: usize,
}

impl CliquePath {
    pub fn new(t: usize, l: usize) -> Result<CliquePath> {
        if t < 2 || l < 2 {
            return Err(Error::invalid(format!("clique path needs t >= 2 and l >= 2, got ({t}, {l})")));
        }
        Ok(CliquePath { t, l })
    }

    pub fn cliques(&self) -> usize {
        self.l - 1
    }

    pub fn vertex_count(&self) -> usize {
        (self.l - 1) * (self.t - 1) + 1
    }

    /// Global id of member `j` (1-based) of clique `i` (1-based).
    pub fn id(&self, i: usize, j: usize) -> usize {
        debug_assert!((1..=self.cliques()).contains(&i) && (1..=self.t).contains(&j));
        (i - 1) * (self.t - 1) + j - 1
    }

    /// The junction vertices: both row ends plus every shared vertex.
    pub fn anchors(&self) -> Vec<usize> {
        (0..self.l).map(|i| i * (self.t - 1)).collect()
    }

    /// The junction in the middle of the row; only defined for odd `l`.
    pub fn middle(&self) -> Option<usize> {
        if self.l % 2 == 1 {
            Some((self.l - 1) / 2 * (self.t - 1))
        } else {
            None
        }
    }

    /// All clique edges, in clique order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.cliques() {
            for j in 1..self.t {
                for j2 in j + 1..=self.t {
                    out.push((self.id(i, j), self.id(i, j2)));
                }
            }
        }
        out
    }
}

/// Outer instance produced from a tree and a bandwidth budget `b >= 3`.
#[derive(Debug, Clone)]
pub struct OuterGadget {
    pub graph: Graph,
    /// Crossing budget; the gadget is outer k-planar iff the tree has
    /// bandwidth at most `b`.
    pub k: usize,
    pub apex: usize,
    /// The clique-path gadget every tree vertex is replaced with.
    pub gadget: CliquePath,
}

/// Builds the outer bandwidth gadget: every tree vertex becomes a clique
/// path with `t = 4(b^2 + 1) + 2` and `l = 4b^3 + 1`, an apex vertex is
/// adjacent to every junction of every clique path, and each tree edge links
/// the middle junctions of its endpoints' paths.  Budget `k = 4(b^2+1)^2`.
///
/// Ids: tree vertex `v`'s clique path occupies
/// `v * size .. (v + 1) * size` with its local layout, where `size` is the
/// path's vertex count; the apex comes last.
pub fn bandwidth_to_outer(tree: &Graph, b: usize) -> Result<OuterGadget> {
    if tree.is_weighted() {
        return Err(Error::invalid("bandwidth gadgets use unweighted trees"));
    }
    if !tree.is_tree() {
        return Err(Error::invalid("input graph is not a tree"));
    }
    if b < 3 {
        return Err(Error::invalid("the outer bandwidth gadget needs b >= 3"));
    }
    let t = 4 * (b * b + 1) + 2;
    let l = 4 * b * b * b + 1;
    let cp = CliquePath::new(t, l)?;
    let size = cp.vertex_count();
    let n = tree.vertex_count();
    let apex = n * size;
    let mut g = Graph::new(n * size + 1);
    let local_edges = cp.edges();
    let anchors = cp.anchors();
    for v in 0..n {
        let off = v * size;
        for &(a, b2) in &local_edges {
            g.add_edge(off + a, off + b2)?;
        }
        for &a in &anchors {
            g.add_edge(apex, off + a)?;
        }
    }
    let mid = cp.middle().expect("l = 4b^3 + 1 is odd");
    for e in tree.edges() {
        g.add_edge(e.u * size + mid, e.v * size + mid)?;
    }
    Ok(OuterGadget { graph: g, k: 4 * (b * b + 1) * (b * b + 1), apex, gadget: cp })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{circular_crossings_per_edge, layout_bandwidth, two_layer_weighted_load, WeightMode};
    use crate::one_sided::solve_one_sided_weighted;
    use crate::oracle::{bandwidth_oracle, one_sided_weighted_oracle, two_sided_oracle, OracleLimits};
    use crate::outer::{local_outer_crossing_number, solve_outer};
    use crate::two_sided::solve_two_sided;
    use crate::SolverConfig;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    #[test]
    fn partition_gadget_layout() {
        let gadget = partition_to_weighted_one_sided(&[1, 2, 3]).unwrap();
        let g = &gadget.instance.graph;
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(gadget.instance.x_side(), &[0, 1, 2, 3, 4]);
        assert_eq!(gadget.instance.fixed_x_order.as_deref(), Some(&[0, 1, 2, 3, 4][..]));
        assert_eq!(g.weights(), &[1, 1, 2, 4, 6]);
        assert_eq!(gadget.k, 7);
        // Guards meet y_mid, elements their own Y vertex.
        assert!(g.edge_id(0, 5).is_some() && g.edge_id(4, 5).is_some());
        assert!(g.edge_id(2, 7).is_some());
    }

    #[test]
    fn partition_gadget_matches_partition_answers() {
        let cfg = SolverConfig::default();
        let limits = OracleLimits::default();
        for (elements, want) in [
            (vec![1u64, 2, 3], true), // 1 + 2 = 3
            (vec![1, 1], true),
            (vec![1, 3], false),
            (vec![2], false),
        ] {
            let gadget = partition_to_weighted_one_sided(&elements).unwrap();
            let inst = &gadget.instance;
            let got = solve_one_sided_weighted(inst, gadget.k, WeightMode::Sum, &cfg).unwrap();
            let oracle = one_sided_weighted_oracle(inst, gadget.k, WeightMode::Sum, &limits).unwrap();
            assert_eq!(got.is_some(), want, "solver on {elements:?}");
            assert_eq!(oracle.is_some(), want, "oracle on {elements:?}");
            if let Some(d) = got {
                let load = two_layer_weighted_load(inst, &d, WeightMode::Sum).unwrap();
                assert!(load.iter().all(|&w| w <= gadget.k));
            }
        }
    }

    #[test]
    fn partition_gadget_rejects_bad_inputs() {
        assert!(partition_to_weighted_one_sided(&[]).is_err());
        assert!(partition_to_weighted_one_sided(&[1, 0]).is_err());
        let odd = partition_to_weighted_one_sided(&[1, 1, 3]).unwrap_err();
        assert!(odd.to_string().contains("odd"), "{odd}");
    }

    #[test]
    fn bandwidth_gadget_layout() {
        let gadget = bandwidth_tree_to_two_sided(&path(3), 2).unwrap();
        assert_eq!(gadget.leaves_per_vertex, 8);
        assert_eq!(gadget.k, 6);
        // 3 originals + 2 subdivisions + 24 pendants.
        assert_eq!(gadget.graph.vertex_count(), 29);
        assert_eq!(gadget.graph.degree(0), 9);
        assert_eq!(gadget.graph.degree(1), 10);
        assert_eq!(gadget.graph.degree(3), 2); // subdivision vertex
        assert_eq!(bandwidth_tree_to_two_sided(&path(2), 1).unwrap().k, 0);
        assert_eq!(bandwidth_tree_to_two_sided(&path(2), 3).unwrap().k, 22);
    }

    #[test]
    fn bandwidth_gadget_decides_small_trees() {
        let cfg = SolverConfig::default();
        // Paths have bandwidth 1, so their b = 1 gadgets are caterpillars.
        for n in [2, 3] {
            let gadget = bandwidth_tree_to_two_sided(&path(n), 1).unwrap();
            assert!(solve_two_sided(&gadget.graph, gadget.k, &cfg).unwrap().is_some(), "P{n}");
        }
        let p2 = bandwidth_tree_to_two_sided(&path(2), 1).unwrap();
        let inst = BipartiteInstance::from_graph(p2.graph.clone()).unwrap();
        let oracle = two_sided_oracle(&inst, p2.k, &OracleLimits::default()).unwrap();
        assert!(oracle.is_some());
        // A 3-leaf star has bandwidth 2; its b = 1 gadget must fail.
        let gadget = bandwidth_tree_to_two_sided(&star(3), 1).unwrap();
        assert!(solve_two_sided(&gadget.graph, gadget.k, &cfg).unwrap().is_none());
    }

    #[test]
    fn bandwidth_gadget_rejects_bad_inputs() {
        assert!(bandwidth_tree_to_two_sided(&path(3), 0).is_err());
        let triangle = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(bandwidth_tree_to_two_sided(&triangle, 2).is_err());
    }

    #[test]
    fn apex_path_is_outerplanar() {
        let (g, apex) = tree_to_apex(&path(3)).unwrap();
        assert_eq!(apex, 3);
        assert_eq!(g.edges().len(), 5);
        let cfg = SolverConfig::default();
        assert_eq!(local_outer_crossing_number(&g, 5, &cfg).unwrap(), Some(0));
    }

    #[test]
    fn apex_brackets_bandwidth() {
        let cfg = SolverConfig::default();
        let limits = OracleLimits::default();
        for tree in [path(4), star(3), star(4)] {
            let b = bandwidth_oracle(&tree, &limits).unwrap();
            let (g, apex) = tree_to_apex(&tree).unwrap();
            let cap = 5 * b.max(1) - 5;
            let k = local_outer_crossing_number(&g, cap, &cfg)
                .unwrap()
                .expect("bound guarantees a drawing within the cap");
            assert!(b <= k + 1, "b = {b}, k* = {k}");
            let d = solve_outer(&g, k, &cfg).unwrap().unwrap();
            let layout = layout_from_outer_drawing(&d, apex).unwrap();
            assert!(layout_bandwidth(&tree, &layout).unwrap() <= k + 1);
        }
    }

    #[test]
    fn layout_to_drawing_and_back() {
        let tree = path(5);
        let (g, apex) = tree_to_apex(&tree).unwrap();
        let layout = LinearLayout { order: vec![0, 1, 2, 3, 4] };
        let d = apex_drawing_from_layout(&g, apex, &layout).unwrap();
        // Bandwidth 1: the drawing is crossing-free.
        assert!(circular_crossings_per_edge(&g, &d).unwrap().iter().all(|&c| c == 0));
        assert_eq!(layout_from_outer_drawing(&d, apex).unwrap().order, layout.order);
        let bad = LinearLayout { order: vec![0, 1, 2, 3] };
        assert!(apex_drawing_from_layout(&g, apex, &bad).is_err());
    }

    #[test]
    fn clique_path_shape() {
        let cp = CliquePath::new(3, 3).unwrap();
        assert_eq!(cp.vertex_count(), 5);
        assert_eq!(cp.anchors(), vec![0, 2, 4]);
        assert_eq!(cp.middle(), Some(2));
        assert_eq!(cp.edges(), vec![(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(CliquePath::new(3, 4).unwrap().middle(), None);
        assert!(CliquePath::new(1, 3).is_err());
    }

    #[test]
    fn outer_gadget_frozen_sizes() {
        let gadget = bandwidth_to_outer(&path(3), 3).unwrap();
        assert_eq!(gadget.gadget.t, 42);
        assert_eq!(gadget.gadget.l, 109);
        assert_eq!(gadget.gadget.vertex_count(), 4429);
        assert_eq!(gadget.k, 400);
        assert_eq!(gadget.graph.vertex_count(), 13288);
        assert_eq!(gadget.apex, 13287);
        // The apex sees every junction of every path.
        assert_eq!(gadget.graph.degree(gadget.apex), 3 * 109);
        // Tree edges join middle junctions.
        let mid = gadget.gadget.middle().unwrap();
        let size = gadget.gadget.vertex_count();
        assert!(gadget.graph.edge_id(mid, size + mid).is_some());
        assert!(gadget.graph.edge_id(size + mid, 2 * size + mid).is_some());
        assert!(gadget.graph.edge_id(mid, 2 * size + mid).is_none());
    }

    #[test]
    fn outer_gadget_rejects_bad_inputs() {
        assert!(bandwidth_to_outer(&path(3), 2).is_err());
        let triangle = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(bandwidth_to_outer(&triangle, 3).is_err());
    }
}
