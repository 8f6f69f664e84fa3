//! Instance builders shared by the benchmarks.

use localcross::graph::Graph;

/// Caterpillar: a spine path with `legs` pendant vertices per spine vertex.
pub fn caterpillar(spine: usize, legs: usize) -> Graph {
    let mut g = Graph::new(spine + spine * legs);
    for v in 1..spine {
        g.add_edge(v - 1, v).unwrap();
    }
    for v in 0..spine {
        for leg in 0..legs {
            g.add_edge(v, spine + v * legs + leg).unwrap();
        }
    }
    g
}

/// Cycle with chords every `step` positions, a dense but outer-drawable mix.
pub fn chorded_cycle(n: usize, step: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 0..n {
        g.add_edge(v, (v + 1) % n).unwrap();
    }
    if step >= 2 {
        for v in (0..n).step_by(step) {
            let w = (v + 2) % n;
            if g.edge_id(v, w).is_none() {
                g.add_edge(v, w).unwrap();
            }
        }
    }
    g
}
