//! SVG and Graphviz output for certificate drawings.
//!
//! The pictures are meant for eyeballing certificates: vertices are laid out
//! exactly as the drawing dictates (on a circle, or on two horizontal rows),
//! every edge crossing is marked with a small ring at the actual intersection
//! point, and every crossed edge carries its crossing count at its midpoint.
//! Output is deterministic: coordinates are formatted with two decimals and
//! elements are emitted in a fixed order.

use std::fmt::Write as _;

use crate::bipartite::BipartiteInstance;
use crate::drawing::{
    circular_crossings_per_edge, two_layer_crossings_per_edge, CircularDrawing, TwoLayerDrawing,
};
use crate::error::Result;
use crate::graph::Graph;

const CIRCLE_SIZE: f64 = 500.0;
const CIRCLE_RADIUS: f64 = 200.0;
const ROW_SPACING: f64 = 60.0;
const ROW_MARGIN: f64 = 50.0;
const TOP_ROW_Y: f64 = 50.0;
const BOTTOM_ROW_Y: f64 = 250.0;

fn fmt2(x: f64) -> String {
    // Avoid "-0.00" so equal drawings render to identical bytes.
    let s = format!("{x:.2}");
    if s == "-0.00" { "0.00".into() } else { s }
}

/// Intersection of the properly crossing segments `a0a1` and `b0b1`.
fn intersection(a0: (f64, f64), a1: (f64, f64), b0: (f64, f64), b1: (f64, f64)) -> (f64, f64) {
    let d = (a1.0 - a0.0, a1.1 - a0.1);
    let e = (b1.0 - b0.0, b1.1 - b0.1);
    let denom = d.0 * e.1 - d.1 * e.0;
    debug_assert!(denom.abs() > 1e-9, "segments are parallel");
    let w = (b0.0 - a0.0, b0.1 - a0.1);
    let t = (w.0 * e.1 - w.1 * e.0) / denom;
    (a0.0 + t * d.0, a0.1 + t * d.1)
}

struct SvgBuilder {
    edges: String,
    crossings: String,
    labels: String,
    vertices: String,
}

impl SvgBuilder {
    fn new() -> SvgBuilder {
        SvgBuilder {
            edges: String::new(),
            crossings: String::new(),
            labels: String::new(),
            vertices: String::new(),
        }
    }

    fn edge(&mut self, a: (f64, f64), b: (f64, f64)) {
        let _ = writeln!(
            self.edges,
            r##"    <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#556" stroke-width="1.5"/>"##,
            fmt2(a.0),
            fmt2(a.1),
            fmt2(b.0),
            fmt2(b.1)
        );
    }

    fn crossing(&mut self, p: (f64, f64)) {
        let _ = writeln!(
            self.crossings,
            r##"    <circle class="crossing" cx="{}" cy="{}" r="4" fill="none" stroke="#c0392b" stroke-width="1.5"/>"##,
            fmt2(p.0),
            fmt2(p.1)
        );
    }

    fn count_label(&mut self, p: (f64, f64), count: usize) {
        let _ = writeln!(
            self.labels,
            r##"    <text class="count" x="{}" y="{}" text-anchor="middle" font-size="10" fill="#c0392b">{count}</text>"##,
            fmt2(p.0),
            fmt2(p.1 - 4.0)
        );
    }

    fn vertex(&mut self, p: (f64, f64), id: usize) {
        let _ = writeln!(
            self.vertices,
            r##"    <circle cx="{}" cy="{}" r="10" fill="#fff" stroke="#000"/>"##,
            fmt2(p.0),
            fmt2(p.1)
        );
        let _ = writeln!(
            self.vertices,
            r#"    <text x="{}" y="{}" text-anchor="middle" dominant-baseline="central" font-family="monospace" font-size="11">{id}</text>"#,
            fmt2(p.0),
            fmt2(p.1)
        );
    }

    fn finish(self, width: f64, height: f64) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = fmt2(width),
            h = fmt2(height)
        );
        for (class, body) in [
            ("edges", &self.edges),
            ("crossings", &self.crossings),
            ("labels", &self.labels),
            ("vertices", &self.vertices),
        ] {
            let _ = writeln!(out, r#"  <g class="{class}">"#);
            out.push_str(body);
            let _ = writeln!(out, "  </g>");
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Renders a circular drawing as SVG: vertices on a circle in cycle order,
/// edges as straight chords.
pub fn circular_svg(g: &Graph, d: &CircularDrawing) -> Result<String> {
    let counts = circular_crossings_per_edge(g, d)?;
    let n = g.vertex_count();
    let c = CIRCLE_SIZE / 2.0;
    let mut pos = vec![(c, c); n];
    for (i, &v) in d.cycle.iter().enumerate() {
        let angle = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
        pos[v] = (c + CIRCLE_RADIUS * angle.sin(), c - CIRCLE_RADIUS * angle.cos());
    }
    let mut svg = SvgBuilder::new();
    let edges = g.edges();
    for e in edges {
        svg.edge(pos[e.u], pos[e.v]);
    }
    let mut ring = vec![usize::MAX; n];
    for (i, &v) in d.cycle.iter().enumerate() {
        ring[v] = i;
    }
    let interleave = |e: &crate::graph::Edge, f: &crate::graph::Edge| {
        if e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v {
            return false;
        }
        let (a, b) = (ring[e.u].min(ring[e.v]), ring[e.u].max(ring[e.v]));
        let inside = |x: usize| a < x && x < b;
        inside(ring[f.u]) != inside(ring[f.v])
    };
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if interleave(&edges[i], &edges[j]) {
                let (e, f) = (&edges[i], &edges[j]);
                svg.crossing(intersection(pos[e.u], pos[e.v], pos[f.u], pos[f.v]));
            }
        }
    }
    for (e, &count) in edges.iter().zip(&counts) {
        if count > 0 {
            let mid = ((pos[e.u].0 + pos[e.v].0) / 2.0, (pos[e.u].1 + pos[e.v].1) / 2.0);
            svg.count_label(mid, count);
        }
    }
    for &v in &d.cycle {
        svg.vertex(pos[v], v);
    }
    Ok(svg.finish(CIRCLE_SIZE, CIRCLE_SIZE))
}

/// Renders a 2-layer drawing as SVG: the X layer on top, Y below, both in
/// drawing order.
pub fn two_layer_svg(inst: &BipartiteInstance, d: &TwoLayerDrawing) -> Result<String> {
    let counts = two_layer_crossings_per_edge(inst, d)?;
    let n = inst.graph.vertex_count();
    let mut pos = vec![(0.0, 0.0); n];
    for (i, &v) in d.x_order.iter().enumerate() {
        pos[v] = (ROW_MARGIN + ROW_SPACING * i as f64, TOP_ROW_Y);
    }
    for (i, &v) in d.y_order.iter().enumerate() {
        pos[v] = (ROW_MARGIN + ROW_SPACING * i as f64, BOTTOM_ROW_Y);
    }
    let mut svg = SvgBuilder::new();
    let edges = inst.graph.edges();
    for e in edges {
        svg.edge(pos[e.u], pos[e.v]);
    }
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if crate::drawing::two_layer_cross(inst, d, edges[i], edges[j])? {
                let (e, f) = (&edges[i], &edges[j]);
                svg.crossing(intersection(pos[e.u], pos[e.v], pos[f.u], pos[f.v]));
            }
        }
    }
    for (e, &count) in edges.iter().zip(&counts) {
        if count > 0 {
            let mid = ((pos[e.u].0 + pos[e.v].0) / 2.0, (pos[e.u].1 + pos[e.v].1) / 2.0);
            svg.count_label(mid, count);
        }
    }
    for &v in d.x_order.iter().chain(&d.y_order) {
        svg.vertex(pos[v], v);
    }
    let cols = d.x_order.len().max(d.y_order.len()).max(1);
    let width = 2.0 * ROW_MARGIN + ROW_SPACING * (cols - 1) as f64;
    Ok(svg.finish(width, BOTTOM_ROW_Y + ROW_MARGIN))
}

/// Renders a circular drawing as Graphviz dot using the `circo` layout,
/// emitting the vertices in cycle order.
pub fn circular_dot(g: &Graph, d: &CircularDrawing) -> Result<String> {
    d.validate(g)?;
    let mut out = String::from("graph G {\n  layout=circo;\n  node [shape=circle];\n");
    for &v in &d.cycle {
        let _ = writeln!(out, "  {v};");
    }
    for e in g.edges() {
        let _ = writeln!(out, "  {} -- {};", e.u, e.v);
    }
    out.push_str("}\n");
    Ok(out)
}

/// Renders a 2-layer drawing as Graphviz dot: two ranks, with invisible
/// chain edges pinning the order inside each rank.
pub fn two_layer_dot(inst: &BipartiteInstance, d: &TwoLayerDrawing) -> Result<String> {
    d.validate(inst)?;
    let mut out = String::from("graph G {\n  rankdir=TB;\n  ranksep=2;\n  node [shape=circle];\n");
    for (rank, row) in [("min", &d.x_order), ("max", &d.y_order)] {
        let _ = write!(out, "  {{ rank={rank};");
        for &v in row.iter() {
            let _ = write!(out, " {v};");
        }
        out.push_str(" }\n");
    }
    for row in [&d.x_order, &d.y_order] {
        for pair in row.windows(2) {
            let _ = writeln!(out, "  {} -- {} [style=invis];", pair[0], pair[1]);
        }
    }
    for e in inst.graph.edges() {
        let _ = writeln!(out, "  {} -- {};", e.u, e.v);
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> (Graph, CircularDrawing) {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        (g, CircularDrawing { cycle: vec![0, 1, 2, 3] })
    }

    #[test]
    fn k4_svg_marks_the_single_crossing() {
        let (g, d) = k4();
        let svg = circular_svg(&g, &d).unwrap();
        assert_eq!(svg.matches(r#"class="crossing""#).count(), 1);
        // Both diagonals are crossed once.
        assert_eq!(svg.matches(r#"class="count""#).count(), 2);
        assert!(svg.starts_with("<svg "));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn crossing_free_cycle_has_no_markers() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let d = CircularDrawing { cycle: vec![0, 1, 2, 3, 4] };
        let svg = circular_svg(&g, &d).unwrap();
        assert_eq!(svg.matches(r#"class="crossing""#).count(), 0);
        assert_eq!(svg.matches(r#"class="count""#).count(), 0);
        assert_eq!(svg.matches("<circle").count(), 5);
    }

    #[test]
    fn diagonal_marker_sits_at_the_centre() {
        let (g, d) = k4();
        let svg = circular_svg(&g, &d).unwrap();
        assert!(svg.contains(r#"class="crossing" cx="250.00" cy="250.00""#), "{svg}");
    }

    #[test]
    fn two_layer_svg_marks_inversions() {
        let g = Graph::from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let inst = BipartiteInstance::new(g, vec![0, 1], None).unwrap();
        let d = TwoLayerDrawing { x_order: vec![0, 1], y_order: vec![2, 3] };
        let svg = two_layer_svg(&inst, &d).unwrap();
        assert_eq!(svg.matches(r#"class="crossing""#).count(), 1);
        // The two crossing edges are labelled; the outer two are not.
        assert_eq!(svg.matches(r#"class="count""#).count(), 2);
    }

    #[test]
    fn rendering_is_deterministic() {
        let (g, d) = k4();
        assert_eq!(circular_svg(&g, &d).unwrap(), circular_svg(&g, &d).unwrap());
        assert_eq!(circular_dot(&g, &d).unwrap(), circular_dot(&g, &d).unwrap());
    }

    #[test]
    fn dot_output_shape() {
        let (g, d) = k4();
        let dot = circular_dot(&g, &d).unwrap();
        assert!(dot.starts_with("graph G {"));
        assert!(dot.contains("layout=circo"));
        assert!(dot.contains("  0 -- 1;"));

        let g = Graph::from_edges(3, [(0, 2), (1, 2)]).unwrap();
        let inst = BipartiteInstance::new(g, vec![0, 1], None).unwrap();
        let d = TwoLayerDrawing { x_order: vec![1, 0], y_order: vec![2] };
        let dot = two_layer_dot(&inst, &d).unwrap();
        assert!(dot.contains("{ rank=min; 1; 0; }"));
        assert!(dot.contains("1 -- 0 [style=invis];"));
    }

    #[test]
    fn invalid_drawings_are_refused() {
        let (g, _) = k4();
        let bad = CircularDrawing { cycle: vec![0, 1, 2, 2] };
        assert!(circular_svg(&g, &bad).is_err());
        assert!(circular_dot(&g, &bad).is_err());
    }
}
