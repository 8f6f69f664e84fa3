//! Instance and certificate serialization.
//!
//! The text format is line based: a `n m` header, then `m` lines `u v` (or
//! `u v w` for weighted edges), then optionally `X: ...` naming the fixed
//! layer of a 2-layer instance and `order: ...` fixing its left-to-right
//! order.  Lines starting with `#` are comments.  The JSON format carries the
//! same fields.  Digests are SHA-256 over a canonical text rendering, so two
//! files describing the same instance hash identically no matter how their
//! edge lists were ordered.

use crate::bipartite::BipartiteInstance;
use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// A parsed instance file: the graph plus the optional 2-layer annotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub x_side: Option<Vec<usize>>,
    pub fixed_x_order: Option<Vec<usize>>,
}

impl Instance {
    pub fn new(graph: Graph) -> Self {
        Instance { graph, x_side: None, fixed_x_order: None }
    }

    /// Interprets the instance as a 2-layer input, deriving the sides from a
    /// bipartition when no `X:` line was given.
    pub fn to_bipartite(&self) -> Result<BipartiteInstance> {
        match &self.x_side {
            Some(x) => BipartiteInstance::new(
                self.graph.clone(),
                x.clone(),
                self.fixed_x_order.clone(),
            ),
            None => {
                let inst = BipartiteInstance::from_graph(self.graph.clone())?;
                match &self.fixed_x_order {
                    Some(ord) => inst.with_order(ord.clone()),
                    None => Ok(inst),
                }
            }
        }
    }
}

fn parse_usize(tok: &str, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::parse(format!("bad {what}: {tok:?}")))
}

fn parse_vertex_list(rest: &str, what: &str) -> Result<Vec<usize>> {
    rest.split_whitespace().map(|t| parse_usize(t, what)).collect()
}

/// Parses the line-based text format.
pub fn parse_instance_text(input: &str) -> Result<Instance> {
    let mut lines = input
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::parse("empty instance"))?;
    let mut it = header.split_whitespace();
    let n = parse_usize(it.next().unwrap_or(""), "vertex count")?;
    let m = parse_usize(it.next().ok_or_else(|| Error::parse("header needs `n m`"))?, "edge count")?;
    if it.next().is_some() {
        return Err(Error::parse(format!("trailing tokens in header {header:?}")));
    }
    let mut graph = Graph::new(n);
    for _ in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| Error::parse(format!("expected {m} edge lines")))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [u, v] => {
                graph.add_edge(parse_usize(u, "endpoint")?, parse_usize(v, "endpoint")?)?;
            }
            [u, v, w] => {
                graph.add_weighted_edge(
                    parse_usize(u, "endpoint")?,
                    parse_usize(v, "endpoint")?,
                    w.parse().map_err(|_| Error::parse(format!("bad weight: {w:?}")))?,
                )?;
            }
            _ => return Err(Error::parse(format!("bad edge line {line:?}"))),
        }
    }
    let mut inst = Instance::new(graph);
    for line in lines {
        if let Some(rest) = line.strip_prefix("X:") {
            if inst.x_side.is_some() {
                return Err(Error::parse("duplicate X: line"));
            }
            inst.x_side = Some(parse_vertex_list(rest, "X vertex")?);
        } else if let Some(rest) = line.strip_prefix("order:") {
            if inst.fixed_x_order.is_some() {
                return Err(Error::parse("duplicate order: line"));
            }
            inst.fixed_x_order = Some(parse_vertex_list(rest, "order vertex")?);
        } else {
            return Err(Error::parse(format!("unexpected line {line:?}")));
        }
    }
    Ok(inst)
}

/// Renders the text format.  Edges keep their stored (canonical endpoint)
/// form and insertion order; weights are printed only for weighted graphs.
pub fn write_instance_text(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    let weighted = g.is_weighted();
    for (id, e) in g.edges().iter().enumerate() {
        if weighted {
            out.push_str(&format!("{} {} {}\n", e.u, e.v, g.weight(id)));
        } else {
            out.push_str(&format!("{} {}\n", e.u, e.v));
        }
    }
    if let Some(x) = &inst.x_side {
        out.push_str("X:");
        for v in x {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    if let Some(ord) = &inst.fixed_x_order {
        out.push_str("order:");
        for v in ord {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    n: usize,
    edges: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<Vec<usize>>,
}

/// Parses the JSON mirror of the instance format.  Edge entries are
/// `[u, v]` or `[u, v, w]`.
pub fn parse_instance_json(input: &str) -> Result<Instance> {
    let ij: InstanceJson =
        serde_json::from_str(input).map_err(|e| Error::parse(format!("bad json: {e}")))?;
    let mut graph = Graph::new(ij.n);
    for entry in &ij.edges {
        let as_vertex = |x: u64| -> Result<usize> {
            usize::try_from(x).map_err(|_| Error::parse(format!("vertex {x} out of range")))
        };
        match entry.as_slice() {
            [u, v] => {
                graph.add_edge(as_vertex(*u)?, as_vertex(*v)?)?;
            }
            [u, v, w] => {
                graph.add_weighted_edge(as_vertex(*u)?, as_vertex(*v)?, *w)?;
            }
            _ => return Err(Error::parse(format!("bad edge entry {entry:?}"))),
        }
    }
    Ok(Instance { graph, x_side: ij.x, fixed_x_order: ij.order })
}

pub fn write_instance_json(inst: &Instance) -> String {
    let g = &inst.graph;
    let weighted = g.is_weighted();
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .map(|(id, e)| {
            if weighted {
                vec![e.u as u64, e.v as u64, g.weight(id)]
            } else {
                vec![e.u as u64, e.v as u64]
            }
        })
        .collect();
    let ij = InstanceJson {
        n: g.vertex_count(),
        edges,
        x: inst.x_side.clone(),
        order: inst.fixed_x_order.clone(),
    };
    serde_json::to_string_pretty(&ij).expect("instance serializes")
}

/// Parses either format, keyed on the first non-space byte.
pub fn parse_instance(input: &str) -> Result<Instance> {
    if input.trim_start().starts_with('{') {
        parse_instance_json(input)
    } else {
        parse_instance_text(input)
    }
}

/// SHA-256 of the canonical text rendering: sorted edge list, annotations
/// included.  Hex encoded.
pub fn instance_digest(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut edges: Vec<(usize, usize, u64)> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(id, e)| (e.u, e.v, g.weight(id)))
        .collect();
    edges.sort_unstable();
    let mut canon = Instance {
        graph: Graph::new(g.vertex_count()),
        x_side: inst.x_side.clone(),
        fixed_x_order: inst.fixed_x_order.clone(),
    };
    for (u, v, w) in edges {
        if g.is_weighted() {
            canon.graph.add_weighted_edge(u, v, w).expect("edges revalidate");
        } else {
            canon.graph.add_edge(u, v).expect("edges revalidate");
        }
    }
    let text = write_instance_text(&canon);
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// The drawing carried by a YES certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum CertificateDrawing {
    TwoLayer { x_order: Vec<usize>, y_order: Vec<usize> },
    Circular { cycle: Vec<usize> },
}

/// Machine-checkable solver output: the answer, the drawing backing a YES,
/// and the digest of the instance it talks about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub problem: String,
    pub k: u64,
    pub yes: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub drawing: Option<CertificateDrawing>,
    pub instance_sha256: String,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(input: &str) -> Result<Certificate> {
        serde_json::from_str(input).map_err(|e| Error::parse(format!("bad certificate: {e}")))
    }
}
