//! Graphviz export with highlighted multipackings and broadcasts.

use std::fmt::Write;

use crate::graph::{Graph, Vertex};
use crate::oracles::broadcast::Broadcast;

/// Vertices to draw boxed and towers to annotate.
#[derive(Clone, Debug, Default)]
pub struct Highlights {
    pub members: Vec<Vertex>,
    pub broadcast: Option<Broadcast>,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT text. Output depends only on the inputs.
pub fn export_dot(g: &Graph, hl: &Highlights) -> String {
    let mut member = vec![false; g.n()];
    for &v in &hl.members {
        if v < g.n() {
            member[v] = true;
        }
    }
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        let mut label = g.label(v).map_or_else(|| v.to_string(), str::to_string);
        let power = hl.broadcast.as_ref().map_or(0, |b| if v < b.n() { b.power(v) } else { 0 });
        if power > 0 {
            let _ = write!(label, "\\np={power}");
        }
        let mut attrs = vec![format!("label={}", quote(&label))];
        if member[v] {
            attrs.push("shape=box".into());
        }
        if power > 0 {
            attrs.push("style=filled".into());
            attrs.push("fillcolor=lightgrey".into());
        }
        let _ = writeln!(out, "  {v} [{}];", attrs.join(", "));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
