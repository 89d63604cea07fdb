//! Graphviz output.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeClass, LabeledGraph, Role};

/// Overlay colours by certificate index, cycling.
pub const OVERLAY_COLORS: [&str; 6] = ["red", "blue", "darkgreen", "orange", "purple", "brown"];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders `g` as an undirected DOT graph. Terminals are filled, bottlenecks
/// drawn bold, jump edges dashed. Edge sets in `overlays` are coloured by
/// index; an edge in several overlays takes the first colour.
pub fn export_dot(g: &LabeledGraph, name: &str, overlays: &[BTreeSet<Edge>]) -> Result<String> {
    for o in overlays {
        for e in o {
            for v in [e.0, e.1] {
                if !g.contains_vertex(v) {
                    return Err(Error::UnknownVertex(v));
                }
            }
            if !g.has_edge(e.0, e.1) {
                return Err(Error::UnknownEdge(e.0, e.1));
            }
        }
    }
    let mut out = format!("graph {} {{\n  node [shape=circle, fontsize=9, width=0.3, fixedsize=true];\n", quote(name));
    for (v, role) in g.vertices_with_role() {
        let attrs = match role {
            Role::Terminal(t) => format!("label=\"{}\", style=filled, fillcolor=black, fontcolor=white", t.letter()),
            Role::Bottleneck(i) => format!("label=\"z{i}\", penwidth=2.5"),
            Role::Branch => format!("label=\"{v}\", shape=box"),
            _ => format!("label=\"{v}\""),
        };
        let _ = writeln!(out, "  {v} [{attrs}];");
    }
    for (e, class) in g.edges_with_class() {
        let mut attrs = Vec::new();
        if class == EdgeClass::JumpEdge {
            attrs.push("style=dashed".to_string());
        }
        if let Some(i) = overlays.iter().position(|o| o.contains(&e)) {
            attrs.push(format!("color={}", OVERLAY_COLORS[i % OVERLAY_COLORS.len()]));
            attrs.push("penwidth=2".to_string());
        }
        if attrs.is_empty() {
            let _ = writeln!(out, "  {} -- {};", e.0, e.1);
        } else {
            let _ = writeln!(out, "  {} -- {} [{}];", e.0, e.1, attrs.join(", "));
        }
    }
    out.push_str("}\n");
    Ok(out)
}
