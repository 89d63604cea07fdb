//! Line-oriented graph documents.
//!
//! ```text
//! graph W2 v=13 e=20
//! v 0 Terminal:a
//! v 2 Bottleneck:0
//! v 5 Row:1:2
//! e 0 5 TerminalAttachment
//! ```
//!
//! Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeClass, LabeledGraph, Role, Terminal, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDocument {
    /// Written as one token; whitespace becomes `_`.
    pub name: String,
    pub graph: LabeledGraph,
}

impl GraphDocument {
    pub fn new(name: impl Into<String>, graph: LabeledGraph) -> GraphDocument {
        GraphDocument { name: name.into(), graph }
    }

    pub fn serialize(&self) -> String {
        let g = &self.graph;
        let name: String = self.name.chars().map(|c| if c.is_whitespace() { '_' } else { c }).collect();
        let name = if name.is_empty() { "graph".to_string() } else { name };
        let mut out = format!("graph {name} v={} e={}\n", g.num_vertices(), g.num_edges());
        for (v, role) in g.vertices_with_role() {
            let _ = writeln!(out, "v {v} {}", role_token(role));
        }
        for (e, class) in g.edges_with_class() {
            let _ = writeln!(out, "e {} {} {}", e.0, e.1, class_token(class));
        }
        out
    }

    pub fn parse(text: &str) -> Result<GraphDocument> {
        let mut header: Option<(String, usize, usize)> = None;
        let mut g = LabeledGraph::new();
        let mut last = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last = line;
            let err = |msg: String| Error::Parse { line, msg };
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = t.split_whitespace().collect();
            match (f[0], header.is_some()) {
                ("graph", false) => header = Some(parse_header(&f).map_err(err)?),
                ("graph", true) => return Err(err("second header".into())),
                (_, false) => return Err(err("expected `graph <name> v=<n> e=<m>` first".into())),
                ("v", true) => {
                    if f.len() != 3 {
                        return Err(err("expected `v <id> <role>`".into()));
                    }
                    let v = parse_id(f[1]).map_err(err)?;
                    let role = parse_role(f[2]).map_err(err)?;
                    g.add_vertex(v, role).map_err(|e| err(e.to_string()))?;
                }
                ("e", true) => {
                    if f.len() != 4 {
                        return Err(err("expected `e <id> <id> <class>`".into()));
                    }
                    let u = parse_id(f[1]).map_err(err)?;
                    let v = parse_id(f[2]).map_err(err)?;
                    let class = parse_class(f[3]).map_err(err)?;
                    g.add_edge(u, v, class).map_err(|e| err(e.to_string()))?;
                }
                (other, true) => return Err(err(format!("unknown record `{other}`"))),
            }
        }
        let Some((name, n, m)) = header else {
            return Err(Error::Parse { line: last.max(1), msg: "missing header".into() });
        };
        if g.num_vertices() != n || g.num_edges() != m {
            return Err(Error::Parse {
                line: last.max(1),
                msg: format!("header declares v={n} e={m}, document has v={} e={}", g.num_vertices(), g.num_edges()),
            });
        }
        Ok(GraphDocument { name, graph: g })
    }
}

fn parse_header(f: &[&str]) -> std::result::Result<(String, usize, usize), String> {
    let bad = || "expected `graph <name> v=<n> e=<m>`".to_string();
    if f.len() != 4 {
        return Err(bad());
    }
    let n = f[2].strip_prefix("v=").and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    let m = f[3].strip_prefix("e=").and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    Ok((f[1].to_string(), n, m))
}

fn parse_id(s: &str) -> std::result::Result<VertexId, String> {
    s.parse().map_err(|_| format!("bad vertex id `{s}`"))
}

pub fn role_token(role: Role) -> String {
    match role {
        Role::Plain => "Plain".into(),
        Role::Branch => "Branch".into(),
        Role::Terminal(t) => format!("Terminal:{}", t.letter()),
        Role::Bottleneck(i) => format!("Bottleneck:{i}"),
        Role::RowVertex { layer, position } => format!("Row:{layer}:{position}"),
        Role::Subdivision(e) => format!("Subdivision:{}-{}", e.0, e.1),
    }
}

pub fn parse_role(s: &str) -> std::result::Result<Role, String> {
    let bad = || format!("unknown role `{s}`");
    let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
    let parts: Vec<&str> = s.split(':').collect();
    Ok(match parts.as_slice() {
        ["Plain"] => Role::Plain,
        ["Branch"] => Role::Branch,
        ["Terminal", t] => {
            let mut cs = t.chars();
            match (cs.next().and_then(Terminal::from_letter), cs.next()) {
                (Some(t), None) => Role::Terminal(t),
                _ => return Err(bad()),
            }
        }
        ["Bottleneck", i] => Role::Bottleneck(num(i)?),
        ["Row", j, p] => Role::RowVertex { layer: num(j)?, position: num(p)? },
        ["Subdivision", e] => {
            let (u, v) = e.split_once('-').ok_or_else(bad)?;
            let (u, v) = (parse_id(u).map_err(|_| bad())?, parse_id(v).map_err(|_| bad())?);
            if u == v {
                return Err(bad());
            }
            Role::Subdivision(Edge::new(u, v))
        }
        _ => return Err(bad()),
    })
}

pub fn class_token(c: EdgeClass) -> &'static str {
    match c {
        EdgeClass::Plain => "Plain",
        EdgeClass::JumpEdge => "JumpEdge",
        EdgeClass::TerminalAttachment => "TerminalAttachment",
    }
}

pub fn parse_class(s: &str) -> std::result::Result<EdgeClass, String> {
    match s {
        "Plain" => Ok(EdgeClass::Plain),
        "JumpEdge" => Ok(EdgeClass::JumpEdge),
        "TerminalAttachment" => Ok(EdgeClass::TerminalAttachment),
        _ => Err(format!("unknown edge class `{s}`")),
    }
}
