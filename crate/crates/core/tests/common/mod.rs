#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use brickwall::embed::Pattern;
use brickwall::{EdgeClass, LabeledGraph, Role, Terminal, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;

/// The condensed wall of size `r` written out item by item from its
/// definition, with vertices named `a`, `b`, `z{i}` and `u{j}_{p}`.
pub struct NamedWall {
    pub vertices: BTreeSet<String>,
    pub edges: BTreeSet<(String, String)>,
}

fn pair(x: String, y: String) -> (String, String) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

pub fn named_wall(r: usize, jump_edges: bool) -> NamedWall {
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    vertices.insert("a".to_string());
    vertices.insert("b".to_string());
    for j in 0..=r {
        vertices.insert(format!("z{j}"));
    }
    let u = |j: usize, p: usize| format!("u{j}_{p}");
    for j in 1..=r {
        for p in 1..=2 * r {
            vertices.insert(u(j, p));
        }
        for p in 1..2 * r {
            edges.insert(pair(u(j, p), u(j, p + 1)));
        }
    }
    for i in 1..=r {
        for j in 1..=r {
            edges.insert(pair(format!("z{}", j - 1), u(j, 2 * i - 1)));
            edges.insert(pair(format!("z{j}"), u(j, 2 * i)));
            if jump_edges {
                edges.insert(pair(format!("z{}", i - 1), format!("z{i}")));
            }
            edges.insert(pair("a".into(), u(j, 1)));
            edges.insert(pair("b".into(), u(j, 2 * r)));
        }
    }
    NamedWall { vertices, edges }
}

/// The name a generated vertex should carry, read off its role.
pub fn role_name(role: Role) -> Option<String> {
    match role {
        Role::Terminal(Terminal::A) => Some("a".into()),
        Role::Terminal(Terminal::B) => Some("b".into()),
        Role::Bottleneck(i) => Some(format!("z{i}")),
        Role::RowVertex { layer, position } => Some(format!("u{layer}_{position}")),
        _ => None,
    }
}

/// Renames `g` through its roles; `None` if some vertex has no wall role or
/// two vertices share a name.
pub fn rename_by_roles(g: &LabeledGraph) -> Option<NamedWall> {
    let mut name: BTreeMap<VertexId, String> = BTreeMap::new();
    for (v, role) in g.vertices_with_role() {
        name.insert(v, role_name(role)?);
    }
    let vertices: BTreeSet<String> = name.values().cloned().collect();
    if vertices.len() != name.len() {
        return None;
    }
    let edges = g.edges().map(|e| pair(name[&e.0].clone(), name[&e.1].clone())).collect();
    Some(NamedWall { vertices, edges })
}

/// Existence of a subdivision of `pattern` in `host` by brute force: every
/// injective branch map, every system of internally disjoint paths.
pub fn naive_contains(host: &LabeledGraph, pattern: &Pattern) -> bool {
    let k = pattern.labels.len();
    let mut deg = vec![0usize; k];
    for e in &pattern.edges {
        deg[e.a] += 1;
        deg[e.b] += 1;
    }
    let mut o = Naive {
        host,
        pattern,
        verts: host.vertices().collect(),
        deg,
        map: vec![None; k],
        used: BTreeSet::new(),
        direct: BTreeSet::new(),
    };
    o.place(0)
}

struct Naive<'a> {
    host: &'a LabeledGraph,
    pattern: &'a Pattern,
    verts: Vec<VertexId>,
    deg: Vec<usize>,
    map: Vec<Option<VertexId>>,
    /// Branch images and path interiors.
    used: BTreeSet<VertexId>,
    /// Host edges taken as whole paths.
    direct: BTreeSet<(VertexId, VertexId)>,
}

impl Naive<'_> {
    fn place(&mut self, edge: usize) -> bool {
        if edge == self.pattern.edges.len() {
            let free = self.verts.iter().filter(|v| !self.used.contains(v)).count();
            return self.map.iter().filter(|m| m.is_none()).count() <= free;
        }
        let pe = &self.pattern.edges[edge];
        for end in [pe.a, pe.b] {
            if self.map[end].is_none() {
                for v in self.verts.clone() {
                    if self.used.contains(&v) || self.host.degree(v) < self.deg[end] {
                        continue;
                    }
                    self.map[end] = Some(v);
                    self.used.insert(v);
                    if self.place(edge) {
                        return true;
                    }
                    self.used.remove(&v);
                    self.map[end] = None;
                }
                return false;
            }
        }
        let (s, t) = (self.map[pe.a].unwrap(), self.map[pe.b].unwrap());
        let mut path = vec![s];
        self.route(edge, &mut path, t)
    }

    fn route(&mut self, edge: usize, path: &mut Vec<VertexId>, t: VertexId) -> bool {
        let cur = *path.last().unwrap();
        let next: Vec<VertexId> = self.host.neighbors(cur).collect();
        for w in next {
            if w == t {
                if path.len() < self.pattern.edges[edge].min_len {
                    continue;
                }
                if path.len() == 1 {
                    let key = (cur.min(t), cur.max(t));
                    if !self.direct.insert(key) {
                        continue;
                    }
                    if self.place(edge + 1) {
                        return true;
                    }
                    self.direct.remove(&key);
                } else if self.place(edge + 1) {
                    return true;
                }
                continue;
            }
            if self.used.contains(&w) {
                continue;
            }
            self.used.insert(w);
            path.push(w);
            if self.route(edge, path, t) {
                return true;
            }
            path.pop();
            self.used.remove(&w);
        }
        false
    }
}

pub fn random_graph(rng: &mut impl Rng, n: usize, m: usize) -> LabeledGraph {
    let mut g = LabeledGraph::new();
    let n = n as VertexId;
    for v in 0..n {
        g.add_vertex(v, Role::Plain).unwrap();
    }
    let mut all: Vec<(VertexId, VertexId)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    all.shuffle(rng);
    for &(u, v) in all.iter().take(m) {
        g.add_edge(u, v, EdgeClass::Plain).unwrap();
    }
    g
}

/// A random pattern without isolated vertices; chains are sometimes
/// required to be longer than one edge.
pub fn random_pattern(rng: &mut impl Rng, k: usize, m: usize) -> Pattern {
    let mut g = random_graph(rng, k, m);
    let isolated: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) == 0).collect();
    g = g.delete_vertices(&isolated).unwrap();
    let mut p = Pattern::full("P", &g);
    for e in &mut p.edges {
        if rng.gen_bool(0.2) {
            e.min_len = 2;
        }
    }
    p
}

#[derive(Debug, PartialEq, Eq)]
pub struct DotShape {
    pub nodes: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Id(String),
    Punct(&'static str),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '"' {
            let mut j = i + 1;
            let mut text = String::new();
            while j < cs.len() && cs[j] != '"' {
                if cs[j] == '\\' && j + 1 < cs.len() {
                    j += 1;
                }
                text.push(cs[j]);
                j += 1;
            }
            if j == cs.len() {
                return Err("unterminated string".into());
            }
            out.push(Tok::Id(text));
            i = j + 1;
        } else if c == '-' && cs.get(i + 1) == Some(&'-') {
            out.push(Tok::Punct("--"));
            i += 2;
        } else if let Some(p) = ["{", "}", "[", "]", "=", ",", ";"].into_iter().find(|p| p.starts_with(c)) {
            out.push(Tok::Punct(p));
            i += 1;
        } else if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' {
            let mut j = i;
            while j < cs.len() && (cs[j].is_alphanumeric() || cs[j] == '_' || cs[j] == '.' || (cs[j] == '-' && cs.get(j + 1) != Some(&'-'))) {
                j += 1;
            }
            out.push(Tok::Id(cs[i..j].iter().collect()));
            i = j;
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

/// Checks the undirected DOT subset: `[strict] graph [id] { stmt* }` with
/// node, edge, attribute and `a = b` statements. Counts node statements and
/// edge segments.
pub fn check_dot(s: &str) -> Result<DotShape, String> {
    let toks = tokenize(s)?;
    let mut i = 0;
    let id = |i: usize| match toks.get(i) {
        Some(Tok::Id(x)) => Some(x.clone()),
        _ => None,
    };
    let is = |i: usize, p: &str| matches!(toks.get(i), Some(Tok::Punct(q)) if *q == p);
    if id(i).as_deref() == Some("strict") {
        i += 1;
    }
    if id(i).as_deref() != Some("graph") {
        return Err("expected `graph`".into());
    }
    i += 1;
    if id(i).is_some() {
        i += 1;
    }
    if !is(i, "{") {
        return Err("expected `{`".into());
    }
    i += 1;
    let mut shape = DotShape { nodes: 0, edges: 0 };
    let attrs = |mut i: usize| -> Result<usize, String> {
        while is(i, "[") {
            i += 1;
            while !is(i, "]") {
                id(i).ok_or("expected attribute name")?;
                if !is(i + 1, "=") || id(i + 2).is_none() {
                    return Err(format!("bad attribute at token {i}"));
                }
                i += 3;
                if is(i, ",") || is(i, ";") {
                    i += 1;
                }
            }
            i += 1;
        }
        Ok(i)
    };
    while !is(i, "}") {
        let head = id(i).ok_or_else(|| format!("expected statement at token {i}"))?;
        i += 1;
        if matches!(head.as_str(), "node" | "edge" | "graph") && is(i, "[") {
            i = attrs(i)?;
        } else if is(i, "=") {
            id(i + 1).ok_or("expected value")?;
            i += 2;
        } else if is(i, "--") {
            while is(i, "--") {
                id(i + 1).ok_or("expected edge endpoint")?;
                shape.edges += 1;
                i += 2;
            }
            i = attrs(i)?;
        } else {
            shape.nodes += 1;
            i = attrs(i)?;
        }
        if is(i, ";") {
            i += 1;
        }
        if i >= toks.len() {
            return Err("missing `}`".into());
        }
    }
    if i + 1 != toks.len() {
        return Err("trailing tokens".into());
    }
    Ok(shape)
}
