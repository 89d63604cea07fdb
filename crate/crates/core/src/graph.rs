//! Labeled simple graphs and the transformations applied to them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = u32;

/// Unordered vertex pair, stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(pub VertexId, pub VertexId);

impl Edge {
    pub fn new(u: VertexId, v: VertexId) -> Edge {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(&self, v: VertexId) -> VertexId {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Terminal {
    A,
    B,
    C,
    D,
}

impl Terminal {
    pub fn letter(self) -> char {
        match self {
            Terminal::A => 'a',
            Terminal::B => 'b',
            Terminal::C => 'c',
            Terminal::D => 'd',
        }
    }

    pub fn from_letter(c: char) -> Option<Terminal> {
        match c {
            'a' => Some(Terminal::A),
            'b' => Some(Terminal::B),
            'c' => Some(Terminal::C),
            'd' => Some(Terminal::D),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    #[default]
    Plain,
    Terminal(Terminal),
    Bottleneck(usize),
    /// Layer and position are 1-based.
    RowVertex { layer: usize, position: usize },
    Subdivision(Edge),
    Branch,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeClass {
    #[default]
    Plain,
    JumpEdge,
    TerminalAttachment,
}

/// A simple undirected graph with vertex roles and edge classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabeledGraph {
    roles: BTreeMap<VertexId, Role>,
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    classes: BTreeMap<Edge, EdgeClass>,
}

impl LabeledGraph {
    pub fn new() -> LabeledGraph {
        LabeledGraph::default()
    }

    pub fn add_vertex(&mut self, v: VertexId, role: Role) -> Result<()> {
        if self.roles.contains_key(&v) {
            return Err(Error::DuplicateVertex(v));
        }
        self.roles.insert(v, role);
        self.adj.insert(v, BTreeSet::new());
        Ok(())
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, class: EdgeClass) -> Result<()> {
        if u == v {
            return Err(Error::Loop(u));
        }
        for x in [u, v] {
            if !self.roles.contains_key(&x) {
                return Err(Error::UnknownVertex(x));
            }
        }
        let e = Edge::new(u, v);
        if self.classes.contains_key(&e) {
            return Err(Error::ParallelEdge(e.0, e.1));
        }
        self.classes.insert(e, class);
        self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
        Ok(())
    }

    /// Adds a vertex with the next free id.
    pub fn push_vertex(&mut self, role: Role) -> VertexId {
        let v = self.next_id();
        self.roles.insert(v, role);
        self.adj.insert(v, BTreeSet::new());
        v
    }

    pub fn next_id(&self) -> VertexId {
        self.roles.keys().next_back().map_or(0, |&m| m + 1)
    }

    pub fn num_vertices(&self) -> usize {
        self.roles.len()
    }

    pub fn num_edges(&self) -> usize {
        self.classes.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.roles.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.classes.contains_key(&Edge::new(u, v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.roles.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.classes.keys().copied()
    }

    pub fn edges_with_class(&self) -> impl Iterator<Item = (Edge, EdgeClass)> + '_ {
        self.classes.iter().map(|(e, c)| (*e, *c))
    }

    pub fn vertices_with_role(&self) -> impl Iterator<Item = (VertexId, Role)> + '_ {
        self.roles.iter().map(|(v, r)| (*v, *r))
    }

    pub fn role(&self, v: VertexId) -> Role {
        self.roles.get(&v).copied().unwrap_or_default()
    }

    pub fn set_role(&mut self, v: VertexId, role: Role) -> Result<()> {
        match self.roles.get_mut(&v) {
            Some(r) => {
                *r = role;
                Ok(())
            }
            None => Err(Error::UnknownVertex(v)),
        }
    }

    pub fn edge_class(&self, u: VertexId, v: VertexId) -> Option<EdgeClass> {
        self.classes.get(&Edge::new(u, v)).copied()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, |s| s.len())
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn find_role(&self, role: Role) -> Option<VertexId> {
        self.roles.iter().find(|(_, r)| **r == role).map(|(v, _)| *v)
    }

    pub fn terminal(&self, t: Terminal) -> Option<VertexId> {
        self.find_role(Role::Terminal(t))
    }

    /// Terminals a, b, c, d. When no vertex carries the c or d letter, the
    /// lowest and highest bottleneck stand in for them.
    pub fn terminals(&self) -> Result<[VertexId; 4]> {
        let a = self.terminal(Terminal::A).ok_or(Error::MissingTerminal('a'))?;
        let b = self.terminal(Terminal::B).ok_or(Error::MissingTerminal('b'))?;
        let bottlenecks: Vec<(usize, VertexId)> = self
            .roles
            .iter()
            .filter_map(|(v, r)| match r {
                Role::Bottleneck(i) => Some((*i, *v)),
                _ => None,
            })
            .collect();
        let c = self
            .terminal(Terminal::C)
            .or_else(|| bottlenecks.iter().min().map(|p| p.1))
            .ok_or(Error::MissingTerminal('c'))?;
        let d = self
            .terminal(Terminal::D)
            .or_else(|| bottlenecks.iter().max().map(|p| p.1))
            .ok_or(Error::MissingTerminal('d'))?;
        if c == d {
            return Err(Error::MissingTerminal('d'));
        }
        Ok([a, b, c, d])
    }

    pub fn bottlenecks(&self) -> Vec<VertexId> {
        let mut z: Vec<(usize, VertexId)> = self
            .roles
            .iter()
            .filter_map(|(v, r)| match r {
                Role::Bottleneck(i) => Some((*i, *v)),
                _ => None,
            })
            .collect();
        z.sort();
        z.into_iter().map(|p| p.1).collect()
    }

    /// Replaces edge `e` by a path with `t` new inner vertices. Returns the
    /// new graph and the inner vertices in order from `e.0` to `e.1`.
    pub fn subdivide_edge_with(&self, e: Edge, t: usize) -> Result<(LabeledGraph, Vec<VertexId>)> {
        let e = Edge::new(e.0, e.1);
        let class = self.classes.get(&e).copied().ok_or(Error::UnknownEdge(e.0, e.1))?;
        if t == 0 {
            return Ok((self.clone(), Vec::new()));
        }
        let mut g = self.clone();
        g.remove_edge_raw(e);
        let inner: Vec<VertexId> = (0..t).map(|_| g.push_vertex(Role::Subdivision(e))).collect();
        let mut prev = e.0;
        for &s in &inner {
            g.add_edge(prev, s, class)?;
            prev = s;
        }
        g.add_edge(prev, e.1, class)?;
        Ok((g, inner))
    }

    pub fn subdivide_edge(&self, e: Edge, t: usize) -> Result<LabeledGraph> {
        self.subdivide_edge_with(e, t).map(|p| p.0)
    }

    /// Replaces each edge uv by `r` paths u-m-v with fresh midpoints.
    pub fn r_fold(&self, r: usize) -> Result<LabeledGraph> {
        Ok(self.r_fold_with(r)?.0)
    }

    /// As [`r_fold`](Self::r_fold), also returning the midpoints of each original edge.
    pub fn r_fold_with(&self, r: usize) -> Result<(LabeledGraph, BTreeMap<Edge, Vec<VertexId>>)> {
        if r == 0 {
            return Err(Error::InvalidParameter("r-fold multiplicity must be at least 1".into()));
        }
        let mut g = LabeledGraph::new();
        for (&v, &role) in &self.roles {
            g.add_vertex(v, role)?;
        }
        let mut mids = BTreeMap::new();
        for e in self.edges() {
            let mut ms = Vec::with_capacity(r);
            for _ in 0..r {
                let m = g.push_vertex(Role::Subdivision(e));
                g.add_edge(e.0, m, EdgeClass::Plain)?;
                g.add_edge(m, e.1, EdgeClass::Plain)?;
                ms.push(m);
            }
            mids.insert(e, ms);
        }
        Ok((g, mids))
    }

    /// Merges `v` into `u`; `u` keeps its id.
    pub fn identify_vertices(&self, u: VertexId, v: VertexId) -> Result<LabeledGraph> {
        if u == v {
            return Err(Error::InvalidParameter(format!("cannot identify vertex {u} with itself")));
        }
        let ru = *self.roles.get(&u).ok_or(Error::UnknownVertex(u))?;
        let rv = *self.roles.get(&v).ok_or(Error::UnknownVertex(v))?;
        let role = match (ru, rv) {
            (Role::Plain, r) | (r, Role::Plain) => r,
            (x, y) if x == y => x,
            _ => return Err(Error::RoleConflict(u, v)),
        };
        let mut g = self.clone();
        let nv: Vec<VertexId> = g.neighbors(v).collect();
        let mut moved = Vec::new();
        for w in nv {
            let e = Edge::new(v, w);
            let c = g.classes[&e];
            g.remove_edge_raw(e);
            if w != u {
                moved.push((w, c));
            }
        }
        g.roles.remove(&v);
        g.adj.remove(&v);
        g.roles.insert(u, role);
        for (w, c) in moved {
            let e = Edge::new(u, w);
            match g.classes.get_mut(&e) {
                Some(existing) => {
                    if *existing == EdgeClass::Plain {
                        *existing = c;
                    }
                }
                None => g.add_edge(u, w, c)?,
            }
        }
        Ok(g)
    }

    pub fn delete_edges(&self, edges: &[Edge]) -> Result<LabeledGraph> {
        let mut g = self.clone();
        for e in edges {
            let e = Edge::new(e.0, e.1);
            if !g.classes.contains_key(&e) {
                return Err(Error::UnknownEdge(e.0, e.1));
            }
            g.remove_edge_raw(e);
        }
        Ok(g)
    }

    pub fn delete_vertices(&self, vs: &[VertexId]) -> Result<LabeledGraph> {
        let mut g = self.clone();
        for &v in vs {
            if !g.roles.contains_key(&v) {
                return Err(Error::UnknownVertex(v));
            }
            let nb: Vec<VertexId> = g.neighbors(v).collect();
            for w in nb {
                g.remove_edge_raw(Edge::new(v, w));
            }
            g.roles.remove(&v);
            g.adj.remove(&v);
        }
        Ok(g)
    }

    /// Subgraph induced on `keep`.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> LabeledGraph {
        let mut g = LabeledGraph::new();
        for &v in keep {
            if let Some(&r) = self.roles.get(&v) {
                g.roles.insert(v, r);
                g.adj.insert(v, BTreeSet::new());
            }
        }
        for (e, c) in &self.classes {
            if keep.contains(&e.0) && keep.contains(&e.1) {
                g.add_edge(e.0, e.1, *c).unwrap();
            }
        }
        g
    }

    /// Subgraph consisting of the given edges and their endpoints.
    pub fn edge_subgraph(&self, edges: &BTreeSet<Edge>) -> Result<LabeledGraph> {
        let mut g = LabeledGraph::new();
        for e in edges {
            let c = self.classes.get(e).ok_or(Error::UnknownEdge(e.0, e.1))?;
            for x in [e.0, e.1] {
                if !g.contains_vertex(x) {
                    g.add_vertex(x, self.role(x))?;
                }
            }
            g.add_edge(e.0, e.1, *c)?;
        }
        Ok(g)
    }

    /// Disjoint union; ids of `other` are shifted by the returned offset.
    pub fn disjoint_union(&self, other: &LabeledGraph) -> (LabeledGraph, VertexId) {
        let offset = self.next_id();
        let mut g = self.clone();
        for (&v, &r) in &other.roles {
            g.add_vertex(v + offset, r).unwrap();
        }
        for (e, c) in &other.classes {
            g.add_edge(e.0 + offset, e.1 + offset, *c).unwrap();
        }
        (g, offset)
    }

    fn remove_edge_raw(&mut self, e: Edge) {
        self.classes.remove(&e);
        if let Some(s) = self.adj.get_mut(&e.0) {
            s.remove(&e.1);
        }
        if let Some(s) = self.adj.get_mut(&e.1) {
            s.remove(&e.0);
        }
    }

    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut q = VecDeque::from([v]);
            seen.insert(v);
            while let Some(x) = q.pop_front() {
                comp.insert(x);
                for y in self.neighbors(x) {
                    if seen.insert(y) {
                        q.push_back(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertex sets of the blocks (maximal 2-connected subgraphs and bridges).
    /// Isolated vertices are omitted.
    pub fn blocks(&self) -> Vec<BTreeSet<VertexId>> {
        let ids: Vec<VertexId> = self.vertices().collect();
        let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let adj: Vec<Vec<usize>> = ids
            .iter()
            .map(|v| self.neighbors(*v).map(|w| index[&w]).collect())
            .collect();
        block_sets(&adj)
            .into_iter()
            .map(|b| b.into_iter().map(|i| ids[i]).collect())
            .collect()
    }

    /// Shortest path between `s` and `t` avoiding `blocked` (BFS, lowest ids first).
    pub fn shortest_path(&self, s: VertexId, t: VertexId, blocked: &BTreeSet<VertexId>) -> Option<Path> {
        let mut prev: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut q = VecDeque::from([s]);
        prev.insert(s, s);
        while let Some(x) = q.pop_front() {
            if x == t {
                let mut p = vec![t];
                let mut c = t;
                while c != s {
                    c = prev[&c];
                    p.push(c);
                }
                p.reverse();
                return Some(Path(p));
            }
            for y in self.neighbors(x) {
                if (y == t || !blocked.contains(&y)) && !prev.contains_key(&y) {
                    prev.insert(y, x);
                    q.push_back(y);
                }
            }
        }
        None
    }
}

/// Tarjan block decomposition over an index adjacency list.
pub(crate) fn block_sets(adj: &[Vec<usize>]) -> Vec<BTreeSet<usize>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0usize;
    let mut out = Vec::new();
    let mut estack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut i)) = stack.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if disc[w] == usize::MAX {
                    estack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    estack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = BTreeSet::new();
                        while let Some((x, y)) = estack.pop() {
                            block.insert(x);
                            block.insert(y);
                            if (x, y) == (p, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

/// A path v0..vk with k >= 1 (a single vertex is allowed for degenerate uses).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path(pub Vec<VertexId>);

impl Path {
    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len_edges(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn first(&self) -> VertexId {
        self.0[0]
    }

    pub fn last(&self) -> VertexId {
        *self.0.last().unwrap()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.windows(2).map(|w| Edge::new(w[0], w[1]))
    }

    pub fn interior(&self) -> &[VertexId] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.0.clone();
        v.reverse();
        Path(v)
    }

    /// Checks that the path is simple, non-trivial and runs along edges of `g`.
    pub fn validate(&self, g: &LabeledGraph) -> std::result::Result<(), String> {
        if self.0.len() < 2 {
            return Err("path has no edge".into());
        }
        let mut seen = BTreeSet::new();
        for &v in &self.0 {
            if !g.contains_vertex(v) {
                return Err(format!("vertex {v} not in host"));
            }
            if !seen.insert(v) {
                return Err(format!("vertex {v} repeated"));
            }
        }
        for e in self.edges() {
            if !g.has_edge(e.0, e.1) {
                return Err(format!("edge {e} not in host"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> LabeledGraph {
        let mut g = LabeledGraph::new();
        for i in 0..n {
            g.add_vertex(i, Role::Plain).unwrap();
        }
        for i in 0..n {
            g.add_edge(i, (i + 1) % n, EdgeClass::Plain).unwrap();
        }
        g
    }

    fn single_edge() -> LabeledGraph {
        let mut g = LabeledGraph::new();
        g.add_vertex(0, Role::Plain).unwrap();
        g.add_vertex(1, Role::Plain).unwrap();
        g.add_edge(0, 1, EdgeClass::Plain).unwrap();
        g
    }

    #[test]
    fn subdivide_single_edge_twice() {
        let (g, inner) = single_edge().subdivide_edge_with(Edge(0, 1), 2).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (4, 3));
        assert_eq!(inner.len(), 2);
        assert!(g.has_edge(0, inner[0]) && g.has_edge(inner[0], inner[1]) && g.has_edge(inner[1], 1));
        assert_eq!(g.role(inner[0]), Role::Subdivision(Edge(0, 1)));
    }

    #[test]
    fn subdivide_zero_is_identity() {
        let g = cycle(5);
        assert_eq!(g.subdivide_edge(Edge(0, 1), 0).unwrap(), g);
        assert!(g.subdivide_edge(Edge(0, 2), 1).is_err());
    }

    #[test]
    fn r_fold_counts() {
        let g = single_edge().r_fold(3).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (5, 6));
        let g = single_edge().r_fold(1).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (3, 2));
        assert!(single_edge().r_fold(0).is_err());
    }

    #[test]
    fn r_fold_triangle_survives_single_deletion() {
        let g = cycle(3).r_fold(2).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (9, 12));
        for e in g.edges().collect::<Vec<_>>() {
            let h = g.delete_edges(&[e]).unwrap();
            for (u, v) in [(0, 1), (1, 2), (0, 2)] {
                let mut blocked: BTreeSet<VertexId> = [0, 1, 2].into();
                blocked.remove(&u);
                blocked.remove(&v);
                assert!(h.shortest_path(u, v, &blocked).is_some());
            }
        }
    }

    #[test]
    fn identify_path_end_with_isolated() {
        let mut g = LabeledGraph::new();
        for v in 0..4 {
            g.add_vertex(v, Role::Plain).unwrap();
        }
        g.add_edge(0, 1, EdgeClass::Plain).unwrap();
        g.add_edge(1, 2, EdgeClass::Plain).unwrap();
        let h = g.identify_vertices(3, 2).unwrap();
        assert_eq!((h.num_vertices(), h.num_edges()), (3, 2));
        assert!(h.has_edge(1, 3));
    }

    #[test]
    fn identify_bowtie() {
        let (g, off) = cycle(3).disjoint_union(&cycle(3));
        let h = g.identify_vertices(0, off).unwrap();
        assert_eq!((h.num_vertices(), h.num_edges()), (5, 6));
        assert_eq!(h.degree(0), 4);
    }

    #[test]
    fn identify_adjacent_in_four_cycle() {
        let h = cycle(4).identify_vertices(0, 1).unwrap();
        assert_eq!((h.num_vertices(), h.num_edges()), (3, 3));
        assert!(h.vertices().all(|v| h.degree(v) == 2));
    }

    #[test]
    fn identify_role_rules() {
        let mut g = cycle(4);
        g.set_role(0, Role::Terminal(Terminal::A)).unwrap();
        let h = g.identify_vertices(2, 0).unwrap();
        assert_eq!(h.role(2), Role::Terminal(Terminal::A));
        g.set_role(2, Role::Bottleneck(0)).unwrap();
        assert_eq!(g.identify_vertices(2, 0), Err(Error::RoleConflict(2, 0)));
    }

    #[test]
    fn delete_errors_and_identity() {
        let g = cycle(4);
        assert_eq!(g.delete_edges(&[]).unwrap(), g);
        assert!(g.delete_edges(&[Edge(0, 2)]).is_err());
        assert!(g.delete_vertices(&[9]).is_err());
        let h = g.delete_vertices(&[0]).unwrap();
        assert_eq!((h.num_vertices(), h.num_edges()), (3, 2));
    }

    #[test]
    fn blocks_of_bowtie_and_path() {
        let (g, off) = cycle(3).disjoint_union(&cycle(3));
        let h = g.identify_vertices(0, off).unwrap();
        let mut b = h.blocks();
        b.sort();
        assert_eq!(b.len(), 2);
        let mut p = LabeledGraph::new();
        for v in 0..3 {
            p.add_vertex(v, Role::Plain).unwrap();
        }
        p.add_edge(0, 1, EdgeClass::Plain).unwrap();
        p.add_edge(1, 2, EdgeClass::Plain).unwrap();
        assert_eq!(p.blocks().len(), 2);
    }

    #[test]
    fn path_validation() {
        let g = cycle(5);
        assert!(Path(vec![0, 1, 2]).validate(&g).is_ok());
        assert!(Path(vec![0, 2]).validate(&g).is_err());
        assert!(Path(vec![0, 1, 0]).validate(&g).is_err());
        assert!(Path(vec![0]).validate(&g).is_err());
    }

    #[test]
    fn graph_rejects_loops_and_parallel_edges() {
        let mut g = cycle(3);
        assert_eq!(g.add_edge(1, 1, EdgeClass::Plain), Err(Error::Loop(1)));
        assert_eq!(g.add_edge(1, 0, EdgeClass::Plain), Err(Error::ParallelEdge(0, 1)));
        assert_eq!(g.add_edge(1, 7, EdgeClass::Plain), Err(Error::UnknownVertex(7)));
    }
}
