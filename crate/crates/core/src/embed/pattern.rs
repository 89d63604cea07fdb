//! Search patterns: multigraphs over branch vertices with minimum path lengths.

use std::collections::{BTreeMap, BTreeSet};

use crate::generators::{gen_brick_wall, BrickCertificate, BrickWallId};
use crate::graph::{Edge, EdgeClass, LabeledGraph, Role, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternEdge {
    pub a: usize,
    pub b: usize,
    /// A host path realising this edge needs at least this many edges.
    pub min_len: usize,
    /// Elementary vertices along the chain, from `a` to `b`.
    pub chain: Vec<VertexId>,
    /// Bricks of the elementary graph whose cycle contains the chain.
    pub bricks: Vec<usize>,
}

/// A pattern graph reduced to its branch vertices. Any subdivision of the
/// source graph corresponds to an assignment of branch vertices and paths of
/// at least `min_len` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub name: String,
    pub labels: Vec<String>,
    /// Source-graph vertex of each branch vertex.
    pub source: Vec<VertexId>,
    pub edges: Vec<PatternEdge>,
    pub source_graph: LabeledGraph,
}

impl Pattern {
    /// Reduces `g`: vertices of degree other than 2 become branch vertices,
    /// maximal chains through degree-2 vertices become edges. Cycle
    /// components get three branch vertices.
    pub fn from_elementary(name: &str, g: &LabeledGraph, cert: Option<&BrickCertificate>) -> Pattern {
        let mut branch: BTreeSet<VertexId> = g.vertices().filter(|&v| g.degree(v) != 2).collect();
        for comp in g.components() {
            if comp.iter().all(|&v| g.degree(v) == 2) {
                let start = *comp.iter().next().unwrap();
                let mut order = vec![start];
                let mut prev = start;
                let mut cur = g.neighbors(start).next().unwrap();
                while cur != start {
                    order.push(cur);
                    let next = g.neighbors(cur).find(|&w| w != prev).unwrap();
                    prev = cur;
                    cur = next;
                }
                let k = order.len();
                for i in [0, k / 3, 2 * k / 3] {
                    branch.insert(order[i]);
                }
            }
        }
        while let Some(c) = chains(g, &branch).into_iter().find(|c| c.first() == c.last()) {
            branch.insert(c[c.len() / 2]);
        }
        let source: Vec<VertexId> = branch.iter().copied().collect();
        let index: BTreeMap<VertexId, usize> = source.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let brick_sets: Vec<BTreeSet<Edge>> = cert
            .map(|c| (0..c.bricks.len()).map(|i| c.brick_edges(i).into_iter().collect()).collect())
            .unwrap_or_default();
        let edges = chains(g, &branch)
            .into_iter()
            .map(|chain| {
                let first = Edge::new(chain[0], chain[1]);
                let bricks = brick_sets
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.contains(&first))
                    .map(|(i, _)| i)
                    .collect();
                PatternEdge {
                    a: index[&chain[0]],
                    b: index[chain.last().unwrap()],
                    min_len: chain.len() - 1,
                    chain,
                    bricks,
                }
            })
            .collect();
        let labels = source
            .iter()
            .map(|v| match cert.and_then(|c| c.coords.get(v)) {
                Some((x, y)) => format!("({x},{y})"),
                None => v.to_string(),
            })
            .collect();
        Pattern { name: name.to_string(), labels, source, edges, source_graph: g.clone() }
    }

    /// Every vertex of `g` is a branch vertex and every edge has length 1.
    pub fn full(name: &str, g: &LabeledGraph) -> Pattern {
        let source: Vec<VertexId> = g.vertices().collect();
        let index: BTreeMap<VertexId, usize> = source.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let edges = g
            .edges()
            .map(|e| PatternEdge { a: index[&e.0], b: index[&e.1], min_len: 1, chain: vec![e.0, e.1], bricks: vec![] })
            .collect();
        Pattern {
            name: name.to_string(),
            labels: source.iter().map(|v| v.to_string()).collect(),
            source,
            edges,
            source_graph: g.clone(),
        }
    }

    pub fn brick_wall(id: BrickWallId) -> Pattern {
        let (g, cert) = gen_brick_wall(id, &BTreeMap::new()).expect("valid brick wall id");
        Pattern::from_elementary(&id.name(), &g, Some(&cert))
    }

    /// Patterns addressable by name: `B1`..`B10`, `B1sq:x,y`.
    pub fn named(name: &str) -> Option<Pattern> {
        BrickWallId::parse(name).map(Pattern::brick_wall)
    }

    /// The cubic skeleton: every chain may be a single edge. Parallel chains
    /// keep length 2 so the realisation stays simple.
    pub fn skeleton(&self) -> Pattern {
        let mut p = self.clone();
        let mut seen = BTreeSet::new();
        for e in &mut p.edges {
            let key = (e.a.min(e.b), e.a.max(e.b));
            e.min_len = if e.a == e.b {
                e.min_len.min(3)
            } else if seen.insert(key) {
                1
            } else {
                2
            };
        }
        p.name = format!("{}~", self.name);
        p
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn degree(&self, p: usize) -> usize {
        self.edges.iter().map(|e| (e.a == p) as usize + (e.b == p) as usize).sum()
    }

    /// Least number of host vertices any realisation uses.
    pub fn min_vertices(&self) -> usize {
        self.num_vertices() + self.edges.iter().map(|e| e.min_len - 1).sum::<usize>()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The same pattern with edge `i` removed (branch vertices kept).
    pub fn without_edge(&self, i: usize) -> Pattern {
        let mut p = self.clone();
        p.edges.remove(i);
        p.name = format!("{}-e{}", self.name, i);
        p
    }

    /// Whether every realisation is 2-connected (checked on the subdivided form).
    pub fn is_two_connected(&self) -> bool {
        let mut g = LabeledGraph::new();
        for i in 0..self.num_vertices() {
            g.add_vertex(i as VertexId, Role::Plain).unwrap();
        }
        for e in &self.edges {
            let mut prev = e.a as VertexId;
            for _ in 1..e.min_len.max(2) {
                let s = g.push_vertex(Role::Plain);
                g.add_edge(prev, s, EdgeClass::Plain).unwrap();
                prev = s;
            }
            g.add_edge(prev, e.b as VertexId, EdgeClass::Plain).unwrap();
        }
        g.num_vertices() >= 3 && g.is_connected() && g.blocks().len() == 1
    }

    /// Branch vertices all of whose neighbours in the source graph are branch
    /// vertices of degree 3 (the centre of B_3).
    pub fn centre_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices())
            .filter(|&p| {
                self.degree(p) == 3
                    && self.edges.iter().filter(|e| e.a == p || e.b == p).all(|e| {
                        let q = if e.a == p { e.b } else { e.a };
                        e.min_len == 1 && self.degree(q) == 3
                    })
            })
            .collect()
    }

    /// Edges whose chain lies on some brick in `bricks`.
    pub fn edges_on_bricks(&self, bricks: &BTreeSet<usize>) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].bricks.iter().any(|b| bricks.contains(b)))
            .collect()
    }

    /// Branch vertices incident to the given edges.
    pub fn vertices_of_edges(&self, edges: &[usize]) -> BTreeSet<usize> {
        edges.iter().flat_map(|&i| [self.edges[i].a, self.edges[i].b]).collect()
    }
}

/// Maximal paths whose interior vertices avoid `branch`.
fn chains(g: &LabeledGraph, branch: &BTreeSet<VertexId>) -> Vec<Vec<VertexId>> {
    let mut seen: BTreeSet<Edge> = BTreeSet::new();
    let mut out = Vec::new();
    for &u in branch {
        let nbs: Vec<VertexId> = g.neighbors(u).collect();
        for w in nbs {
            if seen.contains(&Edge::new(u, w)) {
                continue;
            }
            let mut chain = vec![u];
            let (mut prev, mut cur) = (u, w);
            seen.insert(Edge::new(u, w));
            while !branch.contains(&cur) {
                chain.push(cur);
                let next = g.neighbors(cur).find(|&x| x != prev).unwrap();
                seen.insert(Edge::new(cur, next));
                prev = cur;
                cur = next;
            }
            chain.push(cur);
            out.push(chain);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_brick_walls() {
        let b1 = Pattern::named("B1").unwrap();
        assert_eq!(b1.num_vertices(), 3);
        assert!(b1.edges.iter().all(|e| e.min_len == 2));
        assert_eq!(b1.min_vertices(), 6);
        let b3 = Pattern::named("B3").unwrap();
        assert_eq!(b3.num_vertices(), 4);
        assert_eq!(b3.edges.len(), 6);
        assert_eq!(b3.min_vertices(), 13);
        assert_eq!(b3.centre_vertices().len(), 1);
        for n in 1..=10 {
            let p = Pattern::named(&format!("B{n}")).unwrap();
            assert_eq!(p.min_vertices(), p.source_graph.num_vertices());
            assert!(p.is_two_connected());
        }
        let b7 = Pattern::named("B7").unwrap();
        assert_eq!(b7.num_vertices(), 12);
        assert_eq!(b7.edges.len(), 18);
    }

    #[test]
    fn full_pattern_of_path() {
        let mut g = LabeledGraph::new();
        for v in 0..3 {
            g.add_vertex(v, Role::Plain).unwrap();
        }
        g.add_edge(0, 1, EdgeClass::Plain).unwrap();
        g.add_edge(1, 2, EdgeClass::Plain).unwrap();
        let f = Pattern::full("p", &g);
        assert_eq!((f.num_vertices(), f.edges.len()), (3, 2));
        let r = Pattern::from_elementary("p", &g, None);
        assert_eq!((r.num_vertices(), r.edges.len()), (2, 1));
        assert_eq!(r.edges[0].min_len, 2);
        assert!(!r.is_two_connected());
    }
}
