//! Constructors for grids, walls, condensed walls, brick walls and G*.

mod gstar;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeClass, LabeledGraph, Role, Terminal, VertexId};

pub use gstar::{
    body, brick_distance_bound, build_gstar, check_terminal_orientation, pick_terminal_edges,
    BrickIncidence, GStar, GStarSpec, OrientationVerdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CondensedWallSpec {
    pub size: usize,
    pub jump_edges: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WallSpec {
    pub rows: usize,
    pub cols: usize,
    /// Inner-vertex count per edge of the elementary wall; missing edges get 0.
    pub subdivision: BTreeMap<Edge, usize>,
}

/// Bricks of a generated wall-like graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrickCertificate {
    pub bricks: Vec<Vec<VertexId>>,
    /// Bricks sharing at least one vertex.
    pub adjacency: Vec<Vec<usize>>,
    /// Drawing coordinates (x, y) of the elementary vertices.
    pub coords: BTreeMap<VertexId, (i32, i32)>,
}

impl BrickCertificate {
    pub fn from_bricks(bricks: Vec<Vec<VertexId>>, coords: BTreeMap<VertexId, (i32, i32)>) -> BrickCertificate {
        let sets: Vec<BTreeSet<VertexId>> = bricks.iter().map(|b| b.iter().copied().collect()).collect();
        let adjacency = (0..bricks.len())
            .map(|i| {
                (0..bricks.len())
                    .filter(|&j| j != i && !sets[i].is_disjoint(&sets[j]))
                    .collect()
            })
            .collect();
        BrickCertificate { bricks, adjacency, coords }
    }

    pub fn brick_edges(&self, i: usize) -> Vec<Edge> {
        let b = &self.bricks[i];
        (0..b.len()).map(|k| Edge::new(b[k], b[(k + 1) % b.len()])).collect()
    }

    /// Number of bricks containing each edge.
    pub fn edge_multiplicity(&self) -> BTreeMap<Edge, usize> {
        let mut m = BTreeMap::new();
        for i in 0..self.bricks.len() {
            for e in self.brick_edges(i) {
                *m.entry(e).or_insert(0) += 1;
            }
        }
        m
    }

    /// Bricks with an edge that lies in no other brick.
    pub fn outer_bricks(&self) -> Vec<usize> {
        let mult = self.edge_multiplicity();
        (0..self.bricks.len())
            .filter(|&i| self.brick_edges(i).iter().any(|e| mult[e] == 1))
            .collect()
    }

    /// Checks every brick is a chordless cycle of `g` with at least 6 vertices.
    pub fn validate(&self, g: &LabeledGraph) -> std::result::Result<(), String> {
        for (i, b) in self.bricks.iter().enumerate() {
            if b.len() < 6 {
                return Err(format!("brick {i} has {} vertices", b.len()));
            }
            let set: BTreeSet<VertexId> = b.iter().copied().collect();
            if set.len() != b.len() {
                return Err(format!("brick {i} repeats a vertex"));
            }
            for e in self.brick_edges(i) {
                if !g.has_edge(e.0, e.1) {
                    return Err(format!("brick {i} edge {e} missing"));
                }
            }
            for &v in b {
                let inside = g.neighbors(v).filter(|w| set.contains(w)).count();
                if inside != 2 {
                    return Err(format!("brick {i} has a chord at {v}"));
                }
            }
        }
        Ok(())
    }
}

pub fn gen_elementary_grid(m: usize, n: usize) -> Result<LabeledGraph> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("grid dimensions must be positive".into()));
    }
    let id = |i: usize, j: usize| ((i - 1) * n + (j - 1)) as VertexId;
    let mut g = LabeledGraph::new();
    for i in 1..=m {
        for j in 1..=n {
            g.add_vertex(id(i, j), Role::Plain)?;
        }
    }
    for i in 1..=m {
        for j in 1..=n {
            if i < m {
                g.add_edge(id(i, j), id(i + 1, j), EdgeClass::Plain)?;
            }
            if j < n {
                g.add_edge(id(i, j), id(i, j + 1), EdgeClass::Plain)?;
            }
        }
    }
    Ok(g)
}

/// Elementary wall with `m` brick rows and `n` bricks per row.
///
/// Vertex `v_{i,j}` of the underlying (m+1) x (2n+2) grid gets id
/// `(i-1)(2n+2) + (j-1)`; the two removed corner vertices leave gaps.
pub fn gen_elementary_wall(m: usize, n: usize) -> Result<(LabeledGraph, BrickCertificate)> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("wall dimensions must be positive".into()));
    }
    let w = 2 * n + 2;
    let id = |i: usize, j: usize| ((i - 1) * w + (j - 1)) as VertexId;
    let mut g = gen_elementary_grid(m + 1, w)?;
    let mut removed = Vec::new();
    for i in 1..=m {
        for j in 1..=w {
            let keep = (i % 2 == 1) == (j % 2 == 1);
            if !keep {
                removed.push(Edge::new(id(i, j), id(i + 1, j)));
            }
        }
    }
    g = g.delete_edges(&removed)?;
    loop {
        let leaves: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) <= 1).collect();
        if leaves.is_empty() {
            break;
        }
        g = g.delete_vertices(&leaves)?;
    }
    let mut coords = BTreeMap::new();
    for v in g.vertices() {
        let (i, j) = (v as usize / w + 1, v as usize % w + 1);
        coords.insert(v, (j as i32, -(i as i32)));
    }
    let mut bricks = Vec::new();
    for i in 1..=m {
        for k in 1..=n {
            let c0 = if i % 2 == 1 { 2 * k - 1 } else { 2 * k };
            bricks.push(vec![
                id(i, c0),
                id(i, c0 + 1),
                id(i, c0 + 2),
                id(i + 1, c0 + 2),
                id(i + 1, c0 + 1),
                id(i + 1, c0),
            ]);
        }
    }
    Ok((g, BrickCertificate::from_bricks(bricks, coords)))
}

pub fn gen_wall(spec: &WallSpec) -> Result<(LabeledGraph, BrickCertificate)> {
    let (g, cert) = gen_elementary_wall(spec.rows, spec.cols)?;
    apply_subdivision(&g, &cert, &spec.subdivision)
}

/// Subdivides edges per `plan` and threads the new vertices into the bricks.
pub fn apply_subdivision(
    g: &LabeledGraph,
    cert: &BrickCertificate,
    plan: &BTreeMap<Edge, usize>,
) -> Result<(LabeledGraph, BrickCertificate)> {
    let mut g = g.clone();
    let mut inner: BTreeMap<Edge, Vec<VertexId>> = BTreeMap::new();
    for (&e, &t) in plan {
        let e = Edge::new(e.0, e.1);
        if t == 0 {
            continue;
        }
        let (h, ids) = g.subdivide_edge_with(e, t)?;
        g = h;
        inner.insert(e, ids);
    }
    let bricks = cert
        .bricks
        .iter()
        .map(|b| {
            let mut out = Vec::new();
            for k in 0..b.len() {
                let (u, v) = (b[k], b[(k + 1) % b.len()]);
                out.push(u);
                if let Some(ids) = inner.get(&Edge::new(u, v)) {
                    if u < v {
                        out.extend(ids.iter().copied());
                    } else {
                        out.extend(ids.iter().rev().copied());
                    }
                }
            }
            out
        })
        .collect();
    Ok((g, BrickCertificate::from_bricks(bricks, cert.coords.clone())))
}

/// Vertex-id arithmetic for condensed walls: a = 0, b = 1, z_i = 2 + i,
/// then the rows in order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CondensedLayout {
    pub r: usize,
}

impl CondensedLayout {
    pub fn a(&self) -> VertexId {
        0
    }

    pub fn b(&self) -> VertexId {
        1
    }

    pub fn z(&self, i: usize) -> VertexId {
        assert!(i <= self.r);
        (2 + i) as VertexId
    }

    pub fn c(&self) -> VertexId {
        self.z(0)
    }

    pub fn d(&self) -> VertexId {
        self.z(self.r)
    }

    /// Row vertex u^j_p with 1-based layer `j` and position `p`.
    pub fn u(&self, j: usize, p: usize) -> VertexId {
        assert!((1..=self.r).contains(&j) && (1..=2 * self.r).contains(&p));
        (3 + self.r + (j - 1) * 2 * self.r + (p - 1)) as VertexId
    }

    /// Bottleneck adjacent to u^j_p.
    pub fn attachment(&self, j: usize, p: usize) -> VertexId {
        if p % 2 == 1 {
            self.z(j - 1)
        } else {
            self.z(j)
        }
    }

    pub fn num_vertices(&self) -> usize {
        2 * self.r * self.r + self.r + 3
    }

    /// Vertices of layer j (row plus its two bottlenecks).
    pub fn layer_vertices(&self, j: usize) -> BTreeSet<VertexId> {
        let mut s: BTreeSet<VertexId> = (1..=2 * self.r).map(|p| self.u(j, p)).collect();
        s.insert(self.z(j - 1));
        s.insert(self.z(j));
        s
    }

    /// Edges of layer j: the row path and the bottleneck attachments.
    pub fn layer_edges(&self, j: usize) -> Vec<Edge> {
        let mut out = Vec::new();
        for p in 1..=2 * self.r {
            if p < 2 * self.r {
                out.push(Edge::new(self.u(j, p), self.u(j, p + 1)));
            }
            out.push(Edge::new(self.attachment(j, p), self.u(j, p)));
        }
        out
    }
}

pub fn gen_condensed_wall(spec: CondensedWallSpec) -> Result<LabeledGraph> {
    let r = spec.size;
    if r == 0 {
        return Err(Error::InvalidParameter("condensed wall size must be at least 1".into()));
    }
    let l = CondensedLayout { r };
    let mut g = LabeledGraph::new();
    g.add_vertex(l.a(), Role::Terminal(Terminal::A))?;
    g.add_vertex(l.b(), Role::Terminal(Terminal::B))?;
    for i in 0..=r {
        g.add_vertex(l.z(i), Role::Bottleneck(i))?;
    }
    for j in 1..=r {
        for p in 1..=2 * r {
            g.add_vertex(l.u(j, p), Role::RowVertex { layer: j, position: p })?;
        }
    }
    for j in 1..=r {
        for p in 1..=2 * r {
            if p < 2 * r {
                g.add_edge(l.u(j, p), l.u(j, p + 1), EdgeClass::Plain)?;
            }
            g.add_edge(l.attachment(j, p), l.u(j, p), EdgeClass::Plain)?;
        }
        g.add_edge(l.a(), l.u(j, 1), EdgeClass::TerminalAttachment)?;
        g.add_edge(l.b(), l.u(j, 2 * r), EdgeClass::TerminalAttachment)?;
        if spec.jump_edges {
            g.add_edge(l.z(j - 1), l.z(j), EdgeClass::JumpEdge)?;
        }
    }
    Ok(g)
}

/// Convenience: W(r) or W⁻(r).
pub fn condensed_wall(r: usize, jump_edges: bool) -> LabeledGraph {
    gen_condensed_wall(CondensedWallSpec { size: r, jump_edges }).expect("size must be positive")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BrickWallId {
    /// Elementary B_n for 1 <= n <= 10.
    B(usize),
    /// Two disjoint hexagons joined by paths with the given edge counts.
    B1Sq(usize, usize),
}

impl BrickWallId {
    pub fn parse(s: &str) -> Option<BrickWallId> {
        if let Some(rest) = s.strip_prefix("B1sq") {
            let rest = rest.trim_start_matches(':');
            if rest.is_empty() {
                return Some(BrickWallId::B1Sq(1, 1));
            }
            let (x, y) = rest.split_once(',')?;
            return Some(BrickWallId::B1Sq(x.parse().ok()?, y.parse().ok()?));
        }
        let n: usize = s.strip_prefix('B')?.parse().ok()?;
        (1..=10).contains(&n).then_some(BrickWallId::B(n))
    }

    pub fn name(&self) -> String {
        match self {
            BrickWallId::B(n) => format!("B{n}"),
            BrickWallId::B1Sq(x, y) => format!("B1sq:{x},{y}"),
        }
    }
}

/// Hexagon centres of B_1..B_10 in honeycomb coordinates; B_n uses the first n.
const BRICK_CENTRES: [(i32, i32); 10] = [
    (1, 1),
    (-1, 1),
    (0, 4),
    (0, -2),
    (2, -2),
    (2, 4),
    (3, 1),
    (4, -2),
    (4, 4),
    (5, 1),
];

fn hexagon(c: (i32, i32)) -> [(i32, i32); 6] {
    let (x, y) = c;
    [
        (x - 1, y - 1),
        (x - 1, y + 1),
        (x, y + 2),
        (x + 1, y + 1),
        (x + 1, y - 1),
        (x, y - 2),
    ]
}

fn hexagon_graph(centres: &[(i32, i32)]) -> (LabeledGraph, BrickCertificate) {
    let mut g = LabeledGraph::new();
    let mut ids: BTreeMap<(i32, i32), VertexId> = BTreeMap::new();
    let mut bricks = Vec::new();
    for &c in centres {
        let mut cyc = Vec::new();
        for p in hexagon(c) {
            let v = *ids.entry(p).or_insert_with(|| g.push_vertex(Role::Plain));
            cyc.push(v);
        }
        for k in 0..6 {
            let (u, v) = (cyc[k], cyc[(k + 1) % 6]);
            if !g.has_edge(u, v) {
                g.add_edge(u, v, EdgeClass::Plain).unwrap();
            }
        }
        bricks.push(cyc);
    }
    let coords = ids.into_iter().map(|(p, v)| (v, p)).collect();
    (g, BrickCertificate::from_bricks(bricks, coords))
}

pub fn gen_brick_wall(id: BrickWallId, plan: &BTreeMap<Edge, usize>) -> Result<(LabeledGraph, BrickCertificate)> {
    let (g, cert) = match id {
        BrickWallId::B(n) => {
            if !(1..=10).contains(&n) {
                return Err(Error::InvalidParameter(format!("no brick wall B{n}")));
            }
            hexagon_graph(&BRICK_CENTRES[..n])
        }
        BrickWallId::B1Sq(l1, l2) => {
            if l1 == 0 || l2 == 0 {
                return Err(Error::InvalidParameter("connecting paths need at least one edge".into()));
            }
            let (h, cert) = hexagon_graph(&[(1, 1)]);
            let (mut g, off) = h.disjoint_union(&h);
            let mut coords = cert.coords.clone();
            for (v, (x, y)) in &cert.coords {
                coords.insert(v + off, (x + 6 + l1.max(l2) as i32, *y));
            }
            let first = cert.bricks[0].clone();
            let second: Vec<VertexId> = first.iter().map(|v| v + off).collect();
            for (k, len) in [(0usize, l1), (3usize, l2)] {
                let mut prev = first[k];
                for _ in 1..len {
                    let s = g.push_vertex(Role::Plain);
                    g.add_edge(prev, s, EdgeClass::Plain)?;
                    prev = s;
                }
                g.add_edge(prev, second[k], EdgeClass::Plain)?;
            }
            (g, BrickCertificate::from_bricks(vec![first, second], coords))
        }
    };
    apply_subdivision(&g, &cert, plan)
}

/// Elementary B_n.
pub fn brick_wall(n: usize) -> (LabeledGraph, BrickCertificate) {
    gen_brick_wall(BrickWallId::B(n), &BTreeMap::new()).expect("1 <= n <= 10")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_examples() {
        let g = gen_elementary_grid(1, 1).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (1, 0));
        let g = gen_elementary_grid(2, 2).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (4, 4));
        assert!(g.vertices().all(|v| g.degree(v) == 2));
        let g = gen_elementary_grid(3, 4).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (12, 17));
    }

    #[test]
    fn wall_one_by_one_is_hexagon() {
        let (g, cert) = gen_elementary_wall(1, 1).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (6, 6));
        assert_eq!(cert.bricks.len(), 1);
        cert.validate(&g).unwrap();
    }

    #[test]
    fn wall_counts() {
        let (g, cert) = gen_elementary_wall(8, 8).unwrap();
        assert_eq!(g.num_vertices(), 160);
        assert_eq!(cert.bricks.len(), 64);
        assert!(g.max_degree() <= 3);
        let (g, cert) = gen_elementary_wall(6, 4).unwrap();
        cert.validate(&g).unwrap();
        assert_eq!(cert.bricks.len(), 24);
        assert_eq!(cert.outer_bricks().len(), 16);
    }

    #[test]
    fn wall_subdivision_grows_brick() {
        let (g, cert) = gen_elementary_wall(2, 2).unwrap();
        let e = cert.brick_edges(0)[0];
        let spec = WallSpec { rows: 2, cols: 2, subdivision: [(e, 1)].into() };
        let (h, c2) = gen_wall(&spec).unwrap();
        assert_eq!(h.num_vertices(), g.num_vertices() + 1);
        assert_eq!(c2.bricks[0].len(), 7);
        c2.validate(&h).unwrap();
        let (h0, c0) = gen_wall(&WallSpec { rows: 2, cols: 2, subdivision: BTreeMap::new() }).unwrap();
        assert_eq!((h0, c0), (g, cert));
    }

    #[test]
    fn condensed_wall_small() {
        let g = condensed_wall(1, true);
        assert_eq!((g.num_vertices(), g.num_edges()), (6, 6));
        let g = condensed_wall(2, true);
        assert_eq!((g.num_vertices(), g.num_edges()), (13, 20));
        let g = condensed_wall(2, false);
        assert_eq!(g.num_edges(), 18);
        let g = condensed_wall(5, true);
        assert_eq!(g.bottlenecks().len(), 6);
        assert_eq!(g.degree(0), 5);
        assert_eq!(g.degree(1), 5);
        assert!(gen_condensed_wall(CondensedWallSpec { size: 0, jump_edges: true }).is_err());
    }

    #[test]
    fn brick_wall_shapes() {
        let (g, c) = brick_wall(1);
        assert_eq!((g.num_vertices(), g.num_edges()), (6, 6));
        let (g, c2) = brick_wall(2);
        assert_eq!((g.num_vertices(), g.num_edges()), (10, 11));
        c2.validate(&g).unwrap();
        let (g, c7) = brick_wall(7);
        assert_eq!(c7.bricks.len(), 7);
        c7.validate(&g).unwrap();
        assert_eq!(c7.outer_bricks().len(), 6);
        let counts: Vec<usize> = (1..=10).map(|n| brick_wall(n).0.num_vertices()).collect();
        assert_eq!(counts, vec![6, 10, 13, 16, 19, 22, 24, 27, 30, 32]);
        assert_eq!(c.bricks.len(), 1);
    }

    #[test]
    fn b1_squared() {
        let (g, c) = gen_brick_wall(BrickWallId::B1Sq(2, 3), &BTreeMap::new()).unwrap();
        assert_eq!(g.num_vertices(), 12 + 1 + 2);
        assert_eq!(g.num_edges(), 12 + 5);
        assert_eq!(c.bricks.len(), 2);
        assert!(BrickWallId::parse("B1sq:2,3") == Some(BrickWallId::B1Sq(2, 3)));
        assert_eq!(BrickWallId::parse("B11"), None);
    }
}
