//! The body of a wall, terminal-edge selection and the graph G*.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use serde::{Deserialize, Serialize};

use super::{condensed_wall, gen_elementary_wall, BrickCertificate, CondensedLayout};
use crate::embed::{find_linkage_between, Embedding, Linkage, LinkageOutcome, Pattern, SearchStats};
use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph, Path, VertexId};

/// How a path "is incident with" a brick.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum BrickIncidence {
    /// The path shares a vertex with the brick.
    #[default]
    Vertex,
    /// The path uses an edge of the brick.
    Edge,
}

/// Minimal subgraph containing every brick with at least three adjacent bricks.
pub fn body(g: &LabeledGraph, cert: &BrickCertificate) -> Result<(LabeledGraph, BrickCertificate)> {
    cert.validate(g).map_err(Error::MalformedCertificate)?;
    let keep: Vec<usize> = (0..cert.bricks.len()).filter(|&i| cert.adjacency[i].len() >= 3).collect();
    let edges: BTreeSet<Edge> = keep.iter().flat_map(|&i| cert.brick_edges(i)).collect();
    let h = g.edge_subgraph(&edges)?;
    let bricks = keep.iter().map(|&i| cert.bricks[i].clone()).collect();
    let coords = cert.coords.iter().filter(|(v, _)| h.contains_vertex(**v)).map(|(v, c)| (*v, *c)).collect();
    Ok((h, BrickCertificate::from_bricks(bricks, coords)))
}

/// Least number of bricks, other than those containing `e1` or `e2`, that an
/// `e1`-`e2` path can be incident with. Exact: a search over (vertex, touched
/// bricks) keeping only inclusion-minimal brick sets per vertex.
pub fn brick_distance_bound(
    g: &LabeledGraph,
    cert: &BrickCertificate,
    e1: Edge,
    e2: Edge,
    incidence: BrickIncidence,
    budget: u64,
) -> Result<usize> {
    for e in [e1, e2] {
        if !g.has_edge(e.0, e.1) {
            return Err(Error::UnknownEdge(e.0, e.1));
        }
    }
    if cert.bricks.len() > 128 {
        return Err(Error::InvalidParameter("at most 128 bricks supported".into()));
    }
    let brick_edges: Vec<BTreeSet<Edge>> =
        (0..cert.bricks.len()).map(|i| cert.brick_edges(i).into_iter().collect()).collect();
    let mut excluded = 0u128;
    for (i, es) in brick_edges.iter().enumerate() {
        if es.contains(&e1) || es.contains(&e2) {
            excluded |= 1 << i;
        }
    }
    let mut by_vertex: BTreeMap<VertexId, u128> = BTreeMap::new();
    for (i, b) in cert.bricks.iter().enumerate() {
        for v in b {
            *by_vertex.entry(*v).or_insert(0) |= 1 << i;
        }
    }
    let touch_v = |v: VertexId| by_vertex.get(&v).copied().unwrap_or(0) & !excluded;
    let touch_e = |e: Edge| {
        let mut m = 0u128;
        for (i, es) in brick_edges.iter().enumerate() {
            if es.contains(&e) {
                m |= 1 << i;
            }
        }
        m & !excluded
    };
    let mut minimal: BTreeMap<VertexId, Vec<u128>> = BTreeMap::new();
    let mut heap = BinaryHeap::new();
    let push = |v: VertexId, m: u128, minimal: &mut BTreeMap<VertexId, Vec<u128>>, heap: &mut BinaryHeap<_>| {
        let list = minimal.entry(v).or_default();
        if list.iter().any(|&x| x & !m == 0) {
            return;
        }
        list.retain(|&x| x & m != m);
        list.push(m);
        heap.push(Reverse((m.count_ones(), v, m)));
    };
    for s in [e1.0, e1.1] {
        let m = match incidence {
            BrickIncidence::Vertex => touch_v(s),
            BrickIncidence::Edge => 0,
        };
        push(s, m, &mut minimal, &mut heap);
    }
    let mut nodes = 0u64;
    while let Some(Reverse((cost, v, m))) = heap.pop() {
        if !minimal[&v].contains(&m) {
            continue;
        }
        nodes += 1;
        if nodes >= budget {
            return Err(Error::BudgetExceeded(budget));
        }
        if e2.contains(v) {
            return Ok(cost as usize);
        }
        for w in g.neighbors(v) {
            let m2 = m | match incidence {
                BrickIncidence::Vertex => touch_v(w),
                BrickIncidence::Edge => touch_e(Edge::new(v, w)),
            };
            push(w, m2, &mut minimal, &mut heap);
        }
    }
    Err(Error::InvalidParameter(format!("no path between {e1} and {e2}")))
}

/// Edges of the body that lie on the outer face of the wall.
fn outer_body_edges(g: &LabeledGraph, cert: &BrickCertificate) -> Result<Vec<Edge>> {
    let (_, bc) = body(g, cert)?;
    let mult = cert.edge_multiplicity();
    let in_body: BTreeSet<Edge> = bc.edge_multiplicity().into_keys().collect();
    Ok(in_body.into_iter().filter(|e| mult[e] == 1).collect())
}

/// Canonical terminal edges: pairs of outer body edges are tried from the
/// farthest apart (Manhattan distance of their midpoints, ties by edge order)
/// and the first pair forcing at least 7 bricks on every path is returned.
pub fn pick_terminal_edges(
    g: &LabeledGraph,
    cert: &BrickCertificate,
    incidence: BrickIncidence,
    budget: u64,
) -> Result<(Edge, Edge)> {
    let outer = outer_body_edges(g, cert)?;
    let mid = |e: &Edge| {
        let (a, b) = (cert.coords[&e.0], cert.coords[&e.1]);
        (a.0 + b.0, a.1 + b.1)
    };
    let mut pairs = Vec::new();
    for (i, e1) in outer.iter().enumerate() {
        for e2 in &outer[i + 1..] {
            let (p, q) = (mid(e1), mid(e2));
            pairs.push((Reverse((p.0 - q.0).abs() + (p.1 - q.1).abs()), *e1, *e2));
        }
    }
    pairs.sort();
    let mut best = 0;
    for (_, e1, e2) in pairs {
        let bound = brick_distance_bound(g, cert, e1, e2, incidence, budget)?;
        if bound >= 7 {
            return Ok((e1, e2));
        }
        best = best.max(bound);
    }
    Err(Error::Construction(format!("no pair of outer body edges forces more than {best} bricks")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GStarSpec {
    pub rows: usize,
    pub cols: usize,
    pub r: usize,
    /// Explicit e1, e2; chosen canonically when absent.
    pub terminal_edges: Option<(Edge, Edge)>,
    pub incidence: BrickIncidence,
    pub budget: u64,
}

impl GStarSpec {
    pub fn new(rows: usize, cols: usize, r: usize) -> GStarSpec {
        GStarSpec { rows, cols, r, terminal_edges: None, incidence: BrickIncidence::Vertex, budget: 100_000_000 }
    }
}

/// Outcome of the terminal orientation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrientationVerdict {
    /// Every a-c path separates b from d.
    Holds(SearchStats),
    /// An a-c path and a disjoint b-d path (stored as `pab` and `pcd`).
    Violated(Linkage, SearchStats),
    BudgetExceeded(SearchStats),
}

/// Whether every a-c path of `exterior` separates b from d, i.e. whether
/// no (a-c, b-d) linkage exists.
pub fn check_terminal_orientation(
    exterior: &LabeledGraph,
    t: [VertexId; 4],
    budget: u64,
) -> Result<OrientationVerdict> {
    let [a, b, c, d] = t;
    for (k, v) in t.iter().enumerate() {
        if !exterior.contains_vertex(*v) {
            return Err(Error::MissingTerminal(['a', 'b', 'c', 'd'][k]));
        }
    }
    let keep: BTreeSet<VertexId> = t.iter().copied().collect();
    let (h, chains) = reduce_for_linkage(exterior, &keep)?;
    Ok(match find_linkage_between(&h, [a, c, b, d], budget)? {
        LinkageOutcome::Found(l, s) => {
            let lift = |p: &Path| lift_path(p, &chains);
            let l = Linkage { pab: lift(&l.pab), pcd: lift(&l.pcd) };
            OrientationVerdict::Violated(l, s)
        }
        LinkageOutcome::NotFound(s) => OrientationVerdict::Holds(s),
        LinkageOutcome::BudgetExceeded(s) => OrientationVerdict::BudgetExceeded(s),
    })
}

/// Shrinks `g` without changing which linkages between `keep` vertices exist:
/// drops non-kept vertices of degree at most 1, keeps one of each family of
/// degree-2 twins and suppresses the rest of the degree-2 vertices. Every
/// remaining edge maps to the original path it stands for.
fn reduce_for_linkage(
    g: &LabeledGraph,
    keep: &BTreeSet<VertexId>,
) -> Result<(LabeledGraph, BTreeMap<Edge, Vec<VertexId>>)> {
    let mut h = g.clone();
    let mut chains: BTreeMap<Edge, Vec<VertexId>> = h.edges().map(|e| (e, vec![e.0, e.1])).collect();
    let oriented = |chains: &BTreeMap<Edge, Vec<VertexId>>, u: VertexId, v: VertexId| {
        let p = &chains[&Edge::new(u, v)];
        if p[0] == u {
            p.clone()
        } else {
            p.iter().rev().copied().collect()
        }
    };
    loop {
        let cand = h.vertices().find(|&v| !keep.contains(&v) && h.degree(v) <= 2);
        let Some(v) = cand else { break };
        let nb: Vec<VertexId> = h.neighbors(v).collect();
        if nb.len() == 2 && !h.has_edge(nb[0], nb[1]) {
            let mut p = oriented(&chains, nb[0], v);
            p.extend_from_slice(&oriented(&chains, v, nb[1])[1..]);
            h = h.delete_vertices(&[v])?;
            h.add_edge(nb[0], nb[1], crate::graph::EdgeClass::Plain)?;
            chains.insert(Edge::new(nb[0], nb[1]), p);
        } else {
            h = h.delete_vertices(&[v])?;
        }
        for w in nb {
            chains.remove(&Edge::new(v, w));
        }
    }
    Ok((h, chains))
}

fn lift_path(p: &Path, chains: &BTreeMap<Edge, Vec<VertexId>>) -> Path {
    let mut out = vec![p.first()];
    for w in p.vertices().windows(2) {
        let c = &chains[&Edge::new(w[0], w[1])];
        if c[0] == w[0] {
            out.extend_from_slice(&c[1..]);
        } else {
            out.extend(c.iter().rev().skip(1));
        }
    }
    Path(out)
}

/// G*: the r-fold of a wall B minus e1, e2 glued to W(r) at the endpoints of e1, e2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GStar {
    pub graph: LabeledGraph,
    pub r: usize,
    pub wall: LabeledGraph,
    pub cert: BrickCertificate,
    pub e1: Edge,
    pub e2: Edge,
    /// a, b, c, d as G* vertex ids (the wall-side ids).
    pub terminals: [VertexId; 4],
    /// Condensed-wall vertex id to G* vertex id.
    pub wall_map: BTreeMap<VertexId, VertexId>,
    /// Midpoints replacing each wall edge other than e1, e2.
    pub bundles: BTreeMap<Edge, Vec<VertexId>>,
}

impl GStar {
    /// Vertices of W other than a, b, c, d.
    pub fn w_interior(&self) -> BTreeSet<VertexId> {
        let t: BTreeSet<VertexId> = self.terminals.iter().copied().collect();
        self.wall_map.values().copied().filter(|v| !t.contains(v)).collect()
    }

    /// G* - (W - {a, b, c, d}).
    pub fn exterior(&self) -> LabeledGraph {
        let drop: Vec<VertexId> = self.w_interior().into_iter().collect();
        self.graph.delete_vertices(&drop).expect("interior vertices exist")
    }

    /// The condensed-wall part, in G* ids.
    pub fn w_part(&self) -> LabeledGraph {
        self.graph.induced(&self.wall_map.values().copied().collect())
    }

    /// B as a pattern (every vertex a branch vertex).
    pub fn wall_pattern(&self) -> Pattern {
        Pattern::full("B", &self.wall)
    }

    /// A B-expansion avoiding the edges in `deleted`: each wall edge takes a
    /// surviving path of its bundle, e1 and e2 take a linkage of W - `deleted`.
    /// `None` when some bundle is destroyed or W - `deleted` has no linkage.
    pub fn expansion(&self, deleted: &BTreeSet<Edge>, budget: u64) -> Result<(Option<Embedding>, SearchStats)> {
        let pattern = self.wall_pattern();
        let mut paths = Vec::with_capacity(pattern.edges.len());
        let w = self.w_part();
        let del: Vec<Edge> = deleted.iter().copied().filter(|e| w.has_edge(e.0, e.1)).collect();
        let w = w.delete_edges(&del)?;
        let (linkage, stats) = match find_linkage_between(&w, self.terminals, budget)? {
            LinkageOutcome::Found(l, s) => (l, s),
            LinkageOutcome::NotFound(s) => return Ok((None, s)),
            LinkageOutcome::BudgetExceeded(s) => return Err(Error::BudgetExceeded(s.nodes)),
        };
        for pe in &pattern.edges {
            let (u, v) = (pattern.source[pe.a], pattern.source[pe.b]);
            let e = Edge::new(u, v);
            let path = if e == self.e1 {
                linkage.pab.clone()
            } else if e == self.e2 {
                linkage.pcd.clone()
            } else {
                let m = self.bundles[&e].iter().find(|&&m| {
                    !deleted.contains(&Edge::new(u, m)) && !deleted.contains(&Edge::new(m, v))
                });
                match m {
                    Some(&m) => Path(vec![u, m, v]),
                    None => return Ok((None, stats)),
                }
            };
            paths.push(if path.first() == u { path } else { path.reversed() });
        }
        let emb = Embedding { pattern: pattern.name.clone(), branch_map: pattern.source.clone(), path_map: paths };
        Ok((Some(emb), stats))
    }
}

pub fn build_gstar(spec: &GStarSpec) -> Result<GStar> {
    if spec.rows < 6 || spec.cols < 4 {
        return Err(Error::InvalidParameter("G* needs a wall of at least 6 x 4".into()));
    }
    if spec.r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let (wall, cert) = gen_elementary_wall(spec.rows, spec.cols)?;
    let (e1, e2) = match spec.terminal_edges {
        Some((e1, e2)) => {
            let (e1, e2) = (Edge::new(e1.0, e1.1), Edge::new(e2.0, e2.1));
            let outer = outer_body_edges(&wall, &cert)?;
            if !outer.contains(&e1) || !outer.contains(&e2) {
                return Err(Error::InvalidParameter("terminal edges must lie on the outer face of the body".into()));
            }
            let bound = brick_distance_bound(&wall, &cert, e1, e2, spec.incidence, spec.budget)?;
            if bound < 7 {
                return Err(Error::InvalidParameter(format!(
                    "an {e1}-{e2} path is incident with only {bound} bricks"
                )));
            }
            (e1, e2)
        }
        None => pick_terminal_edges(&wall, &cert, spec.incidence, spec.budget)?,
    };
    let ext = wall.delete_edges(&[e1, e2])?;
    let (folded, bundles) = ext.r_fold_with(spec.r)?;
    let w = condensed_wall(spec.r, true);
    let (mut g, offset) = folded.disjoint_union(&w);
    let l = CondensedLayout { r: spec.r };
    let mut wall_map: BTreeMap<VertexId, VertexId> = w.vertices().map(|v| (v, v + offset)).collect();
    for (pairing, (c, d)) in [(e2.0, e2.1), (e2.1, e2.0)].into_iter().enumerate() {
        let t = [e1.0, e1.1, c, d];
        match check_terminal_orientation(&ext, t, spec.budget)? {
            OrientationVerdict::Holds(_) => {
                for (wv, bv) in [(l.a(), e1.0), (l.b(), e1.1), (l.c(), c), (l.d(), d)] {
                    g = g.identify_vertices(bv, wv + offset)?;
                    wall_map.insert(wv, bv);
                }
                return Ok(GStar {
                    graph: g,
                    r: spec.r,
                    wall,
                    cert,
                    e1,
                    e2,
                    terminals: t,
                    wall_map,
                    bundles,
                });
            }
            OrientationVerdict::Violated(..) if pairing == 0 => continue,
            OrientationVerdict::Violated(..) => break,
            OrientationVerdict::BudgetExceeded(s) => return Err(Error::BudgetExceeded(s.nodes)),
        }
    }
    Err(Error::Construction(format!("no terminal orientation on {e1}, {e2} separates b from d")))
}
