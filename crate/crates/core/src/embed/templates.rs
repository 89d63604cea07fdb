//! Explicit embeddings placed in consecutive layers of a condensed wall.
//!
//! Templates are walks over wall addresses: `a`, `b`, `zK` (K-th bottleneck
//! of the chunk), `J:LP` (layer J of the chunk, row position P from the left)
//! and `J:RK` (K-th position from the right). Consecutive row addresses in
//! the same layer stand for the row segment between them, so a template
//! stretches to wider walls with attachment parities intact.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::embedding::Embedding;
use super::pattern::Pattern;
use super::reduce::subdivision_certificate;
use super::search::{find_topological_minor, SearchConstraints, SearchOutcome};
use crate::error::{Error, Result};
use crate::generators::{condensed_wall, CondensedLayout};
use crate::graph::{Edge, EdgeClass, LabeledGraph, Role, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Figure {
    /// B3 in one layer.
    Fig5,
    /// B6 in three layers using a and b.
    Fig8,
    /// B7 in five layers plus a c-d path outside the wall.
    Fig10,
    /// B8 in three layers plus a brick attached to c, b, d.
    Fig12,
    /// B9 in three layers plus a B2 attached to a, b, c, d.
    Fig14,
}

/// Part of a figure's host that lies outside the condensed wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exterior {
    None,
    CdPath,
    Brick,
    DoubleBrick,
}

impl Figure {
    pub const ALL: [Figure; 5] = [Figure::Fig5, Figure::Fig8, Figure::Fig10, Figure::Fig12, Figure::Fig14];

    pub fn parse(s: &str) -> Option<Figure> {
        Figure::ALL.into_iter().find(|f| f.name() == s.to_ascii_lowercase())
    }

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig5 => "fig5",
            Figure::Fig8 => "fig8",
            Figure::Fig10 => "fig10",
            Figure::Fig12 => "fig12",
            Figure::Fig14 => "fig14",
        }
    }

    pub fn pattern_name(self) -> &'static str {
        match self {
            Figure::Fig5 => "B3",
            Figure::Fig8 => "B6",
            Figure::Fig10 => "B7",
            Figure::Fig12 => "B8",
            Figure::Fig14 => "B9",
        }
    }

    /// The pattern the template realises. Only the B3 template keeps the
    /// chain lengths of the elementary wall; the others realise the skeleton.
    pub fn pattern(self) -> Pattern {
        let p = Pattern::named(self.pattern_name()).expect("figure patterns exist");
        match self {
            Figure::Fig5 => p,
            _ => p.skeleton(),
        }
    }

    pub fn layers(self) -> usize {
        match self {
            Figure::Fig5 => 1,
            Figure::Fig10 => 5,
            _ => 3,
        }
    }

    pub fn exterior(self) -> Exterior {
        match self {
            Figure::Fig5 | Figure::Fig8 => Exterior::None,
            Figure::Fig10 => Exterior::CdPath,
            Figure::Fig12 => Exterior::Brick,
            Figure::Fig14 => Exterior::DoubleBrick,
        }
    }

    /// Host the figure is drawn in: wall size and whether jump-edges are present.
    pub fn stated_host(self) -> (usize, bool) {
        match self {
            Figure::Fig5 | Figure::Fig8 => (6, false),
            Figure::Fig10 => (5, true),
            Figure::Fig12 | Figure::Fig14 => (3, false),
        }
    }

    pub fn walks(self) -> &'static [&'static str] {
        match self {
            Figure::Fig5 => &["z1 1:L2 1:R1 z1", "z0 1:L3", "z0 1:L7", "z0 1:R2"],
            Figure::Fig8 => &[
                "z0 1:L1 1:L2 z1 1:L6 1:L7 z0",
                "z0 1:R2 1:L7",
                "z1 2:L5 2:L6 z2",
                "1:L1 a 3:L1",
                "1:R2 1:R1 b 3:R1",
                "z2 3:L1 3:L2 z3 3:L8 3:L5 z2",
                "z3 3:R1 3:L8",
            ],
            Figure::Fig10 => &[
                "z0 1:L3 1:L6 z1 2:L3 2:L6 z2 3:L5 3:L6 z3 4:R2 4:R1 z4 5:L5 5:L6 z5",
                "a 1:L1 1:L3",
                "z0 1:R2 1:R1 b",
                "z1 1:R1",
                "2:L6 2:R1 b",
                "a 4:L1 4:L4 z4",
                "4:L4 4:L5 z3",
                "4:R1 b",
                "a 5:L1 5:L2 z5",
            ],
            Figure::Fig12 => &[
                "z0 1:R2 1:R1 z1 2:L3 2:L4 z2 3:R2 3:R1 z3",
                "a 1:L1 1:L2",
                "z0 1:L3 1:L2",
                "z1 1:L2",
                "1:R1 b 3:R1",
                "a 2:L1 2:L3",
                "a 3:L1 3:L3",
                "3:L3 z2",
                "3:L3 3:L4 z3",
            ],
            Figure::Fig14 => &[
                "z0 1:L1 1:L2 z1 2:L3 2:L4 z2 3:L1 3:L2 z3",
                "a 1:L1",
                "a 3:L1",
                "z0 1:R2 1:R1 b",
                "z1 2:R2 2:R1 b",
                "2:L4 2:R2",
                "z2 3:L3 3:L4 z3",
            ],
        }
    }

    /// Smallest wall size in which the template certifies its pattern.
    pub fn min_size(self) -> usize {
        match self {
            // The B3 chains of length 4 need rows of 12.
            Figure::Fig5 => self.address_size().max(6),
            _ => self.address_size(),
        }
    }

    /// Smallest wall size whose rows hold every address of the template.
    fn address_size(self) -> usize {
        let (mut left, mut right) = (0, 0);
        for w in self.walks() {
            for t in w.split_whitespace() {
                if let Some((_, pos)) = t.split_once(':') {
                    let k: usize = pos[1..].parse().unwrap();
                    if pos.starts_with('L') {
                        left = left.max(k);
                    } else {
                        right = right.max(k);
                    }
                }
            }
        }
        (left + right).div_ceil(2).max(self.layers())
    }
}

pub const TEMPLATE_BUDGET: u64 = 100_000_000;

/// A condensed wall with an optional exterior part glued to its terminals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureHost {
    pub graph: LabeledGraph,
    pub layout: CondensedLayout,
    pub exterior: Exterior,
    /// Exterior vertices by name (`p`, `h0`.. or `p0`.., `q1`..).
    pub named: BTreeMap<String, VertexId>,
    /// Midpoints of the `copies` parallel paths replacing each exterior edge.
    pub bundles: BTreeMap<Edge, Vec<VertexId>>,
}

/// Exterior graph on named vertices; the letters a..d are glued to the wall.
fn exterior_edges(ext: Exterior) -> Vec<(&'static str, &'static str)> {
    match ext {
        Exterior::None => vec![],
        Exterior::CdPath => vec![("c", "p"), ("p", "d")],
        Exterior::Brick => vec![
            ("h0", "h1"),
            ("h1", "h2"),
            ("h2", "h3"),
            ("h3", "h4"),
            ("h4", "h5"),
            ("h5", "h0"),
            ("c", "h1"),
            ("b", "h0"),
            ("d", "h5"),
        ],
        Exterior::DoubleBrick => vec![
            ("p0", "p1"),
            ("p1", "p2"),
            ("p2", "p3"),
            ("p3", "p4"),
            ("p4", "p5"),
            ("p5", "p0"),
            ("p5", "q1"),
            ("q1", "q2"),
            ("q2", "q3"),
            ("q3", "q4"),
            ("q4", "p0"),
            ("a", "q4"),
            ("b", "p2"),
            ("c", "p1"),
            ("d", "q3"),
        ],
    }
}

/// W(size) or W⁻(size) plus `copies` parallel copies of each exterior edge
/// (as length-2 paths).
pub fn figure_host(size: usize, jump_edges: bool, exterior: Exterior, copies: usize) -> Result<FigureHost> {
    if size == 0 {
        return Err(Error::InvalidParameter("wall size must be positive".into()));
    }
    let layout = CondensedLayout { r: size };
    let mut g = condensed_wall(size, jump_edges);
    let mut named = BTreeMap::new();
    let mut bundles = BTreeMap::new();
    let edges = exterior_edges(exterior);
    if !edges.is_empty() {
        if copies == 0 {
            return Err(Error::InvalidParameter("an exterior needs at least one copy".into()));
        }
        let glue = |n: &str| match n {
            "a" => Some(layout.a()),
            "b" => Some(layout.b()),
            "c" => Some(layout.c()),
            "d" => Some(layout.d()),
            _ => None,
        };
        for (u, v) in &edges {
            for n in [u, v] {
                if glue(n).is_none() && !named.contains_key(*n) {
                    let id = g.push_vertex(Role::Plain);
                    named.insert(n.to_string(), id);
                }
            }
        }
        let id = |n: &str| glue(n).unwrap_or_else(|| named[n]);
        for (u, v) in &edges {
            let (x, y) = (id(u), id(v));
            let mut mids = Vec::with_capacity(copies);
            for _ in 0..copies {
                let m = g.push_vertex(Role::Subdivision(Edge::new(x, y)));
                g.add_edge(x, m, EdgeClass::Plain)?;
                g.add_edge(m, y, EdgeClass::Plain)?;
                mids.push(m);
            }
            bundles.insert(Edge::new(x, y), mids);
        }
    }
    Ok(FigureHost { graph: g, layout, exterior, named, bundles })
}

impl FigureHost {
    /// Host a figure is drawn in, with one exterior copy.
    pub fn stated(fig: Figure) -> FigureHost {
        let (size, jumps) = fig.stated_host();
        figure_host(size, jumps, fig.exterior(), 1).expect("stated hosts are valid")
    }

    /// Vertices of the condensed wall.
    pub fn wall_vertices(&self) -> BTreeSet<VertexId> {
        (0..self.layout.num_vertices() as VertexId).collect()
    }

    /// Whether every edge touching a row vertex of layers `first..first+len`
    /// survives `deleted`.
    pub fn chunk_intact(&self, first: usize, len: usize, deleted: &BTreeSet<Edge>) -> bool {
        let l = self.layout;
        (first..first + len).all(|j| {
            (1..=2 * l.r).all(|p| {
                let u = l.u(j, p);
                self.graph.neighbors(u).all(|w| !deleted.contains(&Edge::new(u, w)))
            })
        })
    }
}

/// A figure placed in a host, with the B_n certificate derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureEmbedding {
    pub figure: Figure,
    pub first_layer: usize,
    pub embedding: Embedding,
    /// Edges of the placed template, its connections and exterior part.
    pub edges: BTreeSet<Edge>,
    /// Exterior vertices the template relies on.
    pub attachments: Vec<VertexId>,
    /// Search nodes spent deriving the certificate.
    pub nodes: u64,
}

fn resolve(token: &str, first: usize, layers: usize, l: CondensedLayout) -> Result<VertexId> {
    let bad = || Error::InvalidParameter(format!("template address {token} does not fit W of size {}", l.r));
    match token {
        "a" => return Ok(l.a()),
        "b" => return Ok(l.b()),
        _ => {}
    }
    if let Some(k) = token.strip_prefix('z') {
        let k: usize = k.parse().map_err(|_| bad())?;
        if k > layers || first - 1 + k > l.r {
            return Err(bad());
        }
        return Ok(l.z(first - 1 + k));
    }
    let (layer, pos) = token.split_once(':').ok_or_else(bad)?;
    let j: usize = layer.parse().map_err(|_| bad())?;
    let k: usize = pos.get(1..).and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    if j == 0 || j > layers || first - 1 + j > l.r || k == 0 || k > 2 * l.r {
        return Err(bad());
    }
    let p = if pos.starts_with('L') { k } else { 2 * l.r + 1 - k };
    Ok(l.u(first - 1 + j, p))
}

fn row_of(g: &LabeledGraph, v: VertexId) -> Option<(usize, usize)> {
    match g.role(v) {
        Role::RowVertex { layer, position } => Some((layer, position)),
        _ => None,
    }
}

/// Host walks of a template at `first_layer`, row segments expanded.
pub fn place_walks(fig: Figure, first_layer: usize, host: &FigureHost) -> Result<Vec<Vec<VertexId>>> {
    let l = host.layout;
    if first_layer == 0 || first_layer - 1 + fig.layers() > l.r {
        return Err(Error::InvalidParameter(format!(
            "{} needs layers {first_layer}..{} but the wall has {}",
            fig.name(),
            first_layer + fig.layers() - 1,
            l.r
        )));
    }
    let mut out = Vec::new();
    for w in fig.walks() {
        let mut walk: Vec<VertexId> = Vec::new();
        for t in w.split_whitespace() {
            let v = resolve(t, first_layer, fig.layers(), l)?;
            if let (Some((j, p)), Some((j2, p2))) =
                (walk.last().and_then(|&u| row_of(&host.graph, u)), row_of(&host.graph, v))
            {
                if j == j2 && p.abs_diff(p2) > 1 {
                    let step: Vec<usize> = if p < p2 { (p + 1..p2).collect() } else { (p2 + 1..p).rev().collect() };
                    walk.extend(step.into_iter().map(|q| l.u(j, q)));
                }
            }
            walk.push(v);
        }
        for pair in walk.windows(2) {
            if !host.graph.has_edge(pair[0], pair[1]) {
                return Err(Error::InvalidParameter(format!(
                    "{}: {} and {} are not adjacent in W of size {}",
                    fig.name(),
                    pair[0],
                    pair[1],
                    l.r
                )));
            }
        }
        out.push(walk);
    }
    Ok(out)
}

fn bfs_route(
    g: &LabeledGraph,
    s: VertexId,
    t: VertexId,
    allowed: impl Fn(VertexId) -> bool,
    avoid: &BTreeSet<Edge>,
) -> Option<Vec<VertexId>> {
    let mut prev: BTreeMap<VertexId, VertexId> = BTreeMap::from([(s, s)]);
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        if x == t {
            let mut p = vec![t];
            while *p.last().unwrap() != s {
                p.push(prev[p.last().unwrap()]);
            }
            p.reverse();
            return Some(p);
        }
        for w in g.neighbors(x) {
            if !prev.contains_key(&w) && (w == t || allowed(w)) && !avoid.contains(&Edge::new(x, w)) {
                prev.insert(w, x);
                q.push_back(w);
            }
        }
    }
    None
}

/// Places `fig` at `first_layer`, connects it to the exterior part avoiding
/// the edges in `avoid`, and derives the B_n embedding inside the result.
pub fn construct_figure_embedding(
    fig: Figure,
    first_layer: usize,
    host: &FigureHost,
    avoid: &BTreeSet<Edge>,
) -> Result<Option<FigureEmbedding>> {
    let c = SearchConstraints { budget: TEMPLATE_BUDGET, ..Default::default() };
    construct_figure_embedding_with(fig, first_layer, host, avoid, &c)
}

/// As [`construct_figure_embedding`], taking the budget and parallelism of
/// the certificate search from `c`.
pub fn construct_figure_embedding_with(
    fig: Figure,
    first_layer: usize,
    host: &FigureHost,
    avoid: &BTreeSet<Edge>,
    c: &SearchConstraints,
) -> Result<Option<FigureEmbedding>> {
    match place_figure(fig, first_layer, host, avoid)? {
        Some(placed) => certify(&placed, host, c).map(Some),
        None => Ok(None),
    }
}

/// A template placed in a host, before its certificate is derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacedFigure {
    pub figure: Figure,
    pub first_layer: usize,
    pub edges: BTreeSet<Edge>,
    pub attachments: Vec<VertexId>,
}

/// Lays out the template walks, routes to c and d and picks exterior
/// copies, all avoiding `avoid`. `None` when a needed edge is missing.
pub fn place_figure(fig: Figure, first_layer: usize, host: &FigureHost, avoid: &BTreeSet<Edge>) -> Result<Option<PlacedFigure>> {
    if host.exterior != fig.exterior() {
        return Err(Error::InvalidParameter(format!("{} needs a host with a {:?} exterior", fig.name(), fig.exterior())));
    }
    let walks = place_walks(fig, first_layer, host)?;
    let l = host.layout;
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    let mut used_vertices: BTreeSet<VertexId> = BTreeSet::new();
    for w in &walks {
        used_vertices.extend(w.iter().copied());
        edges.extend(w.windows(2).map(|p| Edge::new(p[0], p[1])));
    }
    if edges.iter().any(|e| avoid.contains(e)) {
        return Ok(None);
    }
    let mut attachments = Vec::new();
    if fig.exterior() != Exterior::None {
        let wall = host.wall_vertices();
        let inner = |v: VertexId| wall.contains(&v) && v != l.a() && v != l.b();
        let top = l.z(first_layer - 1);
        let bottom = l.z(first_layer - 1 + fig.layers());
        for (from, to) in [(top, l.c()), (bottom, l.d())] {
            if from == to {
                continue;
            }
            let blocked = used_vertices.clone();
            let Some(route) = bfs_route(&host.graph, from, to, |v| inner(v) && !blocked.contains(&v), avoid) else {
                return Ok(None);
            };
            used_vertices.extend(route.iter().copied());
            edges.extend(route.windows(2).map(|p| Edge::new(p[0], p[1])));
        }
        for (e, mids) in &host.bundles {
            let m = mids
                .iter()
                .find(|&&m| !avoid.contains(&Edge::new(e.0, m)) && !avoid.contains(&Edge::new(m, e.1)));
            let Some(&m) = m else { return Ok(None) };
            edges.insert(Edge::new(e.0, m));
            edges.insert(Edge::new(m, e.1));
        }
        attachments = host.named.values().copied().collect();
    }
    Ok(Some(PlacedFigure { figure: fig, first_layer, edges, attachments }))
}

/// Derives the B_n embedding inside a placed template.
pub fn certify(placed: &PlacedFigure, host: &FigureHost, c: &SearchConstraints) -> Result<FigureEmbedding> {
    let fig = placed.figure;
    let pattern = fig.pattern();
    let found = |embedding, nodes| FigureEmbedding {
        figure: fig,
        first_layer: placed.first_layer,
        embedding,
        edges: placed.edges.clone(),
        attachments: placed.attachments.clone(),
        nodes,
    };
    let (direct, s) = subdivision_certificate(&host.graph, &placed.edges, &pattern, c.budget);
    if let Some(e) = direct {
        return Ok(found(e, s.nodes));
    }
    if !s.complete {
        return Err(Error::BudgetExceeded(s.nodes));
    }
    let c = SearchConstraints {
        within: Some(placed.edges.clone()),
        budget: c.budget,
        parallelism: c.parallelism,
        ..Default::default()
    };
    match find_topological_minor(&host.graph, &pattern, &c)? {
        SearchOutcome::Found(embedding, s) => Ok(found(embedding, s.nodes)),
        SearchOutcome::NotFound(_) => Err(Error::Construction(format!(
            "{} placed at layer {} of W({}) holds no {}",
            fig.name(),
            placed.first_layer,
            host.layout.r,
            pattern.name
        ))),
        SearchOutcome::BudgetExceeded(s) => Err(Error::BudgetExceeded(s.nodes)),
    }
}
