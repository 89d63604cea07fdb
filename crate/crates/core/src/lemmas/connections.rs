//! Disjoint connections from a B2 to the rest of a condensed wall.

use std::collections::{BTreeMap, BTreeSet};

use crate::embed::flow::FlowNet;
use crate::embed::Embedding;
use crate::generators::CondensedLayout;
use crate::graph::{Edge, LabeledGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Connections {
    /// The layer holding every vertex of the embedding.
    pub layer: usize,
    /// Most disjoint paths from the embedding to vertices outside the layer
    /// in a subcubic subgraph containing it.
    pub total: u32,
    /// Most of those paths that can run through a bottleneck of the layer.
    pub via_bottleneck: u32,
}

/// `None` when `e` does not fit in a single layer of `w`.
///
/// Paths start at distinct vertices of `e` of degree 2 in `e` (a subcubic
/// host leaves the others no spare edge), avoid `e` otherwise, and are
/// vertex-disjoint.
pub fn connections(w: &LabeledGraph, l: CondensedLayout, e: &Embedding) -> Option<Connections> {
    let used = e.vertices();
    let layer = (1..=l.r).find(|&j| used.is_subset(&l.layer_vertices(j)))?;
    let inside = l.layer_vertices(layer);
    let own = e.edges();
    let mut deg: BTreeMap<VertexId, usize> = BTreeMap::new();
    for x in &own {
        *deg.entry(x.0).or_default() += 1;
        *deg.entry(x.1).or_default() += 1;
    }
    let starts: BTreeSet<VertexId> = used.iter().copied().filter(|v| deg.get(v) == Some(&2)).collect();
    let outside = |v: VertexId| !inside.contains(&v);
    let total = max_paths(w, &used, &starts, |_| true, outside);
    let bottlenecks = [l.z(layer - 1), l.z(layer)];
    let exits: BTreeSet<VertexId> = bottlenecks
        .into_iter()
        .filter(|&z| w.neighbors(z).any(|x| outside(x) && !own.contains(&Edge::new(z, x))))
        .collect();
    let via_bottleneck = max_paths(w, &used, &starts, |v| inside.contains(&v), |v| exits.contains(&v));
    Some(Connections { layer, total, via_bottleneck })
}

/// Vertex-disjoint paths from `starts` to vertices satisfying `target`,
/// through vertices satisfying `allowed`, never entering `body` again.
fn max_paths(
    w: &LabeledGraph,
    body: &BTreeSet<VertexId>,
    starts: &BTreeSet<VertexId>,
    allowed: impl Fn(VertexId) -> bool,
    target: impl Fn(VertexId) -> bool,
) -> u32 {
    let verts: Vec<VertexId> = w.vertices().collect();
    let idx: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    // Vertex v splits into 2i (in) and 2i+1 (out).
    let (s, t) = (2 * n, 2 * n + 1);
    let mut net = FlowNet::new(2 * n + 2);
    let usable = |v: VertexId| starts.contains(&v) || (!body.contains(&v) && allowed(v));
    for (i, &v) in verts.iter().enumerate() {
        if !usable(v) {
            continue;
        }
        net.add_arc(2 * i, 2 * i + 1, 1);
        if starts.contains(&v) {
            net.add_arc(s, 2 * i, 1);
        }
        if target(v) {
            net.add_arc(2 * i + 1, t, 1);
        }
    }
    for x in w.edges() {
        let (u, v) = (x.0, x.1);
        if !usable(u) || !usable(v) || (body.contains(&u) && body.contains(&v)) {
            continue;
        }
        let (iu, iv) = (idx[&u], idx[&v]);
        // Starts only send flow outwards.
        if !starts.contains(&v) {
            net.add_arc(2 * iu + 1, 2 * iv, 1);
        }
        if !starts.contains(&u) {
            net.add_arc(2 * iv + 1, 2 * iu, 1);
        }
    }
    net.max_flow(s, t, u32::MAX)
}
