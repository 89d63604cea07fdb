//! Certificates and their verification.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::pattern::Pattern;
use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph, Path, VertexId};

/// A subdivision of `pattern` in a host: branch vertex `i` maps to
/// `branch_map[i]`, pattern edge `k` to `path_map[k]` (oriented from the
/// edge's `a` end to its `b` end).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Embedding {
    pub pattern: String,
    pub branch_map: Vec<VertexId>,
    pub path_map: Vec<Path>,
}

impl Embedding {
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        let mut s: BTreeSet<VertexId> = self.branch_map.iter().copied().collect();
        for p in &self.path_map {
            s.extend(p.vertices().iter().copied());
        }
        s
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        self.path_map.iter().flat_map(|p| p.edges().collect::<Vec<_>>()).collect()
    }

    /// The subgraph of `host` formed by this embedding.
    pub fn subgraph(&self, host: &LabeledGraph) -> Result<LabeledGraph> {
        let mut g = host.edge_subgraph(&self.edges())?;
        for &v in &self.branch_map {
            if !g.contains_vertex(v) {
                g.add_vertex(v, host.role(v))?;
            }
        }
        Ok(g)
    }
}

fn malformed(host: &LabeledGraph, e: &Embedding, pattern: &Pattern) -> Option<String> {
    if e.branch_map.len() != pattern.num_vertices() {
        return Some(format!(
            "branch map has {} entries, pattern has {} branch vertices",
            e.branch_map.len(),
            pattern.num_vertices()
        ));
    }
    if e.path_map.len() != pattern.edges.len() {
        return Some(format!("path map has {} entries, pattern has {} edges", e.path_map.len(), pattern.edges.len()));
    }
    let dangling = e
        .branch_map
        .iter()
        .chain(e.path_map.iter().flat_map(|p| p.vertices().iter()))
        .find(|v| !host.contains_vertex(**v));
    dangling.map(|v| format!("vertex {v} is not in the host"))
}

/// Explains why `e` is not a valid subdivision of `pattern` in `host`.
pub fn embedding_defect(host: &LabeledGraph, e: &Embedding, pattern: &Pattern) -> Option<String> {
    if let Some(m) = malformed(host, e, pattern) {
        return Some(m);
    }
    let branch: BTreeSet<VertexId> = e.branch_map.iter().copied().collect();
    if branch.len() != e.branch_map.len() {
        return Some("branch map is not injective".into());
    }
    let mut interior_seen: BTreeSet<VertexId> = BTreeSet::new();
    let mut edges_seen: BTreeSet<Edge> = BTreeSet::new();
    for (k, (pe, path)) in pattern.edges.iter().zip(&e.path_map).enumerate() {
        if let Err(m) = path.validate(host) {
            return Some(format!("path {k}: {m}"));
        }
        if path.first() != e.branch_map[pe.a] || path.last() != e.branch_map[pe.b] {
            return Some(format!("path {k} does not join the images of its branch vertices"));
        }
        if path.len_edges() < pe.min_len {
            return Some(format!("path {k} has {} edges, needs {}", path.len_edges(), pe.min_len));
        }
        for &v in path.interior() {
            if branch.contains(&v) {
                return Some(format!("path {k} passes through branch image {v}"));
            }
            if !interior_seen.insert(v) {
                return Some(format!("path {k} shares interior vertex {v}"));
            }
        }
        for ed in path.edges() {
            if !edges_seen.insert(ed) {
                return Some(format!("path {k} reuses edge {ed}"));
            }
        }
    }
    None
}

/// True iff `e` is a valid subdivision of `pattern` in `host`. Certificates
/// of the wrong shape or naming vertices outside the host are errors.
pub fn verify_embedding(host: &LabeledGraph, e: &Embedding, pattern: &Pattern) -> Result<bool> {
    if let Some(m) = malformed(host, e, pattern) {
        return Err(Error::MalformedCertificate(m));
    }
    Ok(embedding_defect(host, e, pattern).is_none())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Linkage {
    pub pab: Path,
    pub pcd: Path,
}

impl Linkage {
    pub fn edges(&self) -> BTreeSet<Edge> {
        self.pab.edges().chain(self.pcd.edges()).collect()
    }
}

/// Checks `l` is an (a-b, c-d) linkage in `host` for the given terminals.
pub fn linkage_defect(host: &LabeledGraph, l: &Linkage, t: [VertexId; 4]) -> Option<String> {
    for (name, p, s, e) in [("a-b", &l.pab, t[0], t[1]), ("c-d", &l.pcd, t[2], t[3])] {
        if let Err(m) = p.validate(host) {
            return Some(format!("{name} path: {m}"));
        }
        if p.first() != s || p.last() != e {
            return Some(format!("{name} path has wrong ends"));
        }
    }
    let a: BTreeSet<VertexId> = l.pab.vertices().iter().copied().collect();
    if l.pcd.vertices().iter().any(|v| a.contains(v)) {
        return Some("paths intersect".into());
    }
    None
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Packing {
    pub embeddings: Vec<Embedding>,
}

/// Every member verifies and no two members share an edge.
pub fn packing_defect(host: &LabeledGraph, p: &Packing, pattern: &Pattern) -> Option<String> {
    let mut used: BTreeSet<Edge> = BTreeSet::new();
    for (i, e) in p.embeddings.iter().enumerate() {
        if let Some(m) = embedding_defect(host, e, pattern) {
            return Some(format!("member {i}: {m}"));
        }
        for ed in e.edges() {
            if !used.insert(ed) {
                return Some(format!("member {i} reuses edge {ed}"));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::brick_wall;

    #[test]
    fn identity_b1_and_mutations() {
        let (g, cert) = brick_wall(1);
        let p = Pattern::from_elementary("B1", &g, Some(&cert));
        let e = Embedding {
            pattern: "B1".into(),
            branch_map: p.source.clone(),
            path_map: p.edges.iter().map(|pe| Path(pe.chain.clone())).collect(),
        };
        assert!(verify_embedding(&g, &e, &p).unwrap());
        let mut bad = e.clone();
        bad.branch_map.swap(0, 1);
        assert!(!verify_embedding(&g, &bad, &p).unwrap());
        let mut dangling = e.clone();
        dangling.branch_map[0] = 99;
        assert!(verify_embedding(&g, &dangling, &p).is_err());
        let mut short = e;
        short.path_map.pop();
        assert!(verify_embedding(&g, &short, &p).is_err());
    }
}
