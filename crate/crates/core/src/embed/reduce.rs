//! Certificates for subgraphs that are exactly a subdivision of a pattern.

use std::collections::{BTreeMap, BTreeSet};

use super::embedding::{verify_embedding, Embedding};
use super::pattern::Pattern;
use super::search::SearchStats;
use crate::graph::{Edge, LabeledGraph, Path, VertexId};

/// Branch vertices and chains of the subgraph formed by `edges`.
struct Reduced {
    branch: Vec<VertexId>,
    /// Chains as vertex sequences between branch vertices.
    chains: Vec<Vec<VertexId>>,
}

fn reduce(edges: &BTreeSet<Edge>) -> Option<Reduced> {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for e in edges {
        adj.entry(e.0).or_default().push(e.1);
        adj.entry(e.1).or_default().push(e.0);
    }
    if adj.values().any(|n| n.len() < 2) {
        return None;
    }
    let branch: Vec<VertexId> = adj.iter().filter(|(_, n)| n.len() >= 3).map(|(&v, _)| v).collect();
    let is_branch: BTreeSet<VertexId> = branch.iter().copied().collect();
    let mut seen: BTreeSet<Edge> = BTreeSet::new();
    let mut chains = Vec::new();
    for &s in &branch {
        for &first in &adj[&s] {
            if seen.contains(&Edge::new(s, first)) {
                continue;
            }
            let mut chain = vec![s, first];
            seen.insert(Edge::new(s, first));
            while !is_branch.contains(chain.last().unwrap()) {
                let (prev, cur) = (chain[chain.len() - 2], chain[chain.len() - 1]);
                let next = *adj[&cur].iter().find(|&&w| w != prev)?;
                seen.insert(Edge::new(cur, next));
                chain.push(next);
            }
            chains.push(chain);
        }
    }
    // Cycles without branch vertices are left unvisited.
    if seen.len() != edges.len() {
        return None;
    }
    Some(Reduced { branch, chains })
}

/// An embedding of `pattern` whose edge set is exactly `edges`, if there is
/// one. Only patterns whose branch vertices all have degree 3 or more and no
/// loops are handled; others return `None`. The matching stops at `budget`
/// nodes, leaving `complete` unset.
pub fn subdivision_certificate(
    host: &LabeledGraph,
    edges: &BTreeSet<Edge>,
    pattern: &Pattern,
    budget: u64,
) -> (Option<Embedding>, SearchStats) {
    let mut stats = SearchStats { nodes: 0, complete: true };
    let k = pattern.num_vertices();
    if (0..k).any(|i| pattern.degree(i) < 3) || pattern.edges.iter().any(|e| e.a == e.b) {
        return (None, stats);
    }
    let Some(red) = reduce(edges) else { return (None, stats) };
    if red.branch.len() != k || red.chains.len() != pattern.edges.len() || red.chains.iter().any(|c| c[0] == *c.last().unwrap()) {
        return (None, stats);
    }
    let hidx: BTreeMap<VertexId, usize> = red.branch.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut hmult = vec![vec![0usize; k]; k];
    let mut hdeg = vec![0usize; k];
    for c in &red.chains {
        let (x, y) = (hidx[&c[0]], hidx[c.last().unwrap()]);
        hmult[x][y] += 1;
        hmult[y][x] += 1;
        hdeg[x] += 1;
        hdeg[y] += 1;
    }
    let mut pmult = vec![vec![0usize; k]; k];
    for e in &pattern.edges {
        pmult[e.a][e.b] += 1;
        pmult[e.b][e.a] += 1;
    }
    // Pattern vertices in BFS order so each one after the first meets a
    // mapped neighbour.
    let mut order = Vec::new();
    let mut placed = vec![false; k];
    for root in 0..k {
        if placed[root] {
            continue;
        }
        placed[root] = true;
        let mut q = std::collections::VecDeque::from([root]);
        while let Some(i) = q.pop_front() {
            order.push(i);
            for j in 0..k {
                if pmult[i][j] > 0 && !placed[j] {
                    placed[j] = true;
                    q.push_back(j);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; k];
    let mut used = vec![false; k];
    let found = extend(0, &order, &mut map, &mut used, &pmult, &hmult, &hdeg, pattern, &red, &mut stats, budget);
    let Some(emb) = found.map(|m| assemble(&m, pattern, &red)) else { return (None, stats) };
    match verify_embedding(host, &emb, pattern) {
        Ok(true) => (Some(emb), stats),
        _ => (None, stats),
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    depth: usize,
    order: &[usize],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    pmult: &[Vec<usize>],
    hmult: &[Vec<usize>],
    hdeg: &[usize],
    pattern: &Pattern,
    red: &Reduced,
    stats: &mut SearchStats,
    budget: u64,
) -> Option<Vec<usize>> {
    if stats.nodes >= budget {
        stats.complete = false;
        return None;
    }
    stats.nodes += 1;
    if depth == order.len() {
        return lengths_fit(map, pattern, red).then(|| map.clone());
    }
    let i = order[depth];
    for h in 0..hdeg.len() {
        if used[h] || hdeg[h] != pattern.degree(i) {
            continue;
        }
        if order[..depth].iter().any(|&j| pmult[i][j] != hmult[h][map[j]]) {
            continue;
        }
        map[i] = h;
        used[h] = true;
        if let Some(m) = extend(depth + 1, order, map, used, pmult, hmult, hdeg, pattern, red, stats, budget) {
            return Some(m);
        }
        used[h] = false;
        map[i] = usize::MAX;
    }
    None
}

/// Chains between the images of each pattern pair, sorted by length,
/// paired with the pattern edges sorted by minimum length.
fn pairing(map: &[usize], pattern: &Pattern, red: &Reduced) -> Vec<(usize, usize)> {
    let hidx: BTreeMap<VertexId, usize> = red.branch.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (ci, c) in red.chains.iter().enumerate() {
        let (x, y) = (hidx[&c[0]], hidx[c.last().unwrap()]);
        by_pair.entry((x.min(y), x.max(y))).or_default().push(ci);
    }
    let mut want: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (pi, e) in pattern.edges.iter().enumerate() {
        let (x, y) = (map[e.a], map[e.b]);
        want.entry((x.min(y), x.max(y))).or_default().push(pi);
    }
    let mut out = Vec::new();
    for (key, mut ps) in want {
        let mut cs = by_pair.remove(&key).unwrap_or_default();
        ps.sort_by_key(|&p| pattern.edges[p].min_len);
        cs.sort_by_key(|&c| red.chains[c].len());
        out.extend(ps.into_iter().zip(cs));
    }
    out
}

fn lengths_fit(map: &[usize], pattern: &Pattern, red: &Reduced) -> bool {
    let pairs = pairing(map, pattern, red);
    pairs.len() == pattern.edges.len() && pairs.iter().all(|&(p, c)| red.chains[c].len() > pattern.edges[p].min_len)
}

fn assemble(map: &[usize], pattern: &Pattern, red: &Reduced) -> Embedding {
    let mut path_map = vec![Path(vec![]); pattern.edges.len()];
    for (p, c) in pairing(map, pattern, red) {
        let chain = &red.chains[c];
        let start = red.branch[map[pattern.edges[p].a]];
        path_map[p] = if chain[0] == start { Path(chain.clone()) } else { Path(chain.iter().rev().copied().collect()) };
    }
    Embedding {
        pattern: pattern.name.clone(),
        branch_map: map.iter().map(|&h| red.branch[h]).collect(),
        path_map,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::brick_wall;

    #[test]
    fn elementary_walls_certify_themselves() {
        for n in 2..=10 {
            let (g, _) = brick_wall(n);
            let p = Pattern::named(&format!("B{n}")).unwrap();
            let all: BTreeSet<Edge> = g.edges().collect();
            let (e, _) = subdivision_certificate(&g, &all, &p, u64::MAX);
            assert!(e.is_some(), "B{n}");
        }
    }

    #[test]
    fn wrong_pattern_or_extra_edges() {
        let (g, _) = brick_wall(4);
        let all: BTreeSet<Edge> = g.edges().collect();
        assert!(subdivision_certificate(&g, &all, &Pattern::named("B5").unwrap(), u64::MAX).0.is_none());
        let (g3, _) = brick_wall(3);
        let mut some: BTreeSet<Edge> = g3.edges().collect();
        let first = *some.iter().next().unwrap();
        some.remove(&first);
        assert!(subdivision_certificate(&g3, &some, &Pattern::named("B3").unwrap(), u64::MAX).0.is_none());
    }

    #[test]
    fn strict_lengths_are_enforced() {
        // B3 with one outer chain shortened by contracting a subdivision
        // vertex is a skeleton B3 but not a strict one.
        let (g, _) = brick_wall(3);
        let p = Pattern::named("B3").unwrap();
        let chain = p.edges.iter().find(|e| e.min_len >= 2).unwrap().chain.clone();
        let (u, m, w) = (chain[0], chain[1], chain[2]);
        let mut h = g.delete_vertices(&[m]).unwrap();
        h.add_edge(u, w, Default::default()).unwrap();
        let all: BTreeSet<Edge> = h.edges().collect();
        assert!(subdivision_certificate(&h, &all, &p, u64::MAX).0.is_none());
        assert!(subdivision_certificate(&h, &all, &p.skeleton(), u64::MAX).0.is_some());
        let (e, s) = subdivision_certificate(&h, &all, &p.skeleton(), 1);
        assert!(e.is_none() && !s.complete);
    }
}
