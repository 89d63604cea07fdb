//! Edge-disjoint packings: a generic backtracking search and the chunked
//! template construction used by the packing lemmas.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Mutex;

use super::embedding::{packing_defect, Embedding, Packing};
use super::pattern::Pattern;
use super::search::{enumerate_embeddings, SearchConstraints, SearchStats};
use super::templates::{certify, place_figure, Figure, FigureEmbedding, FigureHost};
use crate::error::Result;
use crate::graph::{Edge, LabeledGraph, Path, VertexId};

/// Alternatives tried per member before backtracking gives up on a level.
const BRANCHING: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PackingOutcome {
    Found(Packing, SearchStats),
    /// `stats.complete` is set only when every level was enumerated in full.
    NotFound(SearchStats),
    BudgetExceeded(SearchStats),
}

impl PackingOutcome {
    pub fn stats(&self) -> SearchStats {
        match self {
            PackingOutcome::Found(_, s) | PackingOutcome::NotFound(s) | PackingOutcome::BudgetExceeded(s) => *s,
        }
    }

    pub fn packing(&self) -> Option<&Packing> {
        match self {
            PackingOutcome::Found(p, _) => Some(p),
            _ => None,
        }
    }
}

struct Packer<'a> {
    host: &'a LabeledGraph,
    pattern: &'a Pattern,
    base: &'a SearchConstraints,
    edges: BTreeSet<Edge>,
    nodes: u64,
    exceeded: bool,
    truncated: bool,
    /// Witnesses enumerated per level; `None` enumerates all of them.
    cap: Option<usize>,
}

impl Packer<'_> {
    /// Extends `chosen` to `k` members whose edge sets increase strictly, so
    /// each packing is met once.
    fn extend(&mut self, chosen: &mut Vec<(Vec<Edge>, Embedding)>, used: &BTreeSet<Edge>, k: usize) -> Result<bool> {
        if chosen.len() == k {
            return Ok(true);
        }
        if self.nodes >= self.base.budget {
            self.exceeded = true;
            return Ok(false);
        }
        let mut c = self.base.clone();
        c.within = Some(self.edges.difference(used).copied().collect());
        c.budget = self.base.budget - self.nodes;
        c.max_witnesses = self.cap;
        let en = enumerate_embeddings(self.host, self.pattern, &c)?;
        self.nodes += en.stats.nodes;
        if en.budget_exceeded {
            self.exceeded = true;
            return Ok(false);
        }
        if !en.stats.complete {
            self.truncated = true;
        }
        let mut seen = BTreeSet::new();
        for e in en.embeddings {
            let key: Vec<Edge> = e.edges().into_iter().collect();
            if chosen.last().is_some_and(|(prev, _)| key <= *prev) || !seen.insert(key.clone()) {
                continue;
            }
            let mut next = used.clone();
            next.extend(key.iter().copied());
            chosen.push((key, e));
            if self.extend(chosen, &next, k)? {
                return Ok(true);
            }
            chosen.pop();
            if self.exceeded {
                return Ok(false);
            }
        }
        Ok(false)
    }
}

/// `k` pairwise edge-disjoint embeddings of `pattern`, greedy first with
/// backtracking. `c.within` (if set) bounds the edges all members may use.
///
/// A first pass branches on at most a few dozen embeddings per level. If it
/// finds nothing after cutting some level short, a second pass branches on
/// every embedding, so `NotFound` is always an exhaustion certificate.
pub fn find_edge_disjoint_packing(
    host: &LabeledGraph,
    pattern: &Pattern,
    k: usize,
    c: &SearchConstraints,
) -> Result<PackingOutcome> {
    if k == 0 {
        return Ok(PackingOutcome::Found(Packing::default(), SearchStats { nodes: 0, complete: true }));
    }
    let edges = match &c.within {
        Some(w) => w.clone(),
        None => host.edges().collect(),
    };
    let mut p = Packer { host, pattern, base: c, edges, nodes: 0, exceeded: false, truncated: false, cap: Some(BRANCHING) };
    let mut chosen = Vec::new();
    let mut found = p.extend(&mut chosen, &BTreeSet::new(), k)?;
    if !found && !p.exceeded && p.truncated {
        p.cap = None;
        p.truncated = false;
        chosen.clear();
        found = p.extend(&mut chosen, &BTreeSet::new(), k)?;
    }
    let stats = |complete| SearchStats { nodes: p.nodes, complete };
    if found {
        let packing = Packing { embeddings: chosen.into_iter().map(|(_, e)| e).collect() };
        if let Some(m) = packing_defect(host, &packing, pattern) {
            panic!("packing search returned an invalid packing: {m}");
        }
        return Ok(PackingOutcome::Found(packing, stats(true)));
    }
    if p.exceeded {
        return Ok(PackingOutcome::BudgetExceeded(stats(false)));
    }
    Ok(PackingOutcome::NotFound(stats(!p.truncated)))
}

/// Certificates shared between calls of [`pack_figures`] on one host.
///
/// A stored certificate for a chunk is reused when its embedding misses every
/// avoided edge. Otherwise certificates are memoised by placed edge set, so
/// each distinct placement is searched once.
#[derive(Default)]
pub struct CertificateCache {
    base: Vec<FigureEmbedding>,
    memo: Mutex<BTreeMap<(usize, BTreeSet<Edge>), FigureEmbedding>>,
}

impl CertificateCache {
    pub fn new() -> CertificateCache {
        CertificateCache::default()
    }

    /// Makes `base` the certificates tried first.
    pub fn with_base(base: Vec<FigureEmbedding>) -> CertificateCache {
        CertificateCache { base, memo: Mutex::default() }
    }

    /// Search nodes of all memoised certificates. Independent of the order
    /// in which concurrent callers filled the cache.
    pub fn memo_nodes(&self) -> u64 {
        self.memo.lock().unwrap().values().map(|fe| fe.nodes).sum()
    }

    fn get(
        &self,
        fig: Figure,
        first: usize,
        host: &FigureHost,
        avoid: &BTreeSet<Edge>,
        c: &SearchConstraints,
    ) -> Result<Option<FigureEmbedding>> {
        let hit = self.base.iter().find(|fe| fe.figure == fig && fe.first_layer == first);
        if let Some(fe) = hit {
            if let Some(embedding) = repair(&fe.embedding, host, avoid) {
                let edges = embedding.edges();
                return Ok(Some(FigureEmbedding { embedding, edges, ..fe.clone() }));
            }
        }
        let Some(placed) = place_figure(fig, first, host, avoid)? else { return Ok(None) };
        let key = (first, placed.edges.clone());
        if let Some(fe) = self.memo.lock().unwrap().get(&key) {
            return Ok(Some(fe.clone()));
        }
        let fe = certify(&placed, host, c)?;
        self.memo.lock().unwrap().entry(key).or_insert_with(|| fe.clone());
        Ok(Some(fe))
    }
}

/// Moves the paths of `e` off avoided bundle edges by exchanging twin
/// subdivision vertices, which is an automorphism of the host.
fn swap_twins(e: &Embedding, host: &FigureHost, avoid: &BTreeSet<Edge>) -> Option<Embedding> {
    let touched: BTreeSet<VertexId> = e.vertices();
    let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for (x, mids) in &host.bundles {
        let blocked = |m: VertexId| avoid.contains(&Edge::new(x.0, m)) || avoid.contains(&Edge::new(m, x.1));
        let mut free = mids.iter().copied().filter(|&m| !touched.contains(&m) && !blocked(m));
        for &m in mids {
            if touched.contains(&m) && blocked(m) {
                let t = free.next()?;
                map.insert(m, t);
            }
        }
    }
    let moved = Embedding {
        pattern: e.pattern.clone(),
        branch_map: e.branch_map.iter().map(|v| *map.get(v).unwrap_or(v)).collect(),
        path_map: e.path_map.iter().map(|p| Path(p.0.iter().map(|v| *map.get(v).unwrap_or(v)).collect())).collect(),
    };
    Some(moved)
}

/// A certificate equal to `e` away from `avoid`: twins are swapped first,
/// then every path still crossing `avoid` is replaced by a shortest path
/// through unused vertices. The result is verified against the pattern.
fn repair(e: &Embedding, host: &FigureHost, avoid: &BTreeSet<Edge>) -> Option<Embedding> {
    if e.edges().is_disjoint(avoid) {
        return Some(e.clone());
    }
    let mut e = swap_twins(e, host, avoid)?;
    for k in 0..e.path_map.len() {
        if e.path_map[k].edges().all(|x| !avoid.contains(&x)) {
            continue;
        }
        let (s, t) = (e.path_map[k].first(), e.path_map[k].last());
        let mut busy: BTreeSet<VertexId> = e.branch_map.iter().copied().collect();
        for (i, p) in e.path_map.iter().enumerate() {
            if i != k {
                busy.extend(p.vertices().iter().copied());
            }
        }
        e.path_map[k] = Path(shortest_path(&host.graph, s, t, &busy, avoid)?);
    }
    let pattern = host_pattern(e.pattern.as_str())?;
    (packing_defect(&host.graph, &Packing { embeddings: vec![e.clone()] }, &pattern).is_none()
        && e.edges().is_disjoint(avoid))
    .then_some(e)
}

fn host_pattern(name: &str) -> Option<Pattern> {
    match name.strip_suffix('~') {
        Some(base) => Pattern::named(base).map(|p| p.skeleton()),
        None => Pattern::named(name),
    }
}

/// BFS from `s` to `t` whose inner vertices avoid `busy`. Loops (`s == t`)
/// leave through one edge and return through another.
fn shortest_path(
    g: &LabeledGraph,
    s: VertexId,
    t: VertexId,
    busy: &BTreeSet<VertexId>,
    avoid: &BTreeSet<Edge>,
) -> Option<Vec<VertexId>> {
    let mut prev: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut queue = std::collections::VecDeque::new();
    for w in g.neighbors(s) {
        if !avoid.contains(&Edge::new(s, w)) && !busy.contains(&w) && w != s {
            prev.insert(w, s);
            queue.push_back(w);
        }
    }
    while let Some(x) = queue.pop_front() {
        for w in g.neighbors(x) {
            if avoid.contains(&Edge::new(x, w)) || w == prev[&x] {
                continue;
            }
            if w == t {
                let mut p = vec![t, x];
                while *p.last().unwrap() != s {
                    p.push(prev[p.last().unwrap()]);
                }
                p.reverse();
                return Some(p);
            }
            if w != s && !busy.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, x);
                queue.push_back(w);
            }
        }
    }
    None
}

/// Places `fig` in consecutive chunks of `host` (chunk t starts at layer
/// t·layers+1), skipping chunks touched by `deleted`, until `n` copies are
/// placed. Connections and exterior copies avoid deleted and used edges.
/// Returns `None` when fewer than `n` copies fit. Each certificate search
/// runs under the budget of `c`.
pub fn pack_figures(
    fig: Figure,
    host: &FigureHost,
    n: usize,
    deleted: &BTreeSet<Edge>,
    cache: &CertificateCache,
    c: &SearchConstraints,
) -> Result<Option<Vec<FigureEmbedding>>> {
    let len = fig.layers();
    let mut avoid = deleted.clone();
    let mut out = Vec::new();
    let mut first = 1;
    while out.len() < n && first + len - 1 <= host.layout.r {
        if host.chunk_intact(first, len, deleted) {
            if let Some(fe) = cache.get(fig, first, host, &avoid, c)? {
                avoid.extend(fe.edges.iter().copied());
                out.push(fe);
            }
        }
        first += len;
    }
    if out.len() < n {
        return Ok(None);
    }
    let packing = Packing { embeddings: out.iter().map(|fe| fe.embedding.clone()).collect() };
    if let Some(m) = packing_defect(&host.graph, &packing, &fig.pattern()) {
        panic!("template packing is invalid: {m}");
    }
    Ok(Some(out))
}
