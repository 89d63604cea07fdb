//! Exhaustive subdivision (topological-minor) search.
//!
//! Branch vertices are placed and pattern edges are routed one at a time by
//! growing host paths vertex by vertex. The first witness in depth-first
//! order (host vertices in ascending id order, "stop" before "extend") is
//! the canonical one. The root level is split into independent units that
//! may run in parallel; node accounting is folded in unit order so results
//! do not depend on the number of workers.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use super::bitset::BitSet;
use super::embedding::{embedding_defect, Embedding};
use super::pattern::Pattern;
use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph, Path, VertexId};
use crate::par::{map_indexed, Parallelism};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConstraints {
    /// Host vertices the embedding may not touch.
    pub forbidden: BTreeSet<VertexId>,
    /// Pattern vertex -> host vertex.
    pub pins: BTreeMap<usize, VertexId>,
    /// If set, the embedding must be a subgraph of these host edges.
    pub within: Option<BTreeSet<Edge>>,
    /// Host vertices a given pattern vertex may not map to.
    pub vertex_avoid: BTreeMap<usize, BTreeSet<VertexId>>,
    /// Host vertices the interior of a given pattern edge's path may not use.
    pub edge_avoid: BTreeMap<usize, BTreeSet<VertexId>>,
    /// The search aborts once its node counter reaches this value.
    pub budget: u64,
    pub max_witnesses: Option<usize>,
    pub parallelism: Parallelism,
}

impl Default for SearchConstraints {
    fn default() -> Self {
        SearchConstraints {
            forbidden: BTreeSet::new(),
            pins: BTreeMap::new(),
            within: None,
            vertex_avoid: BTreeMap::new(),
            edge_avoid: BTreeMap::new(),
            budget: DEFAULT_BUDGET,
            max_witnesses: None,
            parallelism: Parallelism::default(),
        }
    }
}

impl SearchConstraints {
    pub fn with_budget(budget: u64) -> Self {
        SearchConstraints { budget, ..Default::default() }
    }

    pub fn forbid(mut self, vs: impl IntoIterator<Item = VertexId>) -> Self {
        self.forbidden.extend(vs);
        self
    }

    fn validate(&self, host: &LabeledGraph, pattern: &Pattern) -> Result<()> {
        let n = pattern.num_vertices();
        let mut targets = BTreeSet::new();
        for (&p, &h) in &self.pins {
            if p >= n {
                return Err(Error::InconsistentConstraints(format!("pin on unknown pattern vertex {p}")));
            }
            if !host.contains_vertex(h) {
                return Err(Error::InconsistentConstraints(format!("pin target {h} not in host")));
            }
            if self.forbidden.contains(&h) {
                return Err(Error::InconsistentConstraints(format!("pin target {h} is forbidden")));
            }
            if self.vertex_avoid.get(&p).is_some_and(|s| s.contains(&h)) {
                return Err(Error::InconsistentConstraints(format!("pin target {h} avoided by vertex {p}")));
            }
            if !targets.insert(h) {
                return Err(Error::InconsistentConstraints(format!("two pins on host vertex {h}")));
            }
        }
        if let Some(&p) = self.vertex_avoid.keys().find(|&&p| p >= n) {
            return Err(Error::InconsistentConstraints(format!("avoid set on unknown pattern vertex {p}")));
        }
        if let Some(&e) = self.edge_avoid.keys().find(|&&e| e >= pattern.edges.len()) {
            return Err(Error::InconsistentConstraints(format!("avoid set on unknown pattern edge {e}")));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    /// The whole constrained space was explored (or a witness was found).
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Embedding, SearchStats),
    /// Exhaustion certificate: nothing exists under the constraints.
    NotFound(SearchStats),
    BudgetExceeded(SearchStats),
}

impl SearchOutcome {
    pub fn stats(&self) -> SearchStats {
        match self {
            SearchOutcome::Found(_, s) | SearchOutcome::NotFound(s) | SearchOutcome::BudgetExceeded(s) => *s,
        }
    }

    pub fn witness(&self) -> Option<&Embedding> {
        match self {
            SearchOutcome::Found(e, _) => Some(e),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub embeddings: Vec<Embedding>,
    pub stats: SearchStats,
    pub budget_exceeded: bool,
}

/// Result of checking a predicate on every embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalCheck {
    /// Embeddings examined; meaningful only when the search completed.
    pub examined: u64,
    pub violation: Option<Embedding>,
    pub stats: SearchStats,
    pub budget_exceeded: bool,
}

/// Index-based host graph; index order equals ascending vertex id order.
#[derive(Clone, Debug)]
pub(crate) struct Host {
    pub ids: Vec<VertexId>,
    pub adj: Vec<Vec<u32>>,
    pub index: HashMap<VertexId, u32>,
}

impl Host {
    pub fn build(g: &LabeledGraph, keep: impl Fn(VertexId) -> bool, within: Option<&BTreeSet<Edge>>) -> Host {
        let in_within: Option<BTreeSet<VertexId>> = within.map(|w| w.iter().flat_map(|e| [e.0, e.1]).collect());
        let ids: Vec<VertexId> = g
            .vertices()
            .filter(|&v| keep(v) && in_within.as_ref().is_none_or(|s| s.contains(&v)))
            .collect();
        let index: HashMap<VertexId, u32> = ids.iter().enumerate().map(|(i, v)| (*v, i as u32)).collect();
        let adj = ids
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .filter(|w| index.contains_key(w))
                    .filter(|&w| within.is_none_or(|s| s.contains(&Edge::new(v, w))))
                    .map(|w| index[&w])
                    .collect()
            })
            .collect();
        Host { ids, adj, index }
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Place(usize),
    /// Route edge `e` from placed vertex `from` to `to`.
    Route { e: usize, from: usize, to: usize },
}

fn make_plan(pattern: &Pattern, pins: &BTreeMap<usize, VertexId>) -> Vec<Step> {
    let n = pattern.num_vertices();
    let deg: Vec<usize> = (0..n).map(|p| pattern.degree(p)).collect();
    let mut planned_at: Vec<Option<usize>> = vec![None; n];
    let mut routed = vec![false; pattern.edges.len()];
    let mut plan = Vec::new();
    let mut order = 0;
    loop {
        let mut closing = None;
        let mut opening: Option<(usize, usize)> = None;
        for (i, e) in pattern.edges.iter().enumerate() {
            if routed[i] {
                continue;
            }
            match (planned_at[e.a], planned_at[e.b]) {
                (Some(_), Some(_)) => {
                    closing = Some(i);
                    break;
                }
                (Some(t), None) | (None, Some(t)) if opening.is_none_or(|(bt, _)| t < bt) => {
                    opening = Some((t, i));
                }
                _ => {}
            }
        }
        if let Some(i) = closing {
            let e = &pattern.edges[i];
            routed[i] = true;
            plan.push(Step::Route { e: i, from: e.a, to: e.b });
            continue;
        }
        if let Some((_, i)) = opening {
            let e = &pattern.edges[i];
            let (from, to) = if planned_at[e.a].is_some() { (e.a, e.b) } else { (e.b, e.a) };
            routed[i] = true;
            planned_at[to] = Some(order);
            order += 1;
            plan.push(Step::Route { e: i, from, to });
            continue;
        }
        let root = (0..n)
            .filter(|&p| planned_at[p].is_none())
            .max_by_key(|&p| (pins.contains_key(&p), deg[p], std::cmp::Reverse(p)));
        match root {
            Some(p) => {
                planned_at[p] = Some(order);
                order += 1;
                plan.push(Step::Place(p));
            }
            None => break,
        }
    }
    plan
}

enum Mode<'f> {
    Find,
    Collect(usize),
    Check(&'f (dyn Fn(&Embedding) -> bool + Sync)),
}

#[derive(Default)]
struct UnitResult {
    nodes: u64,
    exceeded: bool,
    aborted: bool,
    /// (node stamp, embedding) for recorded embeddings.
    found: Vec<(u64, Embedding)>,
    examined: u64,
    /// The unit stopped on its own accord (witness, cap or violation).
    stopped: bool,
}

struct Prepared {
    pin: Vec<u32>,
    vavoid: Vec<Option<BitSet>>,
    eavoid: Vec<Option<BitSet>>,
}

fn prepare(host: &Host, pattern: &Pattern, c: &SearchConstraints) -> Option<Prepared> {
    let n = pattern.num_vertices();
    let mut pin = vec![NONE; n];
    for (&p, h) in &c.pins {
        pin[p] = *host.index.get(h)?;
    }
    let to_set = |s: &BTreeSet<VertexId>| {
        let mut b = BitSet::new(host.n());
        for v in s {
            if let Some(&i) = host.index.get(v) {
                b.insert(i as usize);
            }
        }
        b
    };
    let vavoid = (0..n).map(|p| c.vertex_avoid.get(&p).map(to_set)).collect();
    let eavoid = (0..pattern.edges.len()).map(|e| c.edge_avoid.get(&e).map(to_set)).collect();
    Some(Prepared { pin, vavoid, eavoid })
}

struct Searcher<'a, 'f> {
    host: &'a Host,
    pat: &'a Pattern,
    plan: &'a [Step],
    prep: &'a Prepared,
    mode: &'a Mode<'f>,
    pdeg: Vec<u32>,
    reserved_for: Vec<u32>,
    img: Vec<u32>,
    used: Vec<bool>,
    branch_at: Vec<u32>,
    pending: Vec<u32>,
    paths: Vec<Vec<u32>>,
    direct: Vec<(u32, u32)>,
    free: usize,
    need: usize,
    nodes: u64,
    budget: u64,
    exceeded: bool,
    stop: bool,
    aborted: bool,
    cutoff: Option<(&'a AtomicUsize, usize)>,
    found: Vec<(u64, Embedding)>,
    examined: u64,
    comp: Vec<u32>,
    comp_size: Vec<u32>,
    queue: Vec<u32>,
}

impl<'a, 'f> Searcher<'a, 'f> {
    fn new(host: &'a Host, pat: &'a Pattern, plan: &'a [Step], prep: &'a Prepared, mode: &'a Mode<'f>, budget: u64) -> Self {
        let n = host.n();
        let mut reserved_for = vec![NONE; n];
        for (p, &h) in prep.pin.iter().enumerate() {
            if h != NONE {
                reserved_for[h as usize] = p as u32;
            }
        }
        let need = pat.num_vertices() + pat.edges.iter().map(|e| e.min_len - 1).sum::<usize>();
        Searcher {
            host,
            pat,
            plan,
            prep,
            mode,
            pdeg: (0..pat.num_vertices()).map(|p| pat.degree(p) as u32).collect(),
            reserved_for,
            img: vec![NONE; pat.num_vertices()],
            used: vec![false; n],
            branch_at: vec![NONE; n],
            pending: vec![0; pat.num_vertices()],
            paths: vec![Vec::new(); pat.edges.len()],
            direct: Vec::new(),
            free: n,
            need,
            nodes: 0,
            budget,
            exceeded: false,
            stop: false,
            aborted: false,
            cutoff: None,
            found: Vec::new(),
            examined: 0,
            comp: vec![NONE; n],
            comp_size: Vec::new(),
            queue: Vec::with_capacity(n),
        }
    }

    #[inline]
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes >= self.budget {
            self.exceeded = true;
            self.stop = true;
            return false;
        }
        if let Some((c, me)) = self.cutoff {
            if self.nodes & 1023 == 0 && c.load(Ordering::Relaxed) < me {
                self.aborted = true;
                self.stop = true;
                return false;
            }
        }
        true
    }

    fn can_place(&self, q: usize, h: u32) -> bool {
        let hu = h as usize;
        !self.used[hu]
            && (self.reserved_for[hu] == NONE || self.reserved_for[hu] == q as u32)
            && (self.prep.pin[q] == NONE || self.prep.pin[q] == h)
            && self.prep.vavoid[q].as_ref().is_none_or(|s| !s.contains(hu))
            && self.host.adj[hu].len() as u32 >= self.pdeg[q]
    }

    fn place(&mut self, q: usize, h: u32) {
        self.img[q] = h;
        self.used[h as usize] = true;
        self.branch_at[h as usize] = q as u32;
        self.pending[q] = self.pdeg[q];
        self.free -= 1;
        self.need -= 1;
    }

    fn unplace(&mut self, q: usize, h: u32) {
        self.img[q] = NONE;
        self.used[h as usize] = false;
        self.branch_at[h as usize] = NONE;
        self.pending[q] = 0;
        self.free += 1;
        self.need += 1;
    }

    /// Available slots around branch image `y` versus its open edges.
    fn degree_ok(&self, y: u32, head: u32) -> bool {
        let p = self.branch_at[y as usize] as usize;
        let want = self.pending[p];
        if want == 0 {
            return true;
        }
        let mut have = 0;
        for &w in &self.host.adj[y as usize] {
            let wu = w as usize;
            if !self.used[wu] || self.branch_at[wu] != NONE || w == head {
                have += 1;
                if have >= want {
                    return true;
                }
            }
        }
        false
    }

    fn label_components(&mut self) {
        self.comp.iter_mut().for_each(|c| *c = NONE);
        self.comp_size.clear();
        for s in 0..self.host.n() {
            if self.used[s] || self.comp[s] != NONE {
                continue;
            }
            let id = self.comp_size.len() as u32;
            self.queue.clear();
            self.queue.push(s as u32);
            self.comp[s] = id;
            let mut k = 0;
            while k < self.queue.len() {
                let x = self.queue[k] as usize;
                k += 1;
                for &w in &self.host.adj[x] {
                    let wu = w as usize;
                    if !self.used[wu] && self.comp[wu] == NONE {
                        self.comp[wu] = id;
                        self.queue.push(w);
                    }
                }
            }
            self.comp_size.push(self.queue.len() as u32);
        }
    }

    /// Whether x and y can still be joined by a path with at least `rem`
    /// interior vertices through free vertices.
    fn joinable(&self, x: u32, y: u32, rem: usize, direct_ok: bool) -> bool {
        if rem == 0 && direct_ok && self.host.adj[x as usize].contains(&y) {
            return true;
        }
        let need = rem.max(1) as u32;
        for &w in &self.host.adj[x as usize] {
            if self.used[w as usize] {
                continue;
            }
            let c = self.comp[w as usize];
            if self.comp_size[c as usize] < need {
                continue;
            }
            if self.host.adj[y as usize].iter().any(|&v| !self.used[v as usize] && self.comp[v as usize] == c) {
                return true;
            }
        }
        false
    }

    fn direct_free(&self, x: u32, y: u32) -> bool {
        let k = (x.min(y), x.max(y));
        !self.direct.contains(&k)
    }

    /// Connectivity prune over all pattern edges still to be routed after
    /// step `si`, plus the current route if one is open.
    fn connectivity_ok(&mut self, si: usize, current: Option<(u32, u32, usize)>) -> bool {
        let mut any = current.is_some();
        if !any {
            for st in &self.plan[si..] {
                if let Step::Route { from, to, .. } = *st {
                    if self.img[from] != NONE && self.img[to] != NONE {
                        any = true;
                        break;
                    }
                }
            }
        }
        if !any {
            return true;
        }
        self.label_components();
        if let Some((head, target, rem)) = current {
            if !self.joinable(head, target, rem, true) {
                return false;
            }
        }
        for st in &self.plan[si..] {
            if let Step::Route { e, from, to } = *st {
                let (x, y) = (self.img[from], self.img[to]);
                if x != NONE && y != NONE {
                    let rem = self.pat.edges[e].min_len - 1;
                    if !self.joinable(x, y, rem, self.direct_free(x, y)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn emit(&mut self) {
        let pat = self.pat;
        let ids = &self.host.ids;
        let branch_map = self.img.iter().map(|&h| ids[h as usize]).collect();
        let path_map = pat
            .edges
            .iter()
            .enumerate()
            .map(|(k, pe)| {
                let mut p: Vec<VertexId> = self.paths[k].iter().map(|&h| ids[h as usize]).collect();
                if p.first() != Some(&ids[self.img[pe.a] as usize]) {
                    p.reverse();
                }
                Path(p)
            })
            .collect();
        let emb = Embedding { pattern: pat.name.clone(), branch_map, path_map };
        self.examined += 1;
        match self.mode {
            Mode::Find => {
                self.found.push((self.nodes, emb));
                self.stop = true;
            }
            Mode::Collect(cap) => {
                self.found.push((self.nodes, emb));
                if self.found.len() >= *cap {
                    self.stop = true;
                }
            }
            Mode::Check(pred) => {
                if !pred(&emb) {
                    self.found.push((self.nodes, emb));
                    self.stop = true;
                }
            }
        }
    }

    fn step(&mut self, si: usize) {
        if self.stop {
            return;
        }
        if si == self.plan.len() {
            self.emit();
            return;
        }
        match self.plan[si] {
            Step::Place(p) => {
                for h in 0..self.host.n() as u32 {
                    if self.stop {
                        return;
                    }
                    if !self.can_place(p, h) {
                        continue;
                    }
                    if !self.tick() {
                        return;
                    }
                    self.place(p, h);
                    if self.free >= self.need && self.degree_ok(h, NONE) && self.connectivity_ok(si + 1, None) {
                        self.step(si + 1);
                    }
                    self.unplace(p, h);
                }
            }
            Step::Route { e, from, .. } => {
                let min = self.pat.edges[e].min_len;
                self.need -= min - 1;
                self.pending[from] -= 1;
                let s = self.img[from];
                self.paths[e].push(s);
                self.route(si, s, 0);
                self.paths[e].pop();
                self.pending[from] += 1;
                self.need += min - 1;
            }
        }
    }

    fn route(&mut self, si: usize, head: u32, interior: usize) {
        let Step::Route { e, to, .. } = self.plan[si] else { unreachable!() };
        let min = self.pat.edges[e].min_len;
        let host = self.host;
        for &nb in &host.adj[head as usize] {
            if self.stop {
                return;
            }
            let nbu = nb as usize;
            let target = self.img[to];
            if target != NONE {
                if nb == target {
                    if interior + 1 >= min && (interior > 0 || self.direct_free(head, nb)) {
                        if !self.tick() {
                            return;
                        }
                        let key = (head.min(nb), head.max(nb));
                        if interior == 0 {
                            self.direct.push(key);
                        }
                        self.paths[e].push(nb);
                        self.pending[to] -= 1;
                        self.step(si + 1);
                        self.pending[to] += 1;
                        self.paths[e].pop();
                        if interior == 0 {
                            self.direct.pop();
                        }
                    }
                    continue;
                }
            } else if interior + 1 >= min && self.can_place(to, nb) {
                if !self.tick() {
                    return;
                }
                self.place(to, nb);
                self.pending[to] -= 1;
                self.paths[e].push(nb);
                if self.free >= self.need && self.degree_ok(nb, NONE) && self.connectivity_ok(si + 1, None) {
                    self.step(si + 1);
                }
                self.paths[e].pop();
                self.pending[to] += 1;
                self.unplace(to, nb);
                if self.stop {
                    return;
                }
            }
            if self.used[nbu]
                || self.reserved_for[nbu] != NONE
                || self.prep.eavoid[e].as_ref().is_some_and(|s| s.contains(nbu))
            {
                continue;
            }
            if !self.tick() {
                return;
            }
            self.used[nbu] = true;
            self.free -= 1;
            self.paths[e].push(nb);
            let rem = min.saturating_sub(interior + 2);
            if self.extend_ok(si, nb, rem) {
                self.route(si, nb, interior + 1);
            }
            self.paths[e].pop();
            self.free += 1;
            self.used[nbu] = false;
        }
    }

    fn extend_ok(&mut self, si: usize, nb: u32, rem: usize) -> bool {
        if self.free < self.need + rem {
            return false;
        }
        let Step::Route { to, .. } = self.plan[si] else { unreachable!() };
        let target = self.img[to];
        for &y in &self.host.adj[nb as usize] {
            let h = if y == target { nb } else { NONE };
            if self.branch_at[y as usize] != NONE && !self.degree_ok(y, h) {
                return false;
            }
        }
        if target != NONE {
            if !self.degree_ok(target, nb) {
                return false;
            }
            self.connectivity_ok(si + 1, Some((nb, target, rem)))
        } else {
            let h = &self.host.adj[nb as usize];
            if !h.iter().any(|&w| !self.used[w as usize]) {
                return false;
            }
            self.connectivity_ok(si + 1, None)
        }
    }

    fn run_unit(&mut self, root: u32) -> UnitResult {
        let Step::Place(p) = self.plan[0] else { unreachable!() };
        if self.tick() {
            self.place(p, root);
            if self.free >= self.need && self.degree_ok(root, NONE) && self.connectivity_ok(1, None) {
                self.step(1);
            }
            self.unplace(p, root);
        }
        UnitResult {
            nodes: self.nodes,
            exceeded: self.exceeded,
            aborted: self.aborted,
            found: std::mem::take(&mut self.found),
            examined: self.examined,
            stopped: self.stop && !self.exceeded && !self.aborted,
        }
    }
}

struct Folded {
    nodes: u64,
    exceeded: bool,
    found: Vec<Embedding>,
    examined: u64,
}

fn run_search(host: &LabeledGraph, pattern: &Pattern, c: &SearchConstraints, mode: Mode<'_>) -> Result<Folded> {
    c.validate(host, pattern)?;
    let budget = c.budget;
    if budget <= 1 {
        return Ok(Folded { nodes: budget, exceeded: true, found: vec![], examined: 0 });
    }
    let cap = match mode {
        Mode::Collect(k) => k,
        _ => usize::MAX,
    };
    if pattern.num_vertices() == 0 || cap == 0 {
        let e = Embedding { pattern: pattern.name.clone(), branch_map: vec![], path_map: vec![] };
        let keep = match &mode {
            Mode::Check(pred) => !pred(&e),
            _ => cap > 0,
        };
        return Ok(Folded { nodes: 1, exceeded: false, found: if keep { vec![e] } else { vec![] }, examined: 1 });
    }
    let plan = make_plan(pattern, &c.pins);
    let forbidden = &c.forbidden;
    let base = Host::build(host, |v| !forbidden.contains(&v), c.within.as_ref());
    let hosts: Vec<Host> = if pattern.is_two_connected() {
        let ids = &base.ids;
        let adj: Vec<Vec<usize>> = base.adj.iter().map(|a| a.iter().map(|&x| x as usize).collect()).collect();
        let mut blocks: Vec<BTreeSet<VertexId>> = crate::graph::block_sets(&adj)
            .into_iter()
            .map(|b| b.into_iter().map(|i| ids[i]).collect())
            .collect();
        blocks.sort_by_key(|b| *b.iter().next().unwrap());
        blocks
            .into_iter()
            .filter(|b| b.len() >= pattern.min_vertices())
            .map(|b| Host::build(host, |v| b.contains(&v), c.within.as_ref()))
            .collect()
    } else if base.n() >= pattern.min_vertices() {
        vec![base]
    } else {
        vec![]
    };
    let mut preps = Vec::new();
    let mut units: Vec<(usize, u32)> = Vec::new();
    let Step::Place(p0) = plan[0] else { unreachable!() };
    let p0deg = pattern.degree(p0);
    for (hi, h) in hosts.iter().enumerate() {
        let prep = prepare(h, pattern, c);
        if let Some(pr) = &prep {
            for v in 0..h.n() as u32 {
                let vu = v as usize;
                let ok = (pr.pin[p0] == NONE || pr.pin[p0] == v)
                    && !pr.pin.iter().enumerate().any(|(q, &t)| q != p0 && t == v)
                    && pr.vavoid[p0].as_ref().is_none_or(|s| !s.contains(vu))
                    && h.adj[vu].len() >= p0deg;
                if ok {
                    units.push((hi, v));
                }
            }
        }
        preps.push(prep);
    }
    let cutoff = AtomicUsize::new(usize::MAX);
    let run = |i: usize, b: u64| -> UnitResult {
        let (hi, root) = units[i];
        let prep = preps[hi].as_ref().unwrap();
        let mut s = Searcher::new(&hosts[hi], pattern, &plan, prep, &mode, b);
        s.cutoff = Some((&cutoff, i));
        let r = s.run_unit(root);
        if r.stopped || r.exceeded {
            cutoff.fetch_min(i, Ordering::Relaxed);
        }
        r
    };
    let mut folded = Folded { nodes: 1, exceeded: false, found: vec![], examined: 0 };
    let absorb = |r: UnitResult, folded: &mut Folded| -> bool {
        debug_assert!(!r.aborted);
        let before = folded.nodes;
        for (stamp, e) in r.found {
            if before + stamp >= budget {
                break;
            }
            if folded.found.len() < cap {
                folded.found.push(e);
                if folded.found.len() == cap {
                    folded.nodes = before + stamp;
                    folded.examined += r.examined;
                    return true;
                }
            }
        }
        folded.nodes = before + r.nodes;
        folded.examined += r.examined;
        if r.exceeded || folded.nodes >= budget {
            folded.nodes = budget;
            folded.exceeded = true;
            return true;
        }
        if r.stopped {
            return true;
        }
        false
    };
    match c.parallelism {
        Parallelism::Sequential => {
            for i in 0..units.len() {
                let r = run(i, budget - folded.nodes);
                if absorb(r, &mut folded) {
                    break;
                }
            }
        }
        Parallelism::Parallel => {
            let results = map_indexed(units.len(), Parallelism::Parallel, |i| run(i, budget));
            for r in results {
                if absorb(r, &mut folded) {
                    break;
                }
            }
        }
    }
    for e in &folded.found {
        if let Mode::Check(_) = mode {
            continue;
        }
        if let Some(d) = embedding_defect(host, e, pattern) {
            panic!("search produced an invalid embedding: {d}");
        }
        assert!(e.vertices().is_disjoint(&c.forbidden), "witness touches a forbidden vertex");
        for (&p, &h) in &c.pins {
            assert_eq!(e.branch_map[p], h, "pin not honoured");
        }
    }
    Ok(folded)
}

/// Finds the canonical (first in search order) subdivision of `pattern` in
/// `host` under the constraints, or certifies that none exists.
pub fn find_topological_minor(host: &LabeledGraph, pattern: &Pattern, c: &SearchConstraints) -> Result<SearchOutcome> {
    let f = run_search(host, pattern, c, Mode::Find)?;
    let stats = SearchStats { nodes: f.nodes, complete: !f.exceeded };
    Ok(match f.found.into_iter().next() {
        Some(e) => SearchOutcome::Found(e, stats),
        None if f.exceeded => SearchOutcome::BudgetExceeded(stats),
        None => SearchOutcome::NotFound(stats),
    })
}

/// All embeddings (distinct branch map or path system) in search order, up
/// to `c.max_witnesses`.
pub fn enumerate_embeddings(host: &LabeledGraph, pattern: &Pattern, c: &SearchConstraints) -> Result<Enumeration> {
    let cap = c.max_witnesses.unwrap_or(usize::MAX);
    let f = run_search(host, pattern, c, Mode::Collect(cap))?;
    let complete = !f.exceeded && f.found.len() < cap;
    Ok(Enumeration {
        embeddings: f.found,
        stats: SearchStats { nodes: f.nodes, complete },
        budget_exceeded: f.exceeded,
    })
}

/// Runs `pred` on every embedding and reports the first one failing it.
pub fn check_all_embeddings(
    host: &LabeledGraph,
    pattern: &Pattern,
    c: &SearchConstraints,
    pred: &(dyn Fn(&Embedding) -> bool + Sync),
) -> Result<UniversalCheck> {
    let f = run_search(host, pattern, c, Mode::Check(pred))?;
    let violation = f.found.into_iter().next();
    if let Some(v) = &violation {
        if let Some(d) = embedding_defect(host, v, pattern) {
            panic!("search produced an invalid embedding: {d}");
        }
    }
    Ok(UniversalCheck {
        examined: if f.exceeded { 0 } else { f.examined },
        violation,
        stats: SearchStats { nodes: f.nodes, complete: !f.exceeded },
        budget_exceeded: f.exceeded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{brick_wall, condensed_wall, CondensedLayout};
    use crate::graph::{EdgeClass, Role};

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

    #[test]
    fn b1_in_hexagon_has_twelve_embeddings() {
        let g = cycle(6);
        let p = Pattern::full("C6", &g);
        let en = enumerate_embeddings(&g, &p, &SearchConstraints::default()).unwrap();
        assert!(en.stats.complete);
        assert_eq!(en.embeddings.len(), 12);
    }

    #[test]
    fn reduced_b1_in_hexagon() {
        let g = cycle(6);
        let p = Pattern::named("B1").unwrap();
        let en = enumerate_embeddings(&g, &p, &SearchConstraints::default()).unwrap();
        // 3 branch vertices on a 6-cycle with all gaps equal to 2: two
        // triples, each in 3! orders.
        assert_eq!(en.embeddings.len(), 12);
        assert!(find_topological_minor(&cycle(5), &p, &SearchConstraints::default()).unwrap().witness().is_none());
    }

    #[test]
    fn subdivided_hexagon_contains_b1() {
        let g = cycle(12);
        let p = Pattern::named("B1").unwrap();
        let out = find_topological_minor(&g, &p, &SearchConstraints::default()).unwrap();
        assert!(out.witness().is_some());
    }

    #[test]
    fn pattern_equal_to_host() {
        let (g, _) = brick_wall(4);
        let p = Pattern::full("B4full", &g);
        let out = find_topological_minor(&g, &p, &SearchConstraints::default()).unwrap();
        assert!(out.witness().is_some());
    }

    #[test]
    fn no_b4_in_small_layers() {
        let g = condensed_wall(3, true);
        let l = CondensedLayout { r: 3 };
        let c = SearchConstraints::default().forbid([l.a(), l.b()]);
        let out = find_topological_minor(&g, &Pattern::named("B4").unwrap(), &c).unwrap();
        assert!(matches!(out, SearchOutcome::NotFound(s) if s.complete));
    }

    #[test]
    fn budget_one_always_exceeds() {
        let g = cycle(6);
        let p = Pattern::named("B1").unwrap();
        let out = find_topological_minor(&g, &p, &SearchConstraints::with_budget(1)).unwrap();
        assert!(matches!(out, SearchOutcome::BudgetExceeded(_)));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = condensed_wall(6, false);
        let p = Pattern::named("B3").unwrap();
        let l = CondensedLayout { r: 6 };
        let mut c = SearchConstraints::default().forbid([l.a(), l.b()]);
        c.max_witnesses = Some(50);
        c.parallelism = Parallelism::Sequential;
        let a = enumerate_embeddings(&g, &p, &c).unwrap();
        c.parallelism = Parallelism::Parallel;
        let b = enumerate_embeddings(&g, &p, &c).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.embeddings.len(), 50);
        c.budget = 500;
        c.parallelism = Parallelism::Sequential;
        let a = find_topological_minor(&g, &Pattern::named("B4").unwrap(), &c).unwrap();
        c.parallelism = Parallelism::Parallel;
        let b = find_topological_minor(&g, &Pattern::named("B4").unwrap(), &c).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn pins_and_inconsistent_constraints() {
        let g = cycle(6);
        let p = Pattern::full("C6", &g);
        let mut c = SearchConstraints::default();
        c.pins.insert(0, 3);
        let out = find_topological_minor(&g, &p, &c).unwrap();
        assert_eq!(out.witness().unwrap().branch_map[0], 3);
        c.forbidden.insert(3);
        assert!(find_topological_minor(&g, &p, &c).is_err());
    }
}
