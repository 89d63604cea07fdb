//! (a-b, c-d) linkage search.

use std::collections::{HashSet, VecDeque};

use super::bitset::BitSet;
use super::embedding::{linkage_defect, Linkage};
use super::flow::FlowNet;
use super::search::{Host, SearchStats};
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Path, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkageOutcome {
    Found(Linkage, SearchStats),
    NotFound(SearchStats),
    BudgetExceeded(SearchStats),
}

impl LinkageOutcome {
    pub fn stats(&self) -> SearchStats {
        match self {
            LinkageOutcome::Found(_, s) | LinkageOutcome::NotFound(s) | LinkageOutcome::BudgetExceeded(s) => *s,
        }
    }

    pub fn linkage(&self) -> Option<&Linkage> {
        match self {
            LinkageOutcome::Found(l, _) => Some(l),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoLinkageOutcome {
    Found(Linkage, Linkage, SearchStats),
    NotFound(SearchStats),
    BudgetExceeded(SearchStats),
}

impl TwoLinkageOutcome {
    pub fn stats(&self) -> SearchStats {
        match self {
            TwoLinkageOutcome::Found(_, _, s)
            | TwoLinkageOutcome::NotFound(s)
            | TwoLinkageOutcome::BudgetExceeded(s) => *s,
        }
    }
}

fn check_terminals(host: &LabeledGraph, t: [VertexId; 4]) -> Result<()> {
    for (k, v) in t.iter().enumerate() {
        if !host.contains_vertex(*v) {
            return Err(Error::MissingTerminal(['a', 'b', 'c', 'd'][k]));
        }
    }
    let set: std::collections::BTreeSet<_> = t.iter().collect();
    if set.len() != 4 {
        return Err(Error::InvalidParameter("terminals must be distinct".into()));
    }
    Ok(())
}

/// Linkage between the graph's own terminals (see [`LabeledGraph::terminals`]).
pub fn find_linkage(host: &LabeledGraph, budget: u64) -> Result<LinkageOutcome> {
    find_linkage_between(host, host.terminals()?, budget)
}

/// Searches for vertex-disjoint paths t0-t1 and t2-t3. Exhaustive; failed
/// states are memoised by (path head, region still reachable by the path).
pub fn find_linkage_between(host: &LabeledGraph, t: [VertexId; 4], budget: u64) -> Result<LinkageOutcome> {
    check_terminals(host, t)?;
    let h = Host::build(host, |_| true, None);
    let idx = |v: VertexId| h.index[&v];
    let mut s = LinkSearch {
        adj: &h.adj,
        a: idx(t[0]),
        b: idx(t[1]),
        c: idx(t[2]),
        d: idx(t[3]),
        used: vec![false; h.n()],
        path: vec![],
        memo: HashSet::new(),
        nodes: 1,
        budget,
        exceeded: budget <= 1,
        result: None,
    };
    if !s.exceeded {
        s.used[s.a as usize] = true;
        s.path.push(s.a);
        let a = s.a;
        s.dfs(a);
    }
    let stats = SearchStats { nodes: s.nodes.min(budget), complete: !s.exceeded };
    Ok(match s.result {
        Some((p, q)) => {
            let l = Linkage {
                pab: Path(p.iter().map(|&i| h.ids[i as usize]).collect()),
                pcd: Path(q.iter().map(|&i| h.ids[i as usize]).collect()),
            };
            if let Some(d) = linkage_defect(host, &l, t) {
                panic!("linkage search produced an invalid linkage: {d}");
            }
            LinkageOutcome::Found(l, stats)
        }
        None if s.exceeded => LinkageOutcome::BudgetExceeded(stats),
        None => LinkageOutcome::NotFound(stats),
    })
}

struct LinkSearch<'a> {
    adj: &'a [Vec<u32>],
    a: u32,
    b: u32,
    c: u32,
    d: u32,
    used: Vec<bool>,
    path: Vec<u32>,
    memo: HashSet<(u32, BitSet)>,
    nodes: u64,
    budget: u64,
    exceeded: bool,
    result: Option<(Vec<u32>, Vec<u32>)>,
}

impl LinkSearch<'_> {
    /// Vertices the a-b path can still reach from `head` (b included, not expanded).
    fn region(&self, head: u32) -> BitSet {
        let mut seen = BitSet::new(self.adj.len());
        let mut q = VecDeque::new();
        for &w in &self.adj[head as usize] {
            if !self.used[w as usize] && w != self.c && w != self.d && !seen.contains(w as usize) {
                seen.insert(w as usize);
                if w != self.b {
                    q.push_back(w);
                }
            }
        }
        while let Some(x) = q.pop_front() {
            for &w in &self.adj[x as usize] {
                if !self.used[w as usize] && w != self.c && w != self.d && !seen.contains(w as usize) {
                    seen.insert(w as usize);
                    if w != self.b {
                        q.push_back(w);
                    }
                }
            }
        }
        seen
    }

    /// BFS path s -> t through vertices accepted by `ok` (ends exempt).
    fn bfs(&self, s: u32, t: u32, ok: impl Fn(u32) -> bool) -> Option<Vec<u32>> {
        let n = self.adj.len();
        let mut prev = vec![u32::MAX; n];
        prev[s as usize] = s;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            if x == t {
                let mut p = vec![t];
                let mut cur = t;
                while cur != s {
                    cur = prev[cur as usize];
                    p.push(cur);
                }
                p.reverse();
                return Some(p);
            }
            for &w in &self.adj[x as usize] {
                if prev[w as usize] == u32::MAX && (w == t || ok(w)) {
                    prev[w as usize] = x;
                    q.push_back(w);
                }
            }
        }
        None
    }

    /// Two vertex-disjoint paths from {head, c} to {b, d} inside the region.
    fn flow_ok(&self, head: u32, region: &BitSet) -> bool {
        let n = self.adj.len();
        let (src, snk) = (2 * n, 2 * n + 1);
        let mut f = FlowNet::new(2 * n + 2);
        let inside = |v: u32| region.contains(v as usize) || v == head || v == self.c || v == self.d;
        for v in 0..n as u32 {
            if !inside(v) {
                continue;
            }
            let vu = v as usize;
            let is_source = v == head || v == self.c;
            let is_sink = v == self.b || v == self.d;
            if !is_source && !is_sink {
                f.add_arc(2 * vu, 2 * vu + 1, 1);
            }
            if is_source {
                f.add_arc(src, 2 * vu + 1, 1);
            }
            if is_sink {
                f.add_arc(2 * vu, snk, 1);
                continue;
            }
            for &w in &self.adj[vu] {
                if inside(w) && w != head && w != self.c {
                    f.add_arc(2 * vu + 1, 2 * w as usize, 1);
                }
            }
        }
        f.max_flow(src, snk, 2) >= 2
    }

    fn dfs(&mut self, head: u32) -> bool {
        self.nodes += 1;
        if self.nodes >= self.budget {
            self.exceeded = true;
            return false;
        }
        let region = self.region(head);
        if !region.contains(self.b as usize) {
            return false;
        }
        let key = (head, region);
        if self.memo.contains(&key) {
            return false;
        }
        let region = key.1;
        // The c-d path may avoid the whole region: any completion works.
        let (b, c, d) = (self.b, self.c, self.d);
        let used = &self.used;
        if let Some(q) = self.bfs(c, d, |w| !used[w as usize] && !region.contains(w as usize) && w != b) {
            let rest = self.bfs(head, b, |w| region.contains(w as usize)).unwrap();
            let mut p = self.path.clone();
            p.extend_from_slice(&rest[1..]);
            self.result = Some((p, q));
            return true;
        }
        if !self.flow_ok(head, &region) {
            self.memo.insert((head, region));
            return false;
        }
        if self.adj[head as usize].contains(&b) {
            self.used[b as usize] = true;
            let used = &self.used;
            if let Some(q) = self.bfs(c, d, |w| !used[w as usize]) {
                let mut p = self.path.clone();
                p.push(b);
                self.result = Some((p, q));
                return true;
            }
            self.used[b as usize] = false;
        }
        let adj = self.adj;
        for &nb in &adj[head as usize] {
            if nb == b || !region.contains(nb as usize) {
                continue;
            }
            self.used[nb as usize] = true;
            self.path.push(nb);
            if self.dfs(nb) {
                return true;
            }
            self.path.pop();
            self.used[nb as usize] = false;
            if self.exceeded {
                return false;
            }
        }
        self.memo.insert((head, region));
        false
    }
}

/// Searches for two (a-b, c-d) linkages with no common edge.
pub fn find_two_edge_disjoint_linkages(host: &LabeledGraph, budget: u64) -> Result<TwoLinkageOutcome> {
    let t = host.terminals()?;
    check_terminals(host, t)?;
    let h = Host::build(host, |_| true, None);
    let n = h.n();
    let mut eid = vec![Vec::new(); n];
    let mut m = 0;
    for u in 0..n {
        for &v in &h.adj[u] {
            if (u as u32) < v {
                eid[u].push(m);
                m += 1;
            } else {
                let k = h.adj[v as usize].iter().position(|&x| x == u as u32).unwrap();
                let id = eid[v as usize][k];
                eid[u].push(id);
            }
        }
    }
    let idx = |v: VertexId| h.index[&v];
    let mut s = TwoLink {
        adj: &h.adj,
        eid: &eid,
        n,
        a: idx(t[0]),
        b: idx(t[1]),
        c: idx(t[2]),
        d: idx(t[3]),
        paths: [vec![], vec![], vec![]],
        vsets: [BitSet::new(n), BitSet::new(n), BitSet::new(n)],
        esets: [BitSet::new(m), BitSet::new(m), BitSet::new(m)],
        nodes: 1,
        budget,
        exceeded: budget <= 1,
        result: None,
    };
    if !s.exceeded {
        let a = s.a;
        s.push(0, a);
        s.p_dfs(0, a);
    }
    let stats = SearchStats { nodes: s.nodes.min(budget), complete: !s.exceeded };
    let to_path = |p: &[u32]| Path(p.iter().map(|&i| h.ids[i as usize]).collect());
    Ok(match s.result {
        Some([p1, q1, p2, q2]) => {
            let l1 = Linkage { pab: to_path(&p1), pcd: to_path(&q1) };
            let l2 = Linkage { pab: to_path(&p2), pcd: to_path(&q2) };
            for l in [&l1, &l2] {
                if let Some(d) = linkage_defect(host, l, t) {
                    panic!("invalid linkage produced: {d}");
                }
            }
            assert!(l1.edges().is_disjoint(&l2.edges()), "linkages share an edge");
            TwoLinkageOutcome::Found(l1, l2, stats)
        }
        None if s.exceeded => TwoLinkageOutcome::BudgetExceeded(stats),
        None => TwoLinkageOutcome::NotFound(stats),
    })
}

/// Paths: 0 = P1, 1 = P2, 2 = Q1 (Q2 is found by BFS at the leaves).
struct TwoLink<'a> {
    adj: &'a [Vec<u32>],
    eid: &'a [Vec<usize>],
    n: usize,
    a: u32,
    b: u32,
    c: u32,
    d: u32,
    paths: [Vec<u32>; 3],
    vsets: [BitSet; 3],
    esets: [BitSet; 3],
    nodes: u64,
    budget: u64,
    exceeded: bool,
    result: Option<[Vec<u32>; 4]>,
}

impl TwoLink<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes >= self.budget {
            self.exceeded = true;
            return false;
        }
        true
    }

    fn push(&mut self, k: usize, v: u32) {
        if let Some(&prev) = self.paths[k].last() {
            let pos = self.adj[prev as usize].iter().position(|&x| x == v).unwrap();
            self.esets[k].insert(self.eid[prev as usize][pos]);
        }
        self.paths[k].push(v);
        self.vsets[k].insert(v as usize);
    }

    fn pop(&mut self, k: usize) {
        let v = self.paths[k].pop().unwrap();
        self.vsets[k].remove(v as usize);
        if let Some(&prev) = self.paths[k].last() {
            let pos = self.adj[prev as usize].iter().position(|&x| x == v).unwrap();
            self.esets[k].remove(self.eid[prev as usize][pos]);
        }
    }

    /// BFS s -> t; vertex and edge filters apply to every step.
    fn bfs(&self, s: u32, t: u32, vok: impl Fn(u32) -> bool, eok: impl Fn(usize) -> bool) -> Option<Vec<u32>> {
        let mut prev = vec![u32::MAX; self.n];
        prev[s as usize] = s;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            if x == t {
                let mut p = vec![t];
                let mut cur = t;
                while cur != s {
                    cur = prev[cur as usize];
                    p.push(cur);
                }
                p.reverse();
                return Some(p);
            }
            for (k, &w) in self.adj[x as usize].iter().enumerate() {
                if prev[w as usize] == u32::MAX && vok(w) && eok(self.eid[x as usize][k]) {
                    prev[w as usize] = x;
                    q.push_back(w);
                }
            }
        }
        None
    }

    /// Edge-disjoint flow of value 2 to d from `head` and c, outside
    /// V(P1) ∩ V(P2) and the used edges.
    fn q_flow_ok(&self, head: u32) -> bool {
        let s = self.n;
        let mut f = FlowNet::new(self.n + 1);
        let both = |v: u32| self.vsets[0].contains(v as usize) && self.vsets[1].contains(v as usize);
        for u in 0..self.n {
            if both(u as u32) {
                continue;
            }
            for (k, &v) in self.adj[u].iter().enumerate() {
                let e = self.eid[u][k];
                if (u as u32) < v
                    && !both(v)
                    && !self.esets[0].contains(e)
                    && !self.esets[1].contains(e)
                    && !self.esets[2].contains(e)
                {
                    f.add_edge(u, v as usize, 1);
                }
            }
        }
        if head == self.c {
            f.add_arc(s, self.c as usize, 2);
        } else {
            f.add_arc(s, head as usize, 1);
            f.add_arc(s, self.c as usize, 1);
        }
        f.max_flow(s, self.d as usize, 2) >= 2
    }

    fn p_dfs(&mut self, k: usize, head: u32) -> bool {
        if !self.tick() {
            return false;
        }
        let (b, c, d) = (self.b, self.c, self.d);
        if head == b {
            return if k == 0 {
                let a = self.a;
                self.push(1, a);
                let r = self.p_dfs(1, a);
                self.pop(1);
                r
            } else {
                if !self.q_flow_ok(c) {
                    return false;
                }
                self.push(2, c);
                let r = self.q_dfs(c);
                self.pop(2);
                r
            };
        }
        // The c-d path of this linkage must survive: c-d connected outside
        // V(this path) + b, and (for P2) outside E(P1).
        {
            let vs = &self.vsets[k];
            let e0 = &self.esets[0];
            let ok = self
                .bfs(c, d, |w| !vs.contains(w as usize) && w != b, |e| k == 0 || !e0.contains(e))
                .is_some();
            if !ok {
                return false;
            }
            if self.bfs(head, b, |w| !vs.contains(w as usize) && w != c && w != d, |_| true).is_none() {
                return false;
            }
        }
        let adj = self.adj;
        for (pos, &nb) in adj[head as usize].iter().enumerate() {
            if nb == c || nb == d || self.vsets[k].contains(nb as usize) {
                continue;
            }
            if k == 1 {
                if self.esets[0].contains(self.eid[head as usize][pos]) {
                    continue;
                }
                // P1 < P2 in lexicographic order: P2 diverges at its first step.
                if head == self.a && nb <= self.paths[0][1] {
                    continue;
                }
            }
            self.push(k, nb);
            let r = self.p_dfs(k, nb);
            self.pop(k);
            if r {
                return true;
            }
            if self.exceeded {
                return false;
            }
        }
        false
    }

    fn q_dfs(&mut self, head: u32) -> bool {
        if !self.tick() {
            return false;
        }
        let d = self.d;
        if head == d {
            let (vs1, e0, e2) = (&self.vsets[1], &self.esets[0], &self.esets[2]);
            let q2 = self.bfs(self.c, d, |w| !vs1.contains(w as usize), |e| !e0.contains(e) && !e2.contains(e));
            if let Some(q2) = q2 {
                self.result = Some([self.paths[0].clone(), self.paths[2].clone(), self.paths[1].clone(), q2]);
                return true;
            }
            return false;
        }
        if !self.q_flow_ok(head) {
            return false;
        }
        let adj = self.adj;
        for (pos, &nb) in adj[head as usize].iter().enumerate() {
            let e = self.eid[head as usize][pos];
            if self.vsets[0].contains(nb as usize) || self.vsets[2].contains(nb as usize) || self.esets[1].contains(e) {
                continue;
            }
            self.push(2, nb);
            let r = self.q_dfs(nb);
            self.pop(2);
            if r {
                return true;
            }
            if self.exceeded {
                return false;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::condensed_wall;
    use crate::graph::{EdgeClass, Role, Terminal};

    fn terminal_graph(edges: &[(u32, u32)], n: u32) -> LabeledGraph {
        let mut g = LabeledGraph::new();
        for v in 0..n {
            let role = match v {
                0 => Role::Terminal(Terminal::A),
                1 => Role::Terminal(Terminal::B),
                2 => Role::Terminal(Terminal::C),
                3 => Role::Terminal(Terminal::D),
                _ => Role::Plain,
            };
            g.add_vertex(v, role).unwrap();
        }
        for &(u, v) in edges {
            g.add_edge(u, v, EdgeClass::Plain).unwrap();
        }
        g
    }

    #[test]
    fn two_disjoint_edges() {
        let g = terminal_graph(&[(0, 1), (2, 3)], 4);
        let out = find_linkage(&g, 1000).unwrap();
        let l = out.linkage().unwrap();
        assert_eq!(l.pab, Path(vec![0, 1]));
        assert_eq!(l.pcd, Path(vec![2, 3]));
    }

    #[test]
    fn star_has_no_linkage() {
        let g = terminal_graph(&[(4, 0), (4, 1), (4, 2), (4, 3)], 5);
        assert!(matches!(find_linkage(&g, 1000).unwrap(), LinkageOutcome::NotFound(s) if s.complete));
    }

    #[test]
    fn condensed_walls_link_once() {
        for r in 1..=3 {
            let g = condensed_wall(r, true);
            assert!(find_linkage(&g, 1_000_000).unwrap().linkage().is_some());
            let two = find_two_edge_disjoint_linkages(&g, 100_000_000).unwrap();
            assert!(matches!(two, TwoLinkageOutcome::NotFound(s) if s.complete), "r={r}");
        }
    }

    #[test]
    fn doubled_paths_give_two_linkages() {
        // a-x-b, a-y-b, c-u-d, c-v-d
        let g = terminal_graph(&[(0, 4), (4, 1), (0, 5), (5, 1), (2, 6), (6, 3), (2, 7), (7, 3)], 8);
        assert!(matches!(find_two_edge_disjoint_linkages(&g, 10_000).unwrap(), TwoLinkageOutcome::Found(..)));
    }

    #[test]
    fn budget_one() {
        let g = condensed_wall(2, true);
        assert!(matches!(find_linkage(&g, 1).unwrap(), LinkageOutcome::BudgetExceeded(_)));
        assert!(matches!(find_two_edge_disjoint_linkages(&g, 1).unwrap(), TwoLinkageOutcome::BudgetExceeded(_)));
    }
}
