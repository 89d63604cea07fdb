//! Named checks for the structural claims about condensed walls, each
//! producing a serializable report with a witness or exhaustion statistics.

mod connections;
mod trial;

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use trial::{
    binomial, DeletionTrial, TrialMode, TrialPolicy, DEFAULT_SAMPLES, DEFAULT_SEED, EXHAUSTIVE_LIMIT, MIXED_SEED,
};

use crate::embed::{
    check_all_embeddings, figure_host, find_linkage, find_topological_minor, find_two_edge_disjoint_linkages,
    construct_figure_embedding_with, linkage_defect, pack_figures, verify_embedding, CertificateCache, Embedding, Exterior, Figure, Linkage, LinkageOutcome, Pattern,
    SearchConstraints, SearchOutcome, TwoLinkageOutcome, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::generators::{build_gstar, condensed_wall, gen_brick_wall, BrickWallId, CondensedLayout, GStar, GStarSpec};
use crate::graph::{Edge, LabeledGraph, Role, VertexId};
use crate::par::{map_indexed, Parallelism};

use connections::connections;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LemmaId {
    NoTwoLinkages,
    HittingRobust,
    B3CenterBottleneck,
    B3LayerPacking,
    NoB4,
    NoB4OverB3,
    NoB5OverB3,
    B2Bottleneck,
    NoB7,
    B6Packing,
    B7PackingWithCD,
    B8PackingWithB1,
    B9PackingWithB2,
    GStarExpansionLinkage,
}

impl LemmaId {
    pub const ALL: [LemmaId; 14] = [
        LemmaId::NoTwoLinkages,
        LemmaId::HittingRobust,
        LemmaId::B3CenterBottleneck,
        LemmaId::B3LayerPacking,
        LemmaId::NoB4,
        LemmaId::NoB4OverB3,
        LemmaId::NoB5OverB3,
        LemmaId::B2Bottleneck,
        LemmaId::NoB7,
        LemmaId::B6Packing,
        LemmaId::B7PackingWithCD,
        LemmaId::B8PackingWithB1,
        LemmaId::B9PackingWithB2,
        LemmaId::GStarExpansionLinkage,
    ];

    pub fn parse(s: &str) -> Option<LemmaId> {
        LemmaId::ALL.into_iter().find(|id| id.to_string().eq_ignore_ascii_case(s))
    }

    /// Whether the check takes a packing size `n`.
    pub fn uses_n(self) -> bool {
        self.packing_figure().is_some()
    }

    /// Whether the check quantifies over deleted edge sets.
    pub fn uses_trial(self) -> bool {
        self.uses_n() || self == LemmaId::HittingRobust
    }

    fn packing_figure(self) -> Option<Figure> {
        match self {
            LemmaId::B3LayerPacking => Some(Figure::Fig5),
            LemmaId::B6Packing => Some(Figure::Fig8),
            LemmaId::B7PackingWithCD => Some(Figure::Fig10),
            LemmaId::B8PackingWithB1 => Some(Figure::Fig12),
            LemmaId::B9PackingWithB2 => Some(Figure::Fig14),
            _ => None,
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaParams {
    /// Wall size, or the number of deleted edges for the packing checks.
    pub r: usize,
    /// Packing size.
    pub n: usize,
    pub trial: TrialPolicy,
    /// Node budget of every individual search.
    pub budget: u64,
    pub parallelism: Parallelism,
}

impl Default for LemmaParams {
    fn default() -> Self {
        LemmaParams { r: 2, n: 1, trial: TrialPolicy::Auto, budget: DEFAULT_BUDGET, parallelism: Parallelism::default() }
    }
}

impl LemmaParams {
    pub fn new(r: usize) -> LemmaParams {
        LemmaParams { r, ..Default::default() }
    }

    pub fn packing(n: usize, r: usize) -> LemmaParams {
        LemmaParams { r, n, ..Default::default() }
    }

    fn constraints(&self) -> SearchConstraints {
        SearchConstraints { budget: self.budget, parallelism: self.parallelism, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Verified,
    /// Verified, but the quantifier ranged over nothing.
    VerifiedVacuous,
    /// Every sampled deletion set passed; not a full verification.
    VerifiedSampled,
    Refuted,
    BudgetExceeded,
}

impl Verdict {
    pub fn is_verified(self) -> bool {
        matches!(self, Verdict::Verified | Verdict::VerifiedVacuous | Verdict::VerifiedSampled)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::VerifiedVacuous => "verified-vacuous",
            Verdict::VerifiedSampled => "verified-sampled",
            Verdict::Refuted => "refuted",
            Verdict::BudgetExceeded => "budget-exceeded",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Embedding { pattern: String, embedding: Embedding },
    Linkage { linkage: Linkage },
    TwoLinkages { first: Linkage, second: Linkage },
    Packing { pattern: String, embeddings: Vec<Embedding> },
    Expansion { embedding: Embedding, linkage: Linkage },
    /// A deleted edge set under which the claimed object was not found.
    Deletion { deleted: Vec<Edge>, detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub id: LemmaId,
    pub params: ReportParams,
    pub host: String,
    pub verdict: Verdict,
    /// Search nodes over all sub-searches.
    pub nodes: u64,
    /// Embeddings or deletion sets examined.
    pub examined: u64,
    pub trials: Vec<DeletionTrial>,
    pub notes: Vec<String>,
    pub witness: Option<Witness>,
    pub elapsed_ms: u64,
}

impl LemmaReport {
    /// JSON without the timing field.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        v.as_object_mut().expect("object").remove("elapsed_ms");
        serde_json::to_string(&v).expect("reports serialize")
    }
}

struct Draft {
    host: String,
    verdict: Verdict,
    nodes: u64,
    examined: u64,
    trials: Vec<DeletionTrial>,
    notes: Vec<String>,
    witness: Option<Witness>,
}

impl Draft {
    fn new(host: impl Into<String>) -> Draft {
        Draft {
            host: host.into(),
            verdict: Verdict::Verified,
            nodes: 0,
            examined: 0,
            trials: vec![],
            notes: vec![],
            witness: None,
        }
    }

    fn finish(mut self, verdict: Verdict) -> Draft {
        self.verdict = verdict;
        self
    }
}

/// Runs one check. Errors are reserved for invalid parameters; a search that
/// runs out of budget yields a `BudgetExceeded` verdict.
pub fn check(id: LemmaId, params: &LemmaParams) -> Result<LemmaReport> {
    let start = Instant::now();
    validate(id, params)?;
    let draft = match run(id, params) {
        Ok(d) => d,
        Err(Error::BudgetExceeded(nodes)) => {
            let mut d = Draft::new(host_name(id, params));
            d.nodes = nodes;
            d.notes.push("a sub-search exceeded the node budget".into());
            d.finish(Verdict::BudgetExceeded)
        }
        Err(e) => return Err(e),
    };
    Ok(LemmaReport {
        id,
        params: ReportParams { r: params.r, n: id.uses_n().then_some(params.n), budget: params.budget },
        host: draft.host,
        verdict: draft.verdict,
        nodes: draft.nodes,
        examined: draft.examined,
        trials: draft.trials,
        notes: draft.notes,
        witness: draft.witness,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// One report per check: wall-size checks at `max_r`, packing checks at
/// n = 1 with `max_r - 1` deletions.
pub fn run_all(max_r: usize, trial: TrialPolicy, budget: u64, parallelism: Parallelism) -> Result<Vec<LemmaReport>> {
    if max_r == 0 {
        return Err(Error::InvalidParameter("max_r must be at least 1".into()));
    }
    LemmaId::ALL
        .into_iter()
        .map(|id| {
            let (r, n) = if id.uses_n() { (max_r - 1, 1) } else { (max_r, 1) };
            check(id, &LemmaParams { r, n, trial, budget, parallelism })
        })
        .collect()
}

/// Fixed-width table, one line per report.
pub fn summary_table(reports: &[LemmaReport]) -> String {
    let mut out = format!("{:<22} {:>3} {:>3} {:<17} {:>14} {:>10}  host\n", "check", "r", "n", "verdict", "nodes", "examined");
    for rep in reports {
        let n = rep.params.n.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
        out.push_str(&format!(
            "{:<22} {:>3} {:>3} {:<17} {:>14} {:>10}  {}\n",
            rep.id.to_string(),
            rep.params.r,
            n,
            rep.verdict.to_string(),
            rep.nodes,
            rep.examined,
            rep.host
        ));
    }
    out
}

fn validate(id: LemmaId, p: &LemmaParams) -> Result<()> {
    let needs_r = !id.uses_n();
    if needs_r && p.r == 0 {
        return Err(Error::InvalidParameter(format!("{id} needs r >= 1")));
    }
    if p.r > 64 || p.n > 64 {
        return Err(Error::InvalidParameter("parameters above 64 are out of reach".into()));
    }
    Ok(())
}

fn host_name(id: LemmaId, p: &LemmaParams) -> String {
    match id {
        LemmaId::NoTwoLinkages | LemmaId::NoB7 | LemmaId::NoB5OverB3 | LemmaId::B2Bottleneck => format!("W({})", p.r),
        LemmaId::B3CenterBottleneck | LemmaId::NoB4 => format!("W({}) - {{a,b}}", p.r),
        LemmaId::NoB4OverB3 => format!("W-({})", p.r),
        LemmaId::HittingRobust | LemmaId::GStarExpansionLinkage => format!("G*(6x4, {})", p.r),
        _ => {
            let fig = id.packing_figure().expect("packing check");
            let (size, _) = packing_host_size(fig, p.n, p.r);
            match fig.exterior() {
                Exterior::None => format!("W-({size})"),
                Exterior::CdPath => format!("W-({size}) + {}-fold c-d path", p.n + p.r),
                Exterior::Brick => format!("W-({size}) + {}-fold brick on d,b,c", p.n + p.r),
                Exterior::DoubleBrick => format!("W-({size}) + {}-fold B2 on a,b,c,d", p.n + p.r),
            }
        }
    }
}

fn run(id: LemmaId, p: &LemmaParams) -> Result<Draft> {
    match id {
        LemmaId::NoTwoLinkages => no_two_linkages(p),
        LemmaId::HittingRobust => hitting_robust(p),
        LemmaId::B3CenterBottleneck => b3_centre(p),
        LemmaId::NoB4 => no_pattern(p, "B4", true),
        LemmaId::NoB4OverB3 => no_extension_over_b3(p, 4),
        LemmaId::NoB5OverB3 => no_extension_over_b3(p, 5),
        LemmaId::B2Bottleneck => b2_bottleneck(p),
        LemmaId::NoB7 => no_b7(p),
        LemmaId::GStarExpansionLinkage => gstar_expansion(p),
        _ => packing(id, p),
    }
}

fn is_bottleneck(g: &LabeledGraph, v: VertexId) -> bool {
    matches!(g.role(v), Role::Bottleneck(_))
}

fn budget_err(nodes: u64) -> Error {
    Error::BudgetExceeded(nodes)
}

fn no_two_linkages(p: &LemmaParams) -> Result<Draft> {
    let g = condensed_wall(p.r, true);
    let mut d = Draft::new(host_name(LemmaId::NoTwoLinkages, p));
    let one = find_linkage(&g, p.budget)?;
    d.nodes += one.stats().nodes;
    let linkage = match one {
        LinkageOutcome::Found(l, _) => l,
        LinkageOutcome::NotFound(_) => {
            d.notes.push("the wall has no (a-b, c-d) linkage at all".into());
            return Ok(d.finish(Verdict::Refuted));
        }
        LinkageOutcome::BudgetExceeded(s) => return Err(budget_err(d.nodes.max(s.nodes))),
    };
    let two = find_two_edge_disjoint_linkages(&g, p.budget)?;
    d.nodes += two.stats().nodes;
    Ok(match two {
        TwoLinkageOutcome::NotFound(_) => {
            d.witness = Some(Witness::Linkage { linkage });
            d.notes.push("two edge-disjoint linkages: none (exhaustive)".into());
            d.finish(Verdict::Verified)
        }
        TwoLinkageOutcome::Found(a, b, _) => {
            d.witness = Some(Witness::TwoLinkages { first: a, second: b });
            d.finish(Verdict::Refuted)
        }
        TwoLinkageOutcome::BudgetExceeded(_) => return Err(budget_err(d.nodes)),
    })
}

/// Runs `test` on every planned deletion set (in order) and returns the
/// first failure with its set.
/// `test` returns the failure message (if any) and the nodes it searched;
/// nodes are summed up to and including the first failure.
fn first_failure<F>(
    universe: &[Edge],
    trial: &DeletionTrial,
    par: Parallelism,
    nodes: &mut u64,
    test: F,
) -> Result<Option<(Vec<Edge>, String)>>
where
    F: Fn(&[Edge]) -> Result<(Option<String>, u64)> + Sync + Send,
{
    const CHUNK: usize = 4096;
    let mut sets = trial.sets(universe);
    loop {
        let chunk: Vec<Vec<Edge>> = sets.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return Ok(None);
        }
        let results = map_indexed(chunk.len(), par, |i| test(&chunk[i]));
        for (set, res) in chunk.iter().zip(results) {
            let (msg, n) = res?;
            *nodes += n;
            if let Some(msg) = msg {
                return Ok(Some((set.clone(), msg)));
            }
        }
    }
}

fn inner(p: &LemmaParams) -> Parallelism {
    match p.parallelism {
        Parallelism::Parallel => Parallelism::Sequential,
        s => s,
    }
}

fn gstar_for(p: &LemmaParams) -> Result<GStar> {
    let spec = GStarSpec { budget: p.budget, ..GStarSpec::new(6, 4, p.r) };
    build_gstar(&spec)
}

/// Checks the expansion under `deleted`; `None` when it verifies.
fn expansion_failure(gs: &GStar, deleted: &[Edge], budget: u64) -> Result<(Option<String>, u64)> {
    let del: BTreeSet<Edge> = deleted.iter().copied().collect();
    let (emb, stats) = gs.expansion(&del, budget)?;
    let Some(emb) = emb else {
        return Ok((Some("no B-expansion after deletion".into()), stats.nodes));
    };
    let host = gs.graph.delete_edges(deleted)?;
    if !verify_embedding(&host, &emb, &gs.wall_pattern())? {
        return Ok((Some("expansion does not verify".into()), stats.nodes));
    }
    Ok((None, stats.nodes))
}

fn hitting_robust(p: &LemmaParams) -> Result<Draft> {
    let gs = gstar_for(p)?;
    let mut d = Draft::new(host_name(LemmaId::HittingRobust, p));
    let wall_edges: Vec<Edge> = gs.w_part().edges().collect();
    let budget = p.budget;
    let mut all_exhaustive = true;
    for size in 0..p.r {
        let trial = DeletionTrial::plan(wall_edges.len(), size, p.trial)?;
        all_exhaustive &= trial.is_exhaustive();
        let fail = first_failure(&wall_edges, &trial, p.parallelism, &mut d.nodes, |f| expansion_failure(&gs, f, budget))?;
        d.examined += trial.tried;
        d.trials.push(trial);
        if let Some((deleted, detail)) = fail {
            d.witness = Some(Witness::Deletion { deleted, detail });
            return Ok(d.finish(Verdict::Refuted));
        }
    }
    if p.r >= 2 {
        let all: Vec<Edge> = gs.graph.edges().collect();
        let count = match p.trial {
            TrialPolicy::Sampled { count, .. } => count,
            _ => DEFAULT_SAMPLES,
        };
        let policy = if binomial(all.len(), p.r - 1) <= count as u128 {
            TrialPolicy::Exhaustive
        } else {
            TrialPolicy::Sampled { count, seed: MIXED_SEED }
        };
        let trial = DeletionTrial::plan(all.len(), p.r - 1, policy)?;
        let fail = first_failure(&all, &trial, p.parallelism, &mut d.nodes, |f| expansion_failure(&gs, f, budget))?;
        d.examined += trial.tried;
        d.notes.push(format!("{} deletion sets of size {} drawn from all of G*", trial.tried, p.r - 1));
        d.trials.push(trial);
        if let Some((deleted, detail)) = fail {
            d.witness = Some(Witness::Deletion { deleted, detail });
            return Ok(d.finish(Verdict::Refuted));
        }
    }
    d.notes.push(format!("terminal edges {} and {}", gs.e1, gs.e2));
    Ok(d.finish(if all_exhaustive { Verdict::Verified } else { Verdict::VerifiedSampled }))
}

fn wall_minus_ab(r: usize, jumps: bool) -> (LabeledGraph, CondensedLayout) {
    (condensed_wall(r, jumps), CondensedLayout { r })
}

fn b3_centre(p: &LemmaParams) -> Result<Draft> {
    let (g, l) = wall_minus_ab(p.r, true);
    let pattern = Pattern::named("B3").expect("B3");
    let x = pattern.centre_vertices()[0];
    let mut c = p.constraints().forbid([l.a(), l.b()]);
    c.parallelism = p.parallelism;
    let gr = &g;
    let u = check_all_embeddings(&g, &pattern, &c, &|e: &Embedding| is_bottleneck(gr, e.branch_map[x]))?;
    let mut d = Draft::new(host_name(LemmaId::B3CenterBottleneck, p));
    d.nodes = u.stats.nodes;
    if u.budget_exceeded {
        return Err(budget_err(u.stats.nodes));
    }
    d.examined = u.examined;
    if let Some(v) = u.violation {
        d.witness = Some(Witness::Embedding { pattern: pattern.name, embedding: v });
        return Ok(d.finish(Verdict::Refuted));
    }
    Ok(d.finish(if u.examined == 0 { Verdict::VerifiedVacuous } else { Verdict::Verified }))
}

fn no_pattern(p: &LemmaParams, name: &str, minus_ab: bool) -> Result<Draft> {
    let (g, l) = wall_minus_ab(p.r, true);
    let pattern = Pattern::named(name).expect("named pattern");
    let mut c = p.constraints();
    if minus_ab {
        c = c.forbid([l.a(), l.b()]);
    }
    let mut d = Draft::new(host_name(LemmaId::NoB4, p));
    let out = find_topological_minor(&g, &pattern, &c)?;
    d.nodes = out.stats().nodes;
    Ok(match out {
        SearchOutcome::NotFound(_) => d.finish(Verdict::Verified),
        SearchOutcome::Found(e, _) => {
            d.witness = Some(Witness::Embedding { pattern: pattern.name, embedding: e });
            d.finish(Verdict::Refuted)
        }
        SearchOutcome::BudgetExceeded(s) => return Err(budget_err(s.nodes)),
    })
}

/// Triples of pairwise adjacent bricks of the elementary B_n.
fn b3_triples(n: usize) -> Vec<BTreeSet<usize>> {
    let (_, cert) = gen_brick_wall(BrickWallId::B(n), &Default::default()).expect("elementary wall");
    let adj = |i: usize, j: usize| cert.adjacency[i].contains(&j);
    let k = cert.bricks.len();
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for m in j + 1..k {
                if adj(i, j) && adj(j, m) && adj(i, m) {
                    out.push([i, j, m].into());
                }
            }
        }
    }
    out
}

/// Keeps the chains on `bricks` (and their ends) off `avoid`.
fn confine(c: &mut SearchConstraints, pattern: &Pattern, bricks: &BTreeSet<usize>, avoid: &BTreeSet<VertexId>) {
    let edges = pattern.edges_on_bricks(bricks);
    for &e in &edges {
        c.edge_avoid.entry(e).or_default().extend(avoid.iter().copied());
    }
    for v in pattern.vertices_of_edges(&edges) {
        c.vertex_avoid.entry(v).or_default().extend(avoid.iter().copied());
    }
}

fn no_extension_over_b3(p: &LemmaParams, n: usize) -> Result<Draft> {
    let jumps = n == 5;
    let (g, l) = wall_minus_ab(p.r, jumps);
    let id = if n == 4 { LemmaId::NoB4OverB3 } else { LemmaId::NoB5OverB3 };
    let pattern = Pattern::named(&format!("B{n}")).expect("B4/B5");
    let mut d = Draft::new(host_name(id, p));
    let ab: BTreeSet<VertexId> = [l.a(), l.b()].into();
    let triples = b3_triples(n);
    for t in &triples {
        let mut c = p.constraints();
        confine(&mut c, &pattern, t, &ab);
        let out = find_topological_minor(&g, &pattern, &c)?;
        d.nodes += out.stats().nodes;
        d.examined += 1;
        match out {
            SearchOutcome::NotFound(_) => {}
            SearchOutcome::Found(e, _) => {
                d.notes.push(format!("B3 part on bricks {t:?}"));
                d.witness = Some(Witness::Embedding { pattern: pattern.name, embedding: e });
                return Ok(d.finish(Verdict::Refuted));
            }
            SearchOutcome::BudgetExceeded(_) => return Err(budget_err(d.nodes)),
        }
    }
    d.notes.push(format!("{} B3 sub-configurations of B{n} confined to W - {{a,b}}", triples.len()));
    Ok(d.finish(Verdict::Verified))
}

fn b2_bottleneck(p: &LemmaParams) -> Result<Draft> {
    let (g, l) = wall_minus_ab(p.r, true);
    let pattern = Pattern::named("B3").expect("B3");
    let pair: BTreeSet<usize> = [0, 1].into();
    // The degree-3 vertices of the B2 are the ends of the chain the two bricks share.
    let shared = (0..pattern.edges.len())
        .find(|&i| pair.iter().all(|b| pattern.edges[i].bricks.contains(b)))
        .expect("adjacent bricks share a chain");
    let (x, y) = (pattern.edges[shared].a, pattern.edges[shared].b);
    let mut c = p.constraints();
    confine(&mut c, &pattern, &pair, &[l.a(), l.b()].into());
    let gr = &g;
    // Side check on the B2 part: at most three disjoint connections out of
    // its layer, at most one through a bottleneck.
    let part = pattern.edges_on_bricks(&pair);
    let b2_of = |e: &Embedding| Embedding {
        pattern: "B2".into(),
        branch_map: vec![],
        path_map: part.iter().map(|&k| e.path_map[k].clone()).collect(),
    };
    let bounded = |e: &Embedding| connections(gr, l, &b2_of(e)).is_some_and(|k| k.total <= 3 && k.via_bottleneck <= 1);
    let u = check_all_embeddings(&g, &pattern, &c, &|e: &Embedding| {
        (is_bottleneck(gr, e.branch_map[x]) || is_bottleneck(gr, e.branch_map[y])) && bounded(e)
    })?;
    let mut d = Draft::new(host_name(LemmaId::B2Bottleneck, p));
    d.nodes = u.stats.nodes;
    if u.budget_exceeded {
        return Err(budget_err(u.stats.nodes));
    }
    d.examined = u.examined;
    if let Some(v) = u.violation {
        if !bounded(&v) {
            d.notes.push(format!("B2 part breaks the connection bound: {:?}", connections(gr, l, &b2_of(&v))));
        }
        d.witness = Some(Witness::Embedding { pattern: pattern.name, embedding: v });
        return Ok(d.finish(Verdict::Refuted));
    }
    if u.examined > 0 {
        d.notes.push("connection bound held for the B2 part of every B3".into());
    }
    Ok(d.finish(if u.examined == 0 { Verdict::VerifiedVacuous } else { Verdict::Verified }))
}

fn no_b7(p: &LemmaParams) -> Result<Draft> {
    let (g, l) = wall_minus_ab(p.r, true);
    let pattern = Pattern::named("B7").expect("B7");
    let mut d = Draft::new(host_name(LemmaId::NoB7, p));
    let out = find_topological_minor(&g, &pattern, &p.constraints())?;
    d.nodes += out.stats().nodes;
    match out {
        SearchOutcome::NotFound(_) => {}
        SearchOutcome::Found(e, _) => {
            d.witness = Some(Witness::Embedding { pattern: pattern.name, embedding: e });
            return Ok(d.finish(Verdict::Refuted));
        }
        SearchOutcome::BudgetExceeded(s) => return Err(budget_err(s.nodes)),
    }
    d.examined += 1;
    // Q = one whole chain whose ends sit on a or b and on a bottleneck (or the other of a, b).
    let ab: BTreeSet<VertexId> = [l.a(), l.b()].into();
    let ends: BTreeSet<VertexId> = ab.iter().copied().chain((0..=p.r).map(|i| l.z(i))).collect();
    let others = |keep: &BTreeSet<VertexId>| -> BTreeSet<VertexId> { g.vertices().filter(|v| !keep.contains(v)).collect() };
    let (not_ab, not_end) = (others(&ab), others(&ends));
    for i in 0..pattern.edges.len() {
        let q = pattern.without_edge(i);
        let (u, v) = (pattern.edges[i].a, pattern.edges[i].b);
        for (on_ab, on_end) in [(u, v), (v, u)] {
            let mut c = p.constraints();
            c.vertex_avoid.insert(on_ab, not_ab.clone());
            c.vertex_avoid.insert(on_end, not_end.clone());
            let out = find_topological_minor(&g, &q, &c)?;
            d.nodes += out.stats().nodes;
            d.examined += 1;
            match out {
                SearchOutcome::NotFound(_) => {}
                SearchOutcome::Found(e, _) => {
                    d.notes.push(format!("B7 minus chain {i} embeds"));
                    d.witness = Some(Witness::Embedding { pattern: q.name, embedding: e });
                    return Ok(d.finish(Verdict::Refuted));
                }
                SearchOutcome::BudgetExceeded(_) => return Err(budget_err(d.nodes)),
            }
        }
    }
    d.notes.push(format!("Q empty and {} single-chain Q variants", 2 * pattern.edges.len()));
    Ok(d.finish(Verdict::Verified))
}

/// Wall size and jump-edge flag of a packing host.
fn packing_host_size(fig: Figure, n: usize, r: usize) -> (usize, bool) {
    let stated = fig.layers() * (n + r);
    (stated.max(fig.min_size()).max(1), false)
}

fn packing(id: LemmaId, p: &LemmaParams) -> Result<Draft> {
    let fig = id.packing_figure().expect("packing check");
    let mut d = Draft::new(host_name(id, p));
    let (size, jumps) = packing_host_size(fig, p.n, p.r);
    if size > fig.layers() * (p.n + p.r) {
        d.notes.push(format!("host widened to size {size}, the least the template fits in"));
    }
    let copies = (p.n + p.r).max(1);
    let host = figure_host(size, jumps, fig.exterior(), copies)?;
    if p.n == 0 {
        return Ok(d.finish(Verdict::VerifiedVacuous));
    }
    let universe: Vec<Edge> = host.graph.edges().collect();
    let trial = DeletionTrial::plan(universe.len(), p.r, p.trial)?;
    let exhaustive = trial.is_exhaustive();
    let mut c = p.constraints();
    c.parallelism = inner(p);
    let pattern = fig.pattern();
    // Certificates for every chunk on the intact host, reused by the trials.
    let mut base = Vec::new();
    for first in (1..).step_by(fig.layers()).take_while(|f| f + fig.layers() - 1 <= size) {
        if let Some(fe) = construct_figure_embedding_with(fig, first, &host, &BTreeSet::new(), &c)? {
            d.nodes += fe.nodes;
            base.push(fe);
        }
    }
    let cache = CertificateCache::with_base(base);
    let all = pack_figures(fig, &host, p.n, &BTreeSet::new(), &cache, &c)?.unwrap_or_default();
    match all.len() >= p.n {
        true => {
            d.witness = Some(Witness::Packing {
                pattern: pattern.name.clone(),
                embeddings: all.into_iter().map(|fe| fe.embedding).collect(),
            });
        }
        false => {
            d.witness = Some(Witness::Deletion { deleted: vec![], detail: "no packing without deletions".into() });
            d.trials.push(trial);
            return Ok(d.finish(Verdict::Refuted));
        }
    }
    let fail = first_failure(&universe, &trial, p.parallelism, &mut d.nodes, |f| {
        let del: BTreeSet<Edge> = f.iter().copied().collect();
        Ok(match pack_figures(fig, &host, p.n, &del, &cache, &c)? {
            Some(_) => (None, 0),
            None => (Some(format!("fewer than {} {} templates fit", p.n, fig.name())), 0),
        })
    })?;
    d.nodes += cache.memo_nodes();
    d.examined = trial.tried;
    d.trials.push(trial);
    if let Some((deleted, detail)) = fail {
        d.witness = Some(Witness::Deletion { deleted, detail });
        return Ok(d.finish(Verdict::Refuted));
    }
    d.notes.push(format!("members are {} embeddings", pattern.name));
    Ok(d.finish(if exhaustive { Verdict::Verified } else { Verdict::VerifiedSampled }))
}

fn gstar_expansion(p: &LemmaParams) -> Result<Draft> {
    let gs = gstar_for(p)?;
    let mut d = Draft::new(host_name(LemmaId::GStarExpansionLinkage, p));
    let (emb, stats) = gs.expansion(&BTreeSet::new(), p.budget)?;
    d.nodes = stats.nodes;
    let Some(emb) = emb else {
        d.notes.push("no linkage in the wall part".into());
        return Ok(d.finish(Verdict::Refuted));
    };
    let pattern = gs.wall_pattern();
    if !verify_embedding(&gs.graph, &emb, &pattern)? {
        d.notes.push("expansion does not verify".into());
        return Ok(d.finish(Verdict::Refuted));
    }
    let path_of = |e: Edge| {
        let i = pattern
            .edges
            .iter()
            .position(|pe| Edge::new(pattern.source[pe.a], pattern.source[pe.b]) == e)
            .expect("terminal edge is a pattern edge");
        emb.path_map[i].clone()
    };
    let t = gs.terminals;
    let orient = |p: crate::graph::Path, s: VertexId| if p.first() == s { p } else { p.reversed() };
    let linkage = Linkage { pab: orient(path_of(gs.e1), t[0]), pcd: orient(path_of(gs.e2), t[2]) };
    if let Some(m) = linkage_defect(&gs.w_part(), &linkage, t) {
        d.notes.push(format!("restriction to W is not a linkage: {m}"));
        return Ok(d.finish(Verdict::Refuted));
    }
    d.examined = 1;
    d.witness = Some(Witness::Expansion { embedding: emb, linkage });
    Ok(d.finish(Verdict::Verified))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in LemmaId::ALL {
            assert_eq!(LemmaId::parse(&id.to_string()), Some(id));
        }
        assert_eq!(LemmaId::parse("nob4"), Some(LemmaId::NoB4));
        assert_eq!(LemmaId::parse("B4"), None);
    }

    #[test]
    fn b3_triples_of_small_walls() {
        assert_eq!(b3_triples(3).len(), 1);
        assert!(b3_triples(2).is_empty());
    }

    #[test]
    fn budget_one_never_verifies() {
        for id in LemmaId::ALL {
            let p = LemmaParams { budget: 1, ..if id.uses_n() { LemmaParams::packing(1, 0) } else { LemmaParams::new(2) } };
            let rep = check(id, &p).unwrap();
            assert_eq!(rep.verdict, Verdict::BudgetExceeded, "{id}");
        }
    }

    #[test]
    fn zero_size_is_an_input_error() {
        assert!(check(LemmaId::NoB4, &LemmaParams::new(0)).is_err());
    }
}
