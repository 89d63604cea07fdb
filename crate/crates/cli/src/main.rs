use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use brickwall::embed::{
    figure_host, find_edge_disjoint_packing, find_linkage, find_topological_minor, find_two_edge_disjoint_linkages,
    Figure, LinkageOutcome, PackingOutcome, Pattern, SearchConstraints, SearchOutcome, TwoLinkageOutcome,
    DEFAULT_BUDGET,
};
use brickwall::generators::{
    build_gstar, gen_brick_wall, gen_condensed_wall, gen_elementary_grid, gen_elementary_wall, BrickWallId,
    CondensedWallSpec, GStarSpec,
};
use brickwall::io::{export_dot, CertificateDocument, GraphDocument};
use brickwall::lemmas::{self, LemmaId, LemmaParams, TrialPolicy, Verdict, DEFAULT_SAMPLES, DEFAULT_SEED};
use brickwall::{Error, LabeledGraph, Parallelism, Terminal, VertexId};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "brickwall", version, about = "Condensed walls and exhaustive subdivision search")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Run every search on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph document.
    Gen(GenArgs),
    /// Search for a subdivision of a pattern.
    Embed(EmbedArgs),
    /// Search for an (a-b, c-d) linkage between the terminals.
    Linkage(LinkageArgs),
    /// Search for k edge-disjoint subdivisions of a pattern.
    Pack(PackArgs),
    /// Run one lemma check.
    VerifyLemma(LemmaArgs),
    /// Run every lemma check.
    RunAll(RunAllArgs),
    /// Write a graph (with optional certificate overlays) as DOT.
    ExportDot(DotArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    CondensedWall,
    Grid,
    Wall,
    BrickWall,
    Gstar,
    FigureHost,
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    /// Wall size r.
    #[arg(long, short = 'r')]
    size: Option<usize>,
    /// Drop the jump edges z_{i-1} z_i (condensed wall, figure host).
    #[arg(long)]
    no_jump_edges: bool,
    /// Remove the terminals a and b (condensed wall).
    #[arg(long)]
    without_ab: bool,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// Brick wall id: B1..B10 or B1sq:x,y.
    #[arg(long)]
    id: Option<String>,
    /// Figure for figure-host: fig5, fig8, fig10, fig12, fig14.
    #[arg(long)]
    figure: Option<String>,
    /// Exterior copies for figure-host.
    #[arg(long, default_value_t = 1)]
    copies: usize,
    #[arg(long)]
    name: Option<String>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Node budget.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    host: PathBuf,
    /// B1..B10, K4, or another named pattern.
    #[arg(long)]
    pattern: String,
    /// Allow every chain to be a single edge.
    #[arg(long)]
    skeleton: bool,
    /// Vertices to keep out of the embedding: ids or terminal letters a, b, c, d.
    #[arg(long, value_delimiter = ',')]
    forbid: Vec<String>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct LinkageArgs {
    #[arg(long)]
    host: PathBuf,
    /// Ask for two edge-disjoint linkages instead of one.
    #[arg(long)]
    two: bool,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct PackArgs {
    #[arg(long)]
    host: PathBuf,
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    skeleton: bool,
    #[arg(short, long)]
    k: usize,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum TrialArg {
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Args)]
struct TrialArgs {
    #[arg(long, value_enum, default_value = "auto")]
    trial: TrialArg,
    /// Sampled sets per trial.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 1_000_000_000)]
    budget: u64,
}

impl TrialArgs {
    fn policy(&self) -> TrialPolicy {
        match self.trial {
            TrialArg::Auto => TrialPolicy::Auto,
            TrialArg::Exhaustive => TrialPolicy::Exhaustive,
            TrialArg::Sampled => TrialPolicy::Sampled { count: self.samples, seed: self.seed },
        }
    }
}

#[derive(Args)]
struct LemmaArgs {
    #[arg(long)]
    id: String,
    #[arg(long, short = 'r')]
    size: usize,
    /// Copies required by the packing checks.
    #[arg(short, long, default_value_t = 1)]
    n: usize,
    #[command(flatten)]
    trial: TrialArgs,
    /// Print the full JSON report instead of a summary line.
    #[arg(long)]
    json: bool,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunAllArgs {
    #[arg(long, default_value_t = 2)]
    max_r: usize,
    #[command(flatten)]
    trial: TrialArgs,
    #[arg(long)]
    json: bool,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DotArgs {
    #[arg(long)]
    host: PathBuf,
    /// Certificate JSON files; each member gets its own colour.
    #[arg(long)]
    cert: Vec<PathBuf>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

/// Exit statuses.
enum Status {
    Found,
    None,
    Budget,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> ExitCode {
        ExitCode::from(match s {
            Status::Found => 0,
            Status::None => 1,
            Status::Budget => 3,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let par = if cli.sequential { Parallelism::Sequential } else { Parallelism::Parallel };
    match run(cli.cmd, par) {
        Ok(s) => s.into(),
        Err(Error::BudgetExceeded(n)) => {
            eprintln!("budget exceeded after {n} nodes");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> brickwall::Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_error(p, e)),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn io_error(p: &Path, e: std::io::Error) -> Error {
    Error::InvalidParameter(format!("{}: {e}", p.display()))
}

fn read_graph(p: &Path) -> brickwall::Result<GraphDocument> {
    let text = fs::read_to_string(p).map_err(|e| io_error(p, e))?;
    GraphDocument::parse(&text)
}

fn pattern(name: &str, skeleton: bool) -> brickwall::Result<Pattern> {
    let p = Pattern::named(name).ok_or_else(|| Error::InvalidParameter(format!("unknown pattern {name}")))?;
    Ok(if skeleton { p.skeleton() } else { p })
}

fn need(v: Option<usize>, flag: &str) -> brickwall::Result<usize> {
    v.ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required")))
}

fn resolve_vertex(g: &LabeledGraph, s: &str) -> brickwall::Result<VertexId> {
    let mut cs = s.chars();
    if let (Some(c), None) = (cs.next(), cs.next()) {
        if let Some(t) = Terminal::from_letter(c) {
            return g.terminal(t).ok_or(Error::MissingTerminal(c));
        }
    }
    let v: VertexId = s.parse().map_err(|_| Error::InvalidParameter(format!("bad vertex {s}")))?;
    if !g.contains_vertex(v) {
        return Err(Error::UnknownVertex(v));
    }
    Ok(v)
}

fn run(cmd: Cmd, par: Parallelism) -> brickwall::Result<Status> {
    match cmd {
        Cmd::Gen(a) => generate(a),
        Cmd::Embed(a) => {
            let host = read_graph(&a.host)?.graph;
            let p = pattern(&a.pattern, a.skeleton)?;
            let forbidden = a.forbid.iter().map(|s| resolve_vertex(&host, s)).collect::<brickwall::Result<BTreeSet<_>>>()?;
            let c = SearchConstraints { forbidden, budget: a.search.budget, parallelism: par, ..Default::default() };
            match find_topological_minor(&host, &p, &c)? {
                SearchOutcome::Found(e, s) => {
                    eprintln!("found after {} nodes", s.nodes);
                    emit(&a.search.out, &CertificateDocument::embedding(&e).to_json())?;
                    Ok(Status::Found)
                }
                SearchOutcome::NotFound(s) => {
                    eprintln!("no {} ({} nodes, exhaustive)", p.name, s.nodes);
                    Ok(Status::None)
                }
                SearchOutcome::BudgetExceeded(s) => Err(Error::BudgetExceeded(s.nodes)),
            }
        }
        Cmd::Linkage(a) => {
            let host = read_graph(&a.host)?.graph;
            if a.two {
                match find_two_edge_disjoint_linkages(&host, a.search.budget)? {
                    TwoLinkageOutcome::Found(l1, l2, _) => {
                        let docs = [CertificateDocument::Linkage(l1), CertificateDocument::Linkage(l2)];
                        emit(&a.search.out, &format!("{}\n{}", docs[0].to_json(), docs[1].to_json()))?;
                        Ok(Status::Found)
                    }
                    TwoLinkageOutcome::NotFound(s) => {
                        eprintln!("no two edge-disjoint linkages ({} nodes, exhaustive)", s.nodes);
                        Ok(Status::None)
                    }
                    TwoLinkageOutcome::BudgetExceeded(s) => Err(Error::BudgetExceeded(s.nodes)),
                }
            } else {
                match find_linkage(&host, a.search.budget)? {
                    LinkageOutcome::Found(l, _) => {
                        emit(&a.search.out, &CertificateDocument::Linkage(l).to_json())?;
                        Ok(Status::Found)
                    }
                    LinkageOutcome::NotFound(s) => {
                        eprintln!("no linkage ({} nodes, exhaustive)", s.nodes);
                        Ok(Status::None)
                    }
                    LinkageOutcome::BudgetExceeded(s) => Err(Error::BudgetExceeded(s.nodes)),
                }
            }
        }
        Cmd::Pack(a) => {
            let host = read_graph(&a.host)?.graph;
            let p = pattern(&a.pattern, a.skeleton)?;
            let c = SearchConstraints { budget: a.search.budget, parallelism: par, ..Default::default() };
            match find_edge_disjoint_packing(&host, &p, a.k, &c)? {
                PackingOutcome::Found(packing, _) => {
                    emit(&a.search.out, &CertificateDocument::packing(&p.name, &packing).to_json())?;
                    Ok(Status::Found)
                }
                PackingOutcome::NotFound(s) => {
                    let how = if s.complete { "exhaustive" } else { "branching truncated" };
                    eprintln!("no packing of {} ({} nodes, {how})", a.k, s.nodes);
                    Ok(Status::None)
                }
                PackingOutcome::BudgetExceeded(s) => Err(Error::BudgetExceeded(s.nodes)),
            }
        }
        Cmd::VerifyLemma(a) => {
            let id = LemmaId::parse(&a.id).ok_or_else(|| Error::InvalidParameter(format!("unknown lemma id {}", a.id)))?;
            let params = LemmaParams {
                r: a.size,
                n: a.n,
                trial: a.trial.policy(),
                budget: a.trial.budget,
                parallelism: par,
            };
            let report = lemmas::check(id, &params)?;
            let text = if a.json {
                CertificateDocument::LemmaReport(report.clone()).to_json()
            } else {
                lemmas::summary_table(std::slice::from_ref(&report))
            };
            emit(&a.out, &text)?;
            Ok(status_of(&[report.verdict]))
        }
        Cmd::RunAll(a) => {
            let reports = lemmas::run_all(a.max_r, a.trial.policy(), a.trial.budget, par)?;
            let text = if a.json {
                serde_json::to_string_pretty(&reports).expect("reports serialize")
            } else {
                lemmas::summary_table(&reports)
            };
            emit(&a.out, &text)?;
            Ok(status_of(&reports.iter().map(|r| r.verdict).collect::<Vec<_>>()))
        }
        Cmd::ExportDot(a) => {
            let doc = read_graph(&a.host)?;
            let mut overlays = Vec::new();
            for p in &a.cert {
                let text = fs::read_to_string(p).map_err(|e| io_error(p, e))?;
                let cert = CertificateDocument::from_json(&text)?;
                cert.check_against(&doc.graph)?;
                overlays.extend(cert.overlays());
            }
            emit(&a.out, &export_dot(&doc.graph, &doc.name, &overlays)?)?;
            Ok(Status::Found)
        }
    }
}

fn status_of(verdicts: &[Verdict]) -> Status {
    if verdicts.contains(&Verdict::Refuted) {
        Status::None
    } else if verdicts.contains(&Verdict::BudgetExceeded) {
        Status::Budget
    } else {
        Status::Found
    }
}

fn generate(a: GenArgs) -> brickwall::Result<Status> {
    let (default_name, g) = match a.family {
        Family::CondensedWall => {
            let r = need(a.size, "size")?;
            let g = gen_condensed_wall(CondensedWallSpec { size: r, jump_edges: !a.no_jump_edges })?;
            let base = if a.no_jump_edges { format!("Wminus{r}") } else { format!("W{r}") };
            if a.without_ab {
                let ab = [g.terminal(Terminal::A).expect("a"), g.terminal(Terminal::B).expect("b")];
                (format!("{base}-ab"), g.delete_vertices(&ab)?)
            } else {
                (base, g)
            }
        }
        Family::Grid => {
            let (m, n) = (need(a.rows, "rows")?, need(a.cols, "cols")?);
            (format!("grid{m}x{n}"), gen_elementary_grid(m, n)?)
        }
        Family::Wall => {
            let (m, n) = (need(a.rows, "rows")?, need(a.cols, "cols")?);
            (format!("wall{m}x{n}"), gen_elementary_wall(m, n)?.0)
        }
        Family::BrickWall => {
            let s = a.id.ok_or_else(|| Error::InvalidParameter("--id is required".into()))?;
            let id = BrickWallId::parse(&s).ok_or_else(|| Error::InvalidParameter(format!("unknown brick wall {s}")))?;
            (id.name(), gen_brick_wall(id, &Default::default())?.0)
        }
        Family::Gstar => {
            let r = need(a.size, "size")?;
            let spec = GStarSpec::new(a.rows.unwrap_or(6), a.cols.unwrap_or(4), r);
            (format!("gstar{}x{}r{r}", spec.rows, spec.cols), build_gstar(&spec)?.graph)
        }
        Family::FigureHost => {
            let s = a.figure.ok_or_else(|| Error::InvalidParameter("--figure is required".into()))?;
            let fig = Figure::parse(&s).ok_or_else(|| Error::InvalidParameter(format!("unknown figure {s}")))?;
            let r = a.size.unwrap_or_else(|| fig.min_size());
            let host = figure_host(r, !a.no_jump_edges, fig.exterior(), a.copies)?;
            (format!("{}-host{r}", fig.name()), host.graph)
        }
    };
    let doc = GraphDocument::new(a.name.unwrap_or(default_name), g);
    emit(&a.out, &doc.serialize())?;
    Ok(Status::Found)
}
