//! `aogame` command line.

mod play;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use aogame::algy::{make_algy, AlgyDescriptor, SortMethod};
use aogame::api::{ServerConfig, SessionStore};
use aogame::bounds::{approx_estimate, bound_report, DEFAULT_C};
use aogame::game::{play_match, MatchError, Transcript};
use aogame::graph::{generate, max_cut, parse_graph, serialize_graph, Cut, GeneratorKind, GeneratorSpec, Graph};
use aogame::reduction::{
    build_claim1_poset, build_reduction, hasse_cross_check, sandwich_check, ReducedGraph, ReductionError, RoleMap,
};
use aogame::seed::{derive, Stream};
use aogame::solver::{game_value_with, SolveError, SolverConfig};
use aogame::strategist::{make_strategist, serialize_poset, StrategistDescriptor, StrategyError};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_ILLEGAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "aogame", version, about = "Acyclic orientation game workbench")]
struct Cli {
    /// Print machine-readable output where a command also has a text form.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GraphArg {
    /// Edge-list file, or `-` for stdin.
    #[arg(long, value_name = "FILE")]
    graph: PathBuf,
}

#[derive(Args, Debug)]
struct GuardArgs {
    /// Solver admits graphs with at most this many edges...
    #[arg(long, default_value_t = SolverConfig::default().max_edges)]
    max_edges: usize,
    /// ...or at most this many vertices.
    #[arg(long, default_value_t = SolverConfig::default().max_vertices)]
    max_vertices: usize,
}

impl GuardArgs {
    fn config(&self, parallel: bool) -> SolverConfig {
        SolverConfig {
            max_edges: self.max_edges,
            max_vertices: self.max_vertices,
            parallel,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the game value exactly.
    Solve {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        guard: GuardArgs,
        /// Search root moves in parallel.
        #[arg(long)]
        parallel: bool,
    },
    /// Play interactively against an engine on stdin/stdout.
    Play {
        #[command(flatten)]
        graph: GraphArg,
        /// Which side you play.
        #[arg(long, value_parser = ["algy", "strategist"], default_value = "algy")]
        role: String,
        /// Engine descriptor: a strategist when you play Algy, an Algy otherwise.
        #[arg(long)]
        opponent: String,
        /// Role map from `reduce`, for a claim2 opponent.
        #[arg(long, value_name = "FILE")]
        roles: Option<PathBuf>,
    },
    /// Run strategy-vs-strategy matches.
    Simulate {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value = "exhaustive")]
        algy: String,
        #[arg(long, default_value = "greedy")]
        strategist: String,
        /// Master seed; randomized strategies without an explicit seed derive theirs from it.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run this many matches and print summary statistics instead of a transcript.
        #[arg(long)]
        repeat: Option<u64>,
        /// Role map from `reduce`, for the claim2 questioner.
        #[arg(long, value_name = "FILE")]
        roles: Option<PathBuf>,
    },
    /// Report closed-form bounds.
    Bounds {
        #[command(flatten)]
        graph: GraphArg,
        /// Constant of the density lower bound.
        #[arg(long = "C", default_value_t = DEFAULT_C)]
        c: f64,
    },
    /// Build the gadget reduction of a graph.
    Reduce {
        #[command(flatten)]
        graph: GraphArg,
        /// Gadget size.
        #[arg(long)]
        l: usize,
        /// `auto` for an exact maximum cut, or a file with one 0/1 side label per vertex.
        #[arg(long, default_value = "auto")]
        cut: String,
        /// Output directory for `reduced.el`, `roles.json` and `poset.txt`.
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        /// Also play both sides of the sandwich and report it.
        #[arg(long)]
        check: bool,
        /// With --check, solve the reduced graph exactly.
        #[arg(long)]
        solve: bool,
        #[arg(long, default_value = "binary")]
        sort: SortMethod,
    },
    /// Generate a graph as an edge list.
    Gen {
        #[arg(long)]
        kind: GeneratorKind,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Part sizes for complete-multipartite, comma separated.
        #[arg(long, value_delimiter = ',')]
        parts: Vec<usize>,
        /// Edge probability for gnp.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Serve the game API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Persist sessions in this directory and reload them on start.
        #[arg(long, value_name = "DIR")]
        persist: Option<PathBuf>,
        /// Answer 429 instead of queueing when a session is busy.
        #[arg(long)]
        busy_reject: bool,
    },
}

/// Bad input from the user, as opposed to a runtime failure.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Usage(String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn is_guard(err: &anyhow::Error) -> bool {
    let guard = |e: &SolveError| matches!(e, SolveError::Guard { .. });
    err.chain().any(|e| {
        if let Some(e) = e.downcast_ref::<SolveError>() {
            return guard(e);
        }
        if let Some(StrategyError::Solve(e)) = e.downcast_ref::<StrategyError>() {
            return guard(e);
        }
        match e.downcast_ref::<ReductionError>() {
            Some(ReductionError::Solve(e)) => guard(e),
            Some(ReductionError::Strategy(StrategyError::Solve(e))) => guard(e),
            _ => false,
        }
    })
}

fn exit_code(err: &anyhow::Error) -> i32 {
    if is_guard(err) {
        EXIT_GUARD
    } else if err.chain().any(|e| e.is::<MatchError>()) {
        EXIT_ILLEGAL
    } else if err.chain().any(|e| e.is::<Usage>()) {
        EXIT_USAGE
    } else {
        1
    }
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
    } else {
        text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(|e| usage(format!("{e:#}")))?;
    }
    Ok(text)
}

fn load_graph(arg: &GraphArg) -> Result<Arc<Graph>> {
    let text = read_input(&arg.graph)?;
    let g = parse_graph(&text).map_err(|e| usage(format!("{}: {e}", arg.graph.display())))?;
    Ok(Arc::new(g))
}

fn load_roles(path: &Path, g: &Graph) -> Result<ReducedGraph> {
    let text = read_input(path)?;
    let map: RoleMap = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    ReducedGraph::from_roles(g, &map).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve { graph, guard, parallel } => {
            let g = load_graph(&graph)?;
            print_json(&game_value_with(&g, guard.config(parallel))?)
        }
        Command::Play {
            graph,
            role,
            opponent,
            roles,
        } => {
            let text = read_input(&graph.graph)?;
            let roles = match roles {
                Some(path) => {
                    let g = parse_graph(&text).map_err(|e| usage(e.to_string()))?;
                    Some(load_roles(&path, &g)?.roles())
                }
                None => None,
            };
            let stdin = std::io::stdin().lock();
            let stdout = std::io::stdout().lock();
            play::run(text, &role, opponent, roles, cli.json, stdin, stdout)
        }
        Command::Simulate {
            graph,
            algy,
            strategist,
            seed,
            repeat,
            roles,
        } => {
            let g = load_graph(&graph)?;
            let algy: AlgyDescriptor = algy.parse().map_err(|e: StrategyError| usage(e.to_string()))?;
            let strategist: StrategistDescriptor =
                strategist.parse().map_err(|e: StrategyError| usage(e.to_string()))?;
            let strategist = strategist.resolve().map_err(|e| usage(e.to_string()))?;
            let rg = roles.map(|p| load_roles(&p, &g)).transpose()?;
            simulate(&g, &algy, &strategist, rg.as_ref(), seed, repeat)
        }
        Command::Bounds { graph, c } => {
            let g = load_graph(&graph)?;
            let report = bound_report(&g, c).map_err(|e| usage(e.to_string()))?;
            if cli.json {
                let approx = approx_estimate(&g, c).map_err(|e| usage(e.to_string()))?;
                print_json(&serde_json::json!({ "bounds": report, "approx": approx }))
            } else {
                print_json(&report)
            }
        }
        Command::Reduce {
            graph,
            l,
            cut,
            out,
            check,
            solve,
            sort,
        } => {
            let g = load_graph(&graph)?;
            reduce(&g, l, &cut, &out, check, solve, sort, cli.json)
        }
        Command::Gen {
            kind,
            n,
            parts,
            p,
            seed,
        } => {
            let spec = GeneratorSpec {
                kind,
                n,
                parts,
                p,
                seed: derive(seed, Stream::Graph, 0),
            };
            let g = generate(&spec).map_err(|e| usage(e.to_string()))?;
            println!("{}", serialize_graph(&g));
            Ok(())
        }
        Command::Serve {
            port,
            host,
            persist,
            busy_reject,
        } => {
            let (store, skipped) = SessionStore::open(ServerConfig {
                busy_reject,
                persist_dir: persist,
            })?;
            for s in skipped {
                eprintln!("skipped session record {s}");
            }
            let addr = std::net::SocketAddr::new(host, port);
            eprintln!("listening on http://{addr} ({} sessions loaded)", store.len());
            tokio::runtime::Runtime::new()?.block_on(aogame::api::serve(addr, Arc::new(store)))?;
            Ok(())
        }
    }
}

#[derive(Debug, Serialize)]
struct Summary {
    algy: String,
    strategist: String,
    seed: u64,
    repeat: u64,
    totals: Vec<usize>,
    min: usize,
    max: usize,
    mean: f64,
    forced: Vec<usize>,
}

fn play_once(
    g: &Arc<Graph>,
    algy: &AlgyDescriptor,
    strategist: &StrategistDescriptor,
    rg: Option<&ReducedGraph>,
    seed: u64,
) -> Result<Transcript> {
    let algy = algy.clone().with_default_seed(seed);
    let mut a = make_algy(&algy, g, rg).map_err(wrap_strategy)?;
    let mut s = make_strategist(strategist, g).map_err(wrap_strategy)?;
    let mut t = play_match(g, a.as_mut(), s.as_mut())?;
    t.meta.seed = match algy {
        AlgyDescriptor::TwoRound { seed, .. } => seed,
        _ => None,
    };
    Ok(t)
}

/// Descriptor mismatches are usage errors; solver guards keep their type.
fn wrap_strategy(e: StrategyError) -> anyhow::Error {
    match e {
        StrategyError::Solve(_) => e.into(),
        other => usage(other.to_string()),
    }
}

fn simulate(
    g: &Arc<Graph>,
    algy: &AlgyDescriptor,
    strategist: &StrategistDescriptor,
    rg: Option<&ReducedGraph>,
    seed: u64,
    repeat: Option<u64>,
) -> Result<()> {
    let Some(k) = repeat else {
        let t = play_once(g, algy, strategist, rg, derive(seed, Stream::Algy, 0))?;
        return print_json(&t);
    };
    if k == 0 {
        bail!(usage("--repeat must be positive"));
    }
    let runs: Vec<Transcript> = (0..k)
        .into_par_iter()
        .map(|i| play_once(g, algy, strategist, rg, derive(seed, Stream::Algy, i)))
        .collect::<Result<_>>()?;
    let totals: Vec<usize> = runs.iter().map(|t| t.total).collect();
    print_json(&Summary {
        algy: algy.to_string(),
        strategist: strategist.to_string(),
        seed,
        repeat: k,
        min: totals.iter().copied().min().unwrap_or(0),
        max: totals.iter().copied().max().unwrap_or(0),
        mean: totals.iter().sum::<usize>() as f64 / k as f64,
        forced: runs
            .iter()
            .map(|t| t.moves.iter().filter(|m| m.forced).count())
            .collect(),
        totals,
    })
}

fn parse_cut(g: &Graph, spec: &str) -> Result<Cut> {
    if spec == "auto" {
        return max_cut(g).map_err(|e| usage(e.to_string()));
    }
    let text = read_input(Path::new(spec))?;
    let side = text
        .split_whitespace()
        .map(|t| match t {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(usage(format!("{spec}: cut labels must be 0 or 1, got {other:?}"))),
        })
        .collect::<Result<Vec<bool>>>()?;
    Cut::new(g, side).map_err(|e| usage(format!("{spec}: {e}")))
}

#[derive(Debug, Serialize)]
struct ReduceSummary {
    n: usize,
    m: usize,
    l: usize,
    reduced_n: usize,
    reduced_m: usize,
    cut: usize,
    hasse_violations: Vec<(usize, usize)>,
    files: Vec<PathBuf>,
}

#[allow(clippy::too_many_arguments)]
fn reduce(
    g: &Graph,
    l: usize,
    cut: &str,
    out: &Path,
    check: bool,
    solve: bool,
    sort: SortMethod,
    json: bool,
) -> Result<()> {
    let rg = build_reduction(g, l).map_err(|e| usage(e.to_string()))?;
    let cut = parse_cut(g, cut)?;
    let (poset, arcs) = build_claim1_poset(&rg, &cut)?;
    let violations = hasse_cross_check(&rg, &poset, &arcs);

    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let files = [
        ("reduced.el", serialize_graph(rg.graph())),
        ("roles.json", serde_json::to_string_pretty(&rg.roles())?),
        ("poset.txt", serialize_poset(&poset)),
    ];
    let mut written = Vec::new();
    for (name, body) in files {
        let path = out.join(name);
        std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    let summary = ReduceSummary {
        n: g.n(),
        m: g.m(),
        l,
        reduced_n: rg.graph().n(),
        reduced_m: rg.graph().m(),
        cut: cut.value(),
        hasse_violations: violations,
        files: written,
    };
    let sandwich = if check {
        Some(sandwich_check(g, l, solve, sort)?)
    } else {
        None
    };
    if json {
        return print_json(&serde_json::json!({ "reduction": summary, "sandwich": sandwich }));
    }
    println!(
        "H has {} vertices and {} edges (G: n = {}, e = {}, l = {}, cut = {})",
        summary.reduced_n, summary.reduced_m, summary.n, summary.m, l, summary.cut
    );
    for f in &summary.files {
        println!("wrote {}", f.display());
    }
    if !summary.hasse_violations.is_empty() {
        println!("cover relations missing from H: {:?}", summary.hasse_violations);
    }
    if let Some(s) = sandwich {
        let exact = s.exact.map_or("-".to_string(), |c| c.to_string());
        println!(
            "sandwich {} <= c <= {}: adversary held questioners to >= {}, claim2 finished in <= {}, exact {} => {}",
            s.lower,
            s.upper,
            s.adversary_total,
            s.algy_total,
            exact,
            if s.holds { "holds" } else { "FAILS" }
        );
    }
    Ok(())
}
