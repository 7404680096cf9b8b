//! Command-line driver.
//!
//! Subcommands:
//!
//! * `solve` — filter a candidate family, print the count and optionally
//!   the members, stage stats, and Graphviz exports.
//! * `count` — like `solve` but prints only the count.
//! * `oracle` — the explicit brute-force filter, for cross-checking.
//! * `bound` — derive the weight bound from a component count and a
//!   balance ratio.
//!
//! Exit status: 0 on success, 2 on parse or usage errors, 3 when a state
//! budget is exhausted.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pipeline::{
    brute_force_filter, lower_bound_from_ratio, parse_family, parse_ratio, Pipeline,
    DEFAULT_BUDGET,
};
use crate::zdd::NodeRef;

#[derive(Parser)]
#[command(
    name = "partition-dd",
    about = "Filter graph partitions by a per-component weight bound",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Keep the candidates whose components all meet the weight bound
    Solve(SolveArgs),
    /// Like solve, but print only the number of survivors
    Count(CountArgs),
    /// Reference filter by explicit enumeration (small graphs only)
    Oracle(InputArgs),
    /// Derive the weight bound from a component count and balance ratio
    Bound(BoundArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Graph file: `p n m` header, `w v weight` lines, `e u v` lines
    #[arg(long)]
    graph: PathBuf,

    /// Minimum component weight
    #[arg(long, conflicts_with_all = ["ratio", "components"])]
    lower: Option<u64>,

    /// Balance ratio (decimal); derives the bound together with --components
    #[arg(long, requires = "components")]
    ratio: Option<String>,

    /// Number of components the ratio bound assumes
    #[arg(long, requires = "ratio")]
    components: Option<u64>,

    /// Candidate family file: one member per line, `-` for the empty set
    #[arg(long, conflicts_with = "all")]
    family: Option<PathBuf>,

    /// Use every edge subset as the candidate family (the default)
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Print each surviving member in family-file format
    #[arg(long)]
    enumerate: bool,

    /// Print one `stage seconds nodes cardinality` line per stage to stderr
    #[arg(long)]
    stats: bool,

    /// Write a stage diagram as Graphviz; stages: Z_S, T_Spm, Z_Sup, result
    #[arg(long = "dot", value_name = "STAGE=PATH")]
    dot: Vec<String>,

    /// Cap on interned search states per construction
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Print one `stage seconds nodes cardinality` line per stage to stderr
    #[arg(long)]
    stats: bool,

    /// Cap on interned search states per construction
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Args)]
struct BoundArgs {
    /// Graph file; only the vertex weights matter here
    #[arg(long)]
    graph: PathBuf,

    /// Number of components
    #[arg(long)]
    components: u64,

    /// Balance ratio (decimal)
    #[arg(long)]
    ratio: String,
}

/// Run with the arguments following the program name; returns the exit
/// status.
pub fn run_cli<I>(args: I) -> i32
where
    I: IntoIterator<Item = String>,
{
    let argv = std::iter::once("partition-dd".to_string()).chain(args);
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version on stdout with success status
            let code = if e.exit_code() == 0 { 0 } else { 2 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Solve(args) => run_solve(&args, true),
        Command::Count(args) => run_solve(
            &SolveArgs {
                input: args.input,
                enumerate: false,
                stats: args.stats,
                dot: Vec::new(),
                budget: args.budget,
            },
            false,
        ),
        Command::Oracle(args) => run_oracle(&args),
        Command::Bound(args) => run_bound(&args),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e);
            e.exit_code()
        }
    }
}

fn load_graph(path: &PathBuf) -> Result<Graph> {
    let text = fs::read_to_string(path)?;
    Graph::parse(&text)
}

fn resolve_bound(g: &Graph, input: &InputArgs) -> Result<u64> {
    match (input.lower, &input.ratio, input.components) {
        (Some(l), None, None) => Ok(l),
        (None, Some(r), Some(k)) => {
            let ratio = parse_ratio(r)?;
            let (_, floor) = lower_bound_from_ratio(g.total_weight(), k, &ratio)?;
            Ok(floor)
        }
        _ => Err(Error::InvalidInput(
            "supply either --lower or both --ratio and --components".into(),
        )),
    }
}

fn load_candidates(pipe: &mut Pipeline, input: &InputArgs) -> Result<NodeRef> {
    match &input.family {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            let family = parse_family(&text, pipe.graph().edge_count())?;
            pipe.zdd().from_sets(&family)
        }
        None => Ok(pipe.zdd().all_subsets()),
    }
}

fn member_line(member: &[u32]) -> String {
    if member.is_empty() {
        return "-".to_string();
    }
    let mut line = String::new();
    for (i, e) in member.iter().enumerate() {
        if i > 0 {
            line.push(' ');
        }
        let _ = write!(line, "{}", e);
    }
    line
}

fn run_solve(args: &SolveArgs, allow_outputs: bool) -> Result<()> {
    let g = load_graph(&args.input.graph)?;
    let bound = resolve_bound(&g, &args.input)?;
    let mut pipe = Pipeline::new(&g, bound, args.budget);
    let candidates = load_candidates(&mut pipe, &args.input)?;
    let result = pipe.filter(candidates)?;

    println!("{}", pipe.zdd().count(result));
    if allow_outputs && args.enumerate {
        for member in pipe.zdd().members(result) {
            println!("{}", member_line(&member));
        }
    }
    if args.stats {
        pipe.emit_stats(&mut std::io::stderr())?;
    }
    if allow_outputs {
        for spec in &args.dot {
            write_dot_export(&mut pipe, spec, result)?;
        }
    }
    Ok(())
}

fn write_dot_export(pipe: &mut Pipeline, spec: &str, result: NodeRef) -> Result<()> {
    let (stage, path) = spec.split_once('=').ok_or_else(|| {
        Error::InvalidInput(format!("--dot expects STAGE=PATH, got {:?}", spec))
    })?;
    let mut out = Vec::new();
    match stage.to_ascii_lowercase().as_str() {
        "z_s" => {
            let root = pipe.light_family()?;
            pipe.zdd().write_dot(root, &mut out)?;
        }
        "t_spm" => {
            let root = pipe.cutset_family()?;
            pipe.tdd().write_dot(root, &mut out)?;
        }
        "z_sup" => {
            let root = pipe.forbidden_family()?;
            pipe.zdd().write_dot(root, &mut out)?;
        }
        "result" | "difference" => {
            pipe.zdd().write_dot(result, &mut out)?;
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown --dot stage {:?}; expected Z_S, T_Spm, Z_Sup, or result",
                other
            )))
        }
    }
    fs::write(path, out)?;
    Ok(())
}

fn run_oracle(input: &InputArgs) -> Result<()> {
    let g = load_graph(&input.graph)?;
    let m = g.edge_count();
    if m > 24 {
        return Err(Error::InvalidInput(format!(
            "oracle enumerates explicitly and refuses graphs with more than 24 edges (got {})",
            m
        )));
    }
    let bound = resolve_bound(&g, input)?;
    let family: Vec<Vec<u32>> = match &input.family {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            parse_family(&text, m)?
        }
        None => (0..1u64 << m)
            .map(|mask| (1..=m).filter(|e| mask >> (e - 1) & 1 == 1).collect())
            .collect(),
    };
    let kept = brute_force_filter(&g, &family, bound);
    println!("{}", kept.len());
    for member in &kept {
        println!("{}", member_line(member));
    }
    Ok(())
}

fn run_bound(args: &BoundArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let ratio = parse_ratio(&args.ratio)?;
    let (exact, floor) = lower_bound_from_ratio(g.total_weight(), args.components, &ratio)?;
    println!("exact {}", exact);
    println!("floor {}", floor);
    Ok(())
}
