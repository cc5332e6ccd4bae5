//! `lclmpc`: generate forests, root them, decompose them, solve LCLs on them
//! and benchmark the pipeline.
//!
//! Exit codes: 0 on success, 1 on parse or configuration errors, 2 when
//! `check` finds violations, 3 when the simulator exceeds a memory bound.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use compat_solver::{parse_output, solve, write_output, SolveError, SolveOutput};
use graph_core::{generate, parse_tree, serialize_tree, Forest, HalfEdgeLabeling, TreeKind};
use lcl_core::{builtin, check_solution, encode_inputs, parse_lcl, uniform_inputs, Label, NodeEdgeLcl, Verdict};
use mpc_sim::{trace_csv, MpcConfig, MpcError};
use oracle::{brute_solve, completability_dp, RootedInstance};
use rake_compress::{decompose, DecomposeParams, DecompError};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "lclmpc", version, about = "LCL solving on trees in a simulated MPC model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated forest as TREE v1.
    Gen(GenArgs),
    /// Root every component and write ORIENT v1.
    Root(RootArgs),
    /// Compute a rake-and-compress decomposition and write DECOMP v1.
    Decompose(DecomposeArgs),
    /// Solve an LCL and write OUT v1.
    Solve(SolveArgs),
    /// Check an OUT v1 solution; exits 2 and lists violations if it is wrong.
    Check(CheckArgs),
    /// Solve by exhaustive search, or print completable label pairs.
    Oracle(OracleArgs),
    /// Solve generated instances of increasing size and write CSV rows.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    /// path, star, balanced, caterpillar, random-tree or forest.
    #[arg(long)]
    kind: TreeKind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct TreeInput {
    /// TREE v1 file; `-` or omitted reads standard input.
    #[arg(long)]
    tree: Option<PathBuf>,
}

#[derive(Args)]
struct Simulation {
    /// Local memory exponent.
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    /// Write the per-round trace as CSV to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct RootArgs {
    #[command(flatten)]
    input: TreeInput,
    #[command(flatten)]
    sim: Simulation,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    input: TreeInput,
    #[command(flatten)]
    sim: Simulation,
    /// Minimum compressed path length.
    #[arg(long, default_value_t = 4)]
    l: usize,
}

#[derive(Args)]
struct ProblemInput {
    /// A builtin name (three-coloring, two-coloring, unsatisfiable-edge, free)
    /// or an LCL v1 file.
    #[arg(long)]
    lcl: String,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: TreeInput,
    #[command(flatten)]
    problem: ProblemInput,
    #[command(flatten)]
    sim: Simulation,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: TreeInput,
    #[command(flatten)]
    problem: ProblemInput,
    /// OUT v1 file to check.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: TreeInput,
    #[command(flatten)]
    problem: ProblemInput,
    /// Print the completable label pairs between node `u` and its ancestor `v`.
    #[arg(long, num_args = 2, value_names = ["U", "V"])]
    pairs: Option<Vec<u64>>,
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Table,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated node counts.
    #[arg(long, value_delimiter = ',', default_value = "64,256,1024,4096")]
    sizes: Vec<usize>,
    #[command(flatten)]
    problem: ProblemInput,
    #[arg(long, default_value = "random-tree")]
    kind: TreeKind,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Memory(MpcError),
    #[error("{0}")]
    Violations(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Violations(_) => 2,
            CliError::Memory(_) => 3,
        }
    }
}

impl From<MpcError> for CliError {
    fn from(e: MpcError) -> Self {
        if e.is_memory_violation() {
            CliError::Memory(e)
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Mpc(e) => e.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<DecompError> for CliError {
    fn from(e: DecompError) -> Self {
        match e {
            DecompError::Mpc(e) => e.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn input_error(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Violations(report)) => {
            print!("{report}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Gen(a) => {
            let f = generate(a.kind, a.n, a.max_degree, a.seed).map_err(input_error)?;
            Ok(serialize_tree(&f, None))
        }
        Command::Root(a) => {
            let (f, _) = read_tree(&a.input)?;
            let config = config(a.sim.delta)?;
            let outcome = rooting::root_tree(&f, &config)?;
            write_trace(&a.sim, &trace_csv(&outcome.trace))?;
            Ok(outcome.orientation.to_text(&f))
        }
        Command::Decompose(a) => {
            let (f, _) = read_tree(&a.input)?;
            let config = config(a.sim.delta)?;
            if a.l < 1 {
                return Err(CliError::Input("--l must be at least 1".into()));
            }
            let params = DecomposeParams { l: a.l, repeats: None };
            let out = decompose(&f, &params, &config)?;
            write_trace(&a.sim, &trace_csv(&out.trace))?;
            Ok(out.decomposition.to_text(&f))
        }
        Command::Solve(a) => {
            let (f, labels) = read_tree(&a.input)?;
            let lcl = read_lcl(&a.problem, &f)?;
            let g_in = inputs(&f, &lcl, labels)?;
            let report = solve(&f, &lcl, &g_in, &config(a.sim.delta)?)?;
            write_trace(&a.sim, &compat_solver::trace_csv(&report.trace))?;
            Ok(write_output(&f, &lcl, &report.output))
        }
        Command::Check(a) => {
            let (f, labels) = read_tree(&a.input)?;
            let lcl = read_lcl(&a.problem, &f)?;
            let g_in = inputs(&f, &lcl, labels)?;
            let text = fs::read_to_string(&a.output).map_err(|e| input_error(format!("{}: {e}", a.output.display())))?;
            let Some(g_out) = parse_output(&text, &f, &lcl).map_err(input_error)? else {
                return Err(CliError::Violations("no solution given\n".into()));
            };
            match check_solution(&f, &lcl, &g_in, &g_out).map_err(input_error)? {
                Verdict::Valid => Ok("valid\n".into()),
                Verdict::Violations(list) => Err(CliError::Violations(
                    list.iter().map(|v| format!("{v}\n")).collect(),
                )),
            }
        }
        Command::Oracle(a) => {
            let (f, labels) = read_tree(&a.input)?;
            let lcl = read_lcl(&a.problem, &f)?;
            let g_in = inputs(&f, &lcl, labels)?;
            match a.pairs.as_deref() {
                Some(&[u, v]) => pair_report(&f, &lcl, &g_in, u, v, a.delta),
                _ => {
                    let verdict = brute_solve(&f, &lcl, &g_in).map_err(input_error)?;
                    let output = verdict.witness.map_or(SolveOutput::NoSolution, SolveOutput::Solved);
                    Ok(write_output(&f, &lcl, &output))
                }
            }
        }
        Command::Bench(a) => bench(&a),
    }
}

fn config(delta: f64) -> Result<MpcConfig, CliError> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(CliError::Input(format!("--delta must lie in (0, 1), got {delta}")));
    }
    Ok(MpcConfig::with_delta(delta))
}

fn read_tree(input: &TreeInput) -> Result<(Forest, Option<HalfEdgeLabeling<String>>), CliError> {
    let text = match input.tree.as_deref() {
        None => read_stdin()?,
        Some(p) if p == Path::new("-") => read_stdin()?,
        Some(p) => fs::read_to_string(p).map_err(|e| input_error(format!("{}: {e}", p.display())))?,
    };
    parse_tree(&text).map_err(input_error)
}

fn read_stdin() -> Result<String, CliError> {
    let mut text = String::new();
    io::stdin().read_to_string(&mut text).map_err(input_error)?;
    Ok(text)
}

fn read_lcl(problem: &ProblemInput, f: &Forest) -> Result<NodeEdgeLcl, CliError> {
    let path = Path::new(&problem.lcl);
    let lcl = if path.is_file() {
        parse_lcl(&fs::read_to_string(path).map_err(input_error)?).map_err(input_error)?
    } else {
        builtin(&problem.lcl, f.max_degree().max(1)).map_err(input_error)?
    };
    if lcl.max_degree() < f.max_degree() {
        return Err(CliError::Input(format!(
            "the problem covers degrees up to {}, the forest has degree {}",
            lcl.max_degree(),
            f.max_degree()
        )));
    }
    Ok(lcl)
}

fn inputs(f: &Forest, lcl: &NodeEdgeLcl, labels: Option<HalfEdgeLabeling<String>>) -> Result<HalfEdgeLabeling<Label>, CliError> {
    match labels {
        Some(l) => encode_inputs(lcl, &l).map_err(input_error),
        None => Ok(uniform_inputs(f)),
    }
}

fn write_trace(sim: &Simulation, csv: &str) -> Result<(), CliError> {
    if let Some(path) = &sim.trace {
        fs::write(path, csv).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

/// `pairs <u> <v>` followed by the sorted completable pairs as `a,b`, with
/// `a` on `u`'s edge toward `v` and `b` on `v`'s edge toward `u`.
fn pair_report(
    f: &Forest,
    lcl: &NodeEdgeLcl,
    g_in: &HalfEdgeLabeling<Label>,
    u: u64,
    v: u64,
    delta: f64,
) -> Result<String, CliError> {
    let node = |id: u64| f.index_of(id).ok_or_else(|| CliError::Input(format!("unknown node {id}")));
    let (lower, upper) = (node(u)?, node(v)?);
    let rooting = rooting::root_tree(f, &config(delta)?)?;
    let inst = RootedInstance::from_lcl(f, lcl, g_in, rooting.orientation.parents());
    let pairs = completability_dp(&inst)
        .pair_set(&inst, lower, upper)
        .ok_or_else(|| CliError::Input(format!("{v} is not a strict ancestor of {u} in the computed rooting")))?;
    let symbols = lcl.sigma_out();
    let mut line = format!("pairs {u} {v}");
    for (a, b) in pairs {
        line.push_str(&format!(" {},{}", symbols[a as usize], symbols[b as usize]));
    }
    line.push('\n');
    Ok(line)
}

const BENCH_HEADER: [&str; 9] = [
    "n",
    "m",
    "delta",
    "rounds",
    "phase1_iters",
    "phase2_iters",
    "peak_local_words",
    "global_words",
    "wall_time_ms",
];

fn bench(a: &BenchArgs) -> Result<String, CliError> {
    let config = config(a.delta)?;
    let mut rows = Vec::with_capacity(a.sizes.len());
    for &n in &a.sizes {
        let f = generate(a.kind, n, a.max_degree, a.seed).map_err(input_error)?;
        let lcl = read_lcl(&a.problem, &f)?;
        let g_in = uniform_inputs(&f);
        let start = Instant::now();
        let report = solve(&f, &lcl, &g_in, &config)?;
        let wall = start.elapsed().as_millis();
        let peak_local = report.rooting_trace.iter().map(|r| r.peak_local_words).max().unwrap_or(0);
        let global = report.rooting_trace.iter().map(|r| r.global_words).max().unwrap_or(0);
        rows.push([
            n.to_string(),
            f.edge_count().to_string(),
            a.delta.to_string(),
            report.stats.rounds.to_string(),
            report.stats.phase1_iterations().to_string(),
            report.stats.phase2_iterations().to_string(),
            peak_local.to_string(),
            global.to_string(),
            wall.to_string(),
        ]);
    }
    match a.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(BENCH_HEADER).map_err(input_error)?;
            for row in &rows {
                w.write_record(row).map_err(input_error)?;
            }
            String::from_utf8(w.into_inner().map_err(input_error)?).map_err(input_error)
        }
        Format::Table => {
            let mut widths = BENCH_HEADER.map(str::len);
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: &[&str]| {
                let padded: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:>w$}")).collect();
                padded.join("  ") + "\n"
            };
            let mut out = line(&BENCH_HEADER);
            for row in &rows {
                out += &line(&row.iter().map(String::as_str).collect::<Vec<_>>());
            }
            Ok(out)
        }
    }
}
