mod commands;
mod record;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

/// Hard instances, exact distances and tester experiments for monotonicity
/// testing on hypercubes and hypergrids.
///
/// Exit codes: 0 success, 1 usage or input error, 2 instance too large for
/// the exact machinery, 3 self-check failure.
#[derive(Debug, Parser)]
#[command(name = "monolab", version)]
struct Cli {
    /// Write output here (atomically) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate or sample functions of the hard family.
    ///
    /// JSON output lists function descriptors. CSV output is the value table
    /// of a single function, with columns `bitstring,value` (or
    /// `gridpoint,value` when --n and --d lift it onto a hypergrid).
    Gen(GenArgs),
    /// Random comparison tree, for `simulate --tester tree` and `transform`.
    GenTree(GenTreeArgs),
    /// Exact distance to monotonicity with a self-checking certificate.
    Distance(DistanceArgs),
    /// Capture analysis of a query set (one bitstring per line).
    Capture(CaptureArgs),
    /// Error of a tester against the hard distribution over a budget sweep.
    ///
    /// CSV columns: budget,exactError,mcError,ciLow,ciHigh,seed. exactError
    /// is an exact fraction, empty for the pair tester.
    Simulate(SimulateArgs),
    /// Query lower bound for [n]^d at proximity epsilon.
    Bound(BoundArgs),
    /// Non-adaptive distinguisher derived from a comparison tree.
    Transform(TransformArgs),
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "camelCase")]
struct FamilyArgs {
    /// Bits per point; defaults to d*log2(n) when --n and --d are given.
    #[arg(long)]
    m: Option<u32>,
    /// Power of 1/2: `1/8`, `1/2^3`, `2^-3` or `0.125`. Other values are
    /// rounded down to a power of 1/2, with a warning.
    #[arg(long)]
    epsilon: String,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "camelCase")]
struct GridArgs {
    /// Hypergrid side length (a power of two).
    #[arg(long, requires = "d")]
    n: Option<u64>,
    /// Hypergrid dimension.
    #[arg(long, requires = "n")]
    d: Option<u32>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "camelCase")]
struct GenArgs {
    #[command(flatten)]
    #[serde(flatten)]
    family: FamilyArgs,
    #[command(flatten)]
    #[serde(flatten)]
    grid: GridArgs,
    /// Every function in the support, base first.
    #[arg(long, conflicts_with_all = ["seed", "function"])]
    all: bool,
    /// Draw one function from the hard distribution.
    #[arg(long, conflicts_with = "function")]
    seed: Option<u64>,
    /// A specific function: `base` or `j,k`.
    #[arg(long)]
    function: Option<String>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "camelCase")]
struct GenTreeArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    depth: usize,
    #[arg(long)]
    seed: u64,
    /// Chance that a node below the root is a leaf.
    #[arg(long, default_value_t = 0.1)]
    leaf_prob: f64,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "camelCase")]
struct DistanceArgs {
    /// CSV value table, or JSON function descriptor(s) as written by `gen`.
    input: PathBuf,
    #[command(flatten)]
    #[serde(flatten)]
    grid: GridArgs,
    /// Verify this certificate against the input instead of computing one.
    #[arg(long)]
    check: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "camelCase")]
struct CaptureArgs {
    /// Query set file.
    input: PathBuf,
    #[command(flatten)]
    #[serde(flatten)]
    family: FamilyArgs,
    /// Also list every perturbed function that orders the set like the base.
    #[arg(long)]
    exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TesterKind {
    /// Best distinguisher on a greedily chosen capture-maximizing query set.
    Greedy,
    /// A comparison tree from --tree, cut at each budget.
    Tree,
    /// Random pairs on [n]^d.
    Pair,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "camelCase")]
struct SimulateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    family: FamilyArgs,
    #[command(flatten)]
    #[serde(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum)]
    tester: TesterKind,
    #[arg(long, required_if_eq("tester", "tree"))]
    tree: Option<PathBuf>,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Sweep budgets 1..=BUDGET.
    #[arg(long, required_unless_present = "budgets")]
    budget: Option<usize>,
    /// Explicit comma-separated budgets.
    #[arg(long, value_delimiter = ',', conflicts_with = "budget")]
    budgets: Option<Vec<usize>>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "camelCase")]
struct BoundArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    epsilon: String,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "camelCase")]
struct TransformArgs {
    /// Comparison tree JSON.
    input: PathBuf,
    #[command(flatten)]
    #[serde(flatten)]
    family: FamilyArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
