//! Command-line surface.
use clap::{Args, Parser, Subcommand};
use lazysat::{AnalyzeStrategy, CheckLevel, Mode, RestartPolicy, SolverConfig};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "lazysat", version, about = "CDCL solver with lazy strong chronological backtracking")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a DIMACS CNF file.
    Solve(SolveArgs),
    /// Generate uniform random 3-SAT instances.
    Gen(GenArgs),
    /// Compare backtracking modes on a batch of instances.
    Bench(BenchArgs),
}

/// Solver settings shared by `solve` and `bench`.
#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Analysis strategy: 1 stops at the first UIP, 2 also resolves lazy reasons.
    #[arg(long, default_value = "2")]
    pub analyze: AnalyzeStrategy,
    /// Backjump instead of backtracking one level when the jump is at most this long.
    #[arg(long, default_value_t = 100)]
    pub cb_threshold: u32,
    /// Minimize learned clauses.
    #[arg(long)]
    pub minimize: bool,
    /// Cache a blocker literal per clause.
    #[arg(long)]
    pub blockers: bool,
    #[arg(long, default_value = "off")]
    pub restarts: RestartPolicy,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Record wall-clock time in the CSV (makes output nondeterministic).
    #[arg(long)]
    pub timing: bool,
}

impl SolverArgs {
    pub fn config(&self, mode: Mode) -> SolverConfig {
        SolverConfig {
            mode,
            analyze: self.analyze,
            cb_threshold: self.cb_threshold,
            minimize: self.minimize,
            blockers: self.blockers,
            restarts: self.restarts,
            seed: self.seed,
            ..SolverConfig::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Input file in DIMACS CNF format.
    pub input: PathBuf,
    #[arg(long, default_value = "lscb")]
    pub mode: Mode,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Run the invariant checker and report violations as comment lines.
    #[arg(long, default_value = "off")]
    pub check: CheckLevel,
    /// Write a one-row statistics CSV.
    #[arg(long, value_name = "FILE.csv")]
    pub stats: Option<PathBuf>,
    /// Write solver events as JSON lines.
    #[arg(long, value_name = "FILE.jsonl")]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Number of variables.
    #[arg(long, short = 'n')]
    pub vars: u32,
    /// Number of clauses; defaults to the phase-transition count.
    #[arg(long, short = 'm')]
    pub clauses: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Seed of the first instance; instance i uses seed + i.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write one file per instance here instead of printing to stdout.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Generate COUNT instances with N variables and M clauses from SEED.
    #[arg(
        long,
        num_args = 4,
        value_names = ["N", "M", "COUNT", "SEED"],
        conflicts_with = "dir",
        required_unless_present = "dir"
    )]
    pub gen: Option<Vec<u64>>,
    /// Benchmark every .cnf file in this directory.
    #[arg(long)]
    pub dir: Option<PathBuf>,
    /// Modes to compare.
    #[arg(long, value_delimiter = ',', default_value = "ncb,wcb,rscb,lscb")]
    pub modes: Vec<Mode>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}
