//! Command-line front end: `solve` runs one solver on a benchmark or a
//! problem file and writes `trace.csv` plus `summary.json`; `compare` races
//! SP-ADMM against SP-FW on routing instances and writes `compare.csv`.
//!
//! Output files are byte-deterministic by default for a fixed config, seed,
//! and size list: trace and table timings are zeroed unless `--timings` is
//! given, and measured wall time always lands in `summary.json` instead.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::benchmarks::{
    build_power_allocation, build_routing, default_config_power, default_config_routing,
    PowerAllocationSpec, RoutingSpec,
};
use crate::diagnostics;
use crate::driver::{self, Termination};
use crate::error::{Error, Result};
use crate::problem::{BlockSolverKind, InitMode, SaddleProblem, SolverConfig};
use crate::spfw;
use crate::trace::{self, TimingMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_ITERATION_CAP: i32 = 2;

/// Entry point for the binary: parses `std::env::args_os`.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// Parses and executes the given argument list, returning the exit code.
/// Split out from `run` so tests can drive the CLI in-process.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not failures.
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    init_logging();
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Compare(args) => cmd_compare(&args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn init_logging() {
    let env = env_logger::Env::new().filter("SPADMM_LOG");
    let _ = env_logger::Builder::from_env(env).try_init();
}

#[derive(Parser)]
#[command(
    name = "spadmm",
    about = "Splitting solvers for block-decomposable convex-concave saddle-point problems",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one solver on a benchmark or a problem file.
    Solve(SolveArgs),
    /// Race SP-ADMM against SP-FW on routing instances of several sizes.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchmarkArg {
    PowerAllocation,
    Routing,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Spadmm,
    Spfw,
    Admm,
}

impl AlgoArg {
    fn name(self) -> &'static str {
        match self {
            AlgoArg::Spadmm => "spadmm",
            AlgoArg::Spfw => "spfw",
            AlgoArg::Admm => "admm",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BlockSolverArg {
    Analytic,
    Spfw,
    Extragradient,
}

impl From<BlockSolverArg> for BlockSolverKind {
    fn from(a: BlockSolverArg) -> Self {
        match a {
            BlockSolverArg::Analytic => BlockSolverKind::Analytic,
            BlockSolverArg::Spfw => BlockSolverKind::Spfw,
            BlockSolverArg::Extragradient => BlockSolverKind::Extragradient,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InitArg {
    Zeros,
    UniformProjected,
}

impl From<InitArg> for InitMode {
    fn from(a: InitArg) -> Self {
        match a {
            InitArg::Zeros => InitMode::Zeros,
            InitArg::UniformProjected => InitMode::UniformProjected,
        }
    }
}

/// Solver settings exposed as flags. Names mirror the config fields
/// one-to-one; anything set here overrides the config file, which in turn
/// overrides the benchmark preset.
#[derive(Args, Default)]
struct ConfigFlags {
    #[arg(long, help_heading = "Solver")]
    rho_a: Option<f64>,
    #[arg(long, help_heading = "Solver")]
    rho_b: Option<f64>,
    #[arg(long, help_heading = "Solver")]
    eps_primal: Option<f64>,
    #[arg(long, help_heading = "Solver")]
    eps_dual: Option<f64>,
    #[arg(long, help_heading = "Solver")]
    max_iters: Option<usize>,
    #[arg(long, value_enum, help_heading = "Solver")]
    block_solver: Option<BlockSolverArg>,
    #[arg(long, help_heading = "Solver")]
    block_solver_tol: Option<f64>,
    #[arg(long, help_heading = "Solver")]
    block_solver_max_iters: Option<usize>,
    #[arg(long, help_heading = "Solver")]
    extragradient_step: Option<f64>,
    #[arg(long, help_heading = "Solver")]
    warm_start_blocks: Option<bool>,
    #[arg(long, value_enum, help_heading = "Solver")]
    init: Option<InitArg>,
    #[arg(long, help_heading = "Solver")]
    gap_every: Option<usize>,
    #[arg(long, help_heading = "Solver")]
    best_response_tol: Option<f64>,
    /// Solver seed; doubles as the routing generator seed.
    #[arg(long, help_heading = "Solver")]
    seed: Option<u64>,
    /// Threads for the per-block fan-out; 1 stays sequential.
    #[arg(long, help_heading = "Solver")]
    workers: Option<usize>,
}

impl ConfigFlags {
    fn apply(&self, cfg: &mut SolverConfig) {
        if let Some(v) = self.rho_a {
            cfg.rho_a = v;
        }
        if let Some(v) = self.rho_b {
            cfg.rho_b = v;
        }
        if let Some(v) = self.eps_primal {
            cfg.eps_primal = v;
        }
        if let Some(v) = self.eps_dual {
            cfg.eps_dual = v;
        }
        if let Some(v) = self.max_iters {
            cfg.max_iters = v;
        }
        if let Some(v) = self.block_solver {
            cfg.block_solver = v.into();
        }
        if let Some(v) = self.block_solver_tol {
            cfg.block_solver_tol = v;
        }
        if let Some(v) = self.block_solver_max_iters {
            cfg.block_solver_max_iters = v;
        }
        if let Some(v) = self.extragradient_step {
            cfg.extragradient_step = Some(v);
        }
        if let Some(v) = self.warm_start_blocks {
            cfg.warm_start_blocks = v;
        }
        if let Some(v) = self.init {
            cfg.init = v.into();
        }
        if let Some(v) = self.gap_every {
            cfg.gap_every = v;
        }
        if let Some(v) = self.best_response_tol {
            cfg.best_response_tol = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.workers {
            cfg.workers = v;
        }
    }
}

/// Partial config as read from a TOML or JSON file; unset fields keep the
/// preset values. Unknown keys are rejected so typos fail loudly.
#[derive(Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
struct ConfigPatch {
    rho_a: Option<f64>,
    rho_b: Option<f64>,
    eps_primal: Option<f64>,
    eps_dual: Option<f64>,
    max_iters: Option<usize>,
    block_solver: Option<BlockSolverKind>,
    block_solver_tol: Option<f64>,
    block_solver_max_iters: Option<usize>,
    extragradient_step: Option<f64>,
    warm_start_blocks: Option<bool>,
    init: Option<InitMode>,
    gap_every: Option<usize>,
    best_response_tol: Option<f64>,
    seed: Option<u64>,
    workers: Option<usize>,
}

impl ConfigPatch {
    fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let looks_like_json =
            path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        if looks_like_json {
            serde_json::from_str(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
        } else {
            toml::from_str(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
        }
    }

    fn apply(&self, cfg: &mut SolverConfig) {
        if let Some(v) = self.rho_a {
            cfg.rho_a = v;
        }
        if let Some(v) = self.rho_b {
            cfg.rho_b = v;
        }
        if let Some(v) = self.eps_primal {
            cfg.eps_primal = v;
        }
        if let Some(v) = self.eps_dual {
            cfg.eps_dual = v;
        }
        if let Some(v) = self.max_iters {
            cfg.max_iters = v;
        }
        if let Some(v) = self.block_solver {
            cfg.block_solver = v;
        }
        if let Some(v) = self.block_solver_tol {
            cfg.block_solver_tol = v;
        }
        if let Some(v) = self.block_solver_max_iters {
            cfg.block_solver_max_iters = v;
        }
        if let Some(v) = self.extragradient_step {
            cfg.extragradient_step = Some(v);
        }
        if let Some(v) = self.warm_start_blocks {
            cfg.warm_start_blocks = v;
        }
        if let Some(v) = self.init {
            cfg.init = v;
        }
        if let Some(v) = self.gap_every {
            cfg.gap_every = v;
        }
        if let Some(v) = self.best_response_tol {
            cfg.best_response_tol = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.workers {
            cfg.workers = v;
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Built-in problem family.
    #[arg(long, value_enum, conflicts_with = "problem")]
    benchmark: Option<BenchmarkArg>,
    /// Problem description in the JSON schema (see `SaddleProblem::to_json`).
    #[arg(long, value_name = "FILE")]
    problem: Option<PathBuf>,
    /// Solver config file (TOML or JSON); flags override its entries.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "spadmm")]
    algo: AlgoArg,
    /// Node count for the routing benchmark.
    #[arg(long, default_value_t = 20)]
    nodes: usize,
    /// Directory receiving trace.csv and summary.json.
    #[arg(long, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    /// Record measured wall times in trace.csv (breaks byte determinism).
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    flags: ConfigFlags,
}

#[derive(Serialize)]
struct Summary<'a> {
    termination: Termination,
    iterations: usize,
    final_objective: f64,
    final_gap: Option<f64>,
    wall_time_s: f64,
    algo: &'a str,
    benchmark: Option<&'a str>,
    nodes: Option<usize>,
    edges: Option<usize>,
    seed: u64,
    config: &'a SolverConfig,
}

fn cmd_solve(args: &SolveArgs) -> Result<i32> {
    let (problem, mut cfg, benchmark, nodes, edges) = match (&args.benchmark, &args.problem) {
        (Some(BenchmarkArg::PowerAllocation), None) => {
            let p = build_power_allocation(&PowerAllocationSpec::standard())?;
            (p, default_config_power(), Some("power-allocation"), None, None)
        }
        (Some(BenchmarkArg::Routing), None) => {
            let seed = args.flags.seed.unwrap_or(0);
            let inst = build_routing(&RoutingSpec::new(args.nodes, seed))?;
            let edges = inst.n_edges();
            (inst.problem, default_config_routing(), Some("routing"), Some(args.nodes), Some(edges))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            (SaddleProblem::from_json(&text)?, SolverConfig::default(), None, None, None)
        }
        (None, None) => {
            return Err(Error::Misuse("pass --benchmark or --problem".into()));
        }
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };
    if let Some(path) = &args.config {
        ConfigPatch::load(path)?.apply(&mut cfg);
    }
    args.flags.apply(&mut cfg);
    cfg.validate()?;

    let outcome = match args.algo {
        AlgoArg::Spadmm => driver::solve(&problem, &cfg),
        AlgoArg::Spfw => spfw::solve(&problem, &cfg),
        AlgoArg::Admm => driver::admm_minimize(&problem, &cfg),
    }
    .map_err(|f| f.error)?;

    std::fs::create_dir_all(&args.out)?;
    let mode = if args.timings { TimingMode::Measured } else { TimingMode::Zeroed };
    trace::write_csv(&args.out.join("trace.csv"), &outcome.trace, mode)?;
    let summary = Summary {
        termination: outcome.termination,
        iterations: outcome.state.k,
        final_objective: problem.total_objective(&outcome.state.z_a, &outcome.state.z_b),
        final_gap: outcome.bracket.map(|(l, u)| u - l),
        wall_time_s: outcome.wall_time.as_secs_f64(),
        algo: args.algo.name(),
        benchmark,
        nodes,
        edges,
        seed: cfg.seed,
        config: &cfg,
    };
    let json = serde_json::to_string_pretty(&summary)
        .map_err(|e| Error::Invalid { what: "summary", why: e.to_string() })?;
    std::fs::write(args.out.join("summary.json"), json + "\n")?;

    Ok(match outcome.termination {
        Termination::Converged => EXIT_OK,
        Termination::IterationCap | Termination::TimeBudget => EXIT_ITERATION_CAP,
    })
}

#[derive(Args)]
struct CompareArgs {
    /// Routing sizes to race, e.g. `--sizes 10,20,50`.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Wall-clock budget per run in seconds. Unset, runs terminate by
    /// convergence or `max_iters`, which keeps the table deterministic.
    #[arg(long, conflicts_with = "budget_iters")]
    budget_s: Option<f64>,
    /// Iteration budget per run instead of a wall-clock one.
    #[arg(long)]
    budget_iters: Option<usize>,
    /// Width tolerance fed to the final gap certificate.
    #[arg(long, default_value_t = 1e-9)]
    gap_tol: f64,
    /// Directory receiving compare.csv.
    #[arg(long, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    /// Record measured run times in the table (breaks byte determinism).
    #[arg(long)]
    timings: bool,
    /// Solver config file (TOML or JSON); flags override its entries.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(flatten)]
    flags: ConfigFlags,
}

fn cmd_compare(args: &CompareArgs) -> Result<i32> {
    if args.sizes.is_empty() {
        return Err(Error::Misuse("compare needs at least one size".into()));
    }
    let mut cfg = default_config_routing();
    if let Some(path) = &args.config {
        ConfigPatch::load(path)?.apply(&mut cfg);
    }
    args.flags.apply(&mut cfg);
    cfg.validate()?;

    let budget = args.budget_s.map(Duration::from_secs_f64);
    let mut table = String::from("nodes,edges,algo,gap,time_s\n");
    for &n in &args.sizes {
        let inst = build_routing(&RoutingSpec::new(n, cfg.seed))?;
        for algo in [AlgoArg::Spadmm, AlgoArg::Spfw] {
            let mut run_cfg = cfg.clone();
            if let Some(iters) = args.budget_iters {
                run_cfg.max_iters = iters;
            }
            let outcome = match algo {
                AlgoArg::Spadmm => driver::solve_with_budget(&inst.problem, &run_cfg, budget),
                AlgoArg::Spfw => spfw::spfw_solve_with_budget(&inst.problem, &run_cfg, 1, budget),
                AlgoArg::Admm => unreachable!(),
            }
            .map_err(|f| f.error)?;
            let cert = diagnostics::saddle_certificate(
                &inst.problem,
                &outcome.state.z_a,
                &outcome.state.z_b,
                args.gap_tol,
            )?;
            let time_s = if args.timings { outcome.wall_time.as_secs_f64() } else { 0.0 };
            writeln!(table, "{},{},{},{},{}", n, inst.n_edges(), algo.name(), cert.width, time_s)
                .expect("string write");
        }
    }
    std::fs::create_dir_all(&args.out)?;
    std::fs::write(args.out.join("compare.csv"), &table)?;
    print!("{table}");
    Ok(EXIT_OK)
}
