//! Outer loop of the splitting method
//!
//! Each iteration runs, in order: (1) the per-block saddle solves of the
//! augmented objective, independent across blocks and fanned out over
//! workers; (2) `z_a <- project(X_a, x_a + lambda_a/rho_a)`; (3) the same
//! for the maximizer; (4) the dual updates
//! `lambda <- lambda + rho (x - z)`. Stops when the primal residual norms
//! `||r_a|| + ||r_b||` and the dual residual norms `||s_a|| + ||s_b||` (with
//! `s = rho (z^k - z^{k-1})`) fall below their thresholds.
//!
//! Running a problem whose maximizer is absent (all `dim_b` zero) reduces
//! the loop to the standard consensus method for decomposable minimization;
//! [`admm_minimize`] enforces that shape.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::blocks::{solve_block, BlockSolution, BlockSubproblem};
use crate::diagnostics::{gap_bracket, RunningBracket};
use crate::error::{Error, Result};
use crate::problem::{InitMode, IterateState, SaddleProblem, SolverConfig};
use crate::trace::TraceRecord;
use crate::vecmath;

/// Primal residuals `r = x - z` and dual residuals `s = rho (z - z_prev)`
/// of one iteration, with their Euclidean norms.
#[derive(Debug, Clone)]
pub struct Residuals {
    pub r_a: Vec<f64>,
    pub r_b: Vec<f64>,
    pub s_a: Vec<f64>,
    pub s_b: Vec<f64>,
    pub norm_r_a: f64,
    pub norm_r_b: f64,
    pub norm_s_a: f64,
    pub norm_s_b: f64,
}

impl Residuals {
    fn new(r_a: Vec<f64>, r_b: Vec<f64>, s_a: Vec<f64>, s_b: Vec<f64>) -> Self {
        let norm_r_a = vecmath::norm2(&r_a);
        let norm_r_b = vecmath::norm2(&r_b);
        let norm_s_a = vecmath::norm2(&s_a);
        let norm_s_b = vecmath::norm2(&s_b);
        Residuals { r_a, r_b, s_a, s_b, norm_r_a, norm_r_b, norm_s_a, norm_s_b }
    }

    pub fn primal_norm(&self) -> f64 {
        self.norm_r_a + self.norm_r_b
    }

    pub fn dual_norm(&self) -> f64 {
        self.norm_s_a + self.norm_s_b
    }

    /// The figure-style scalar: sum of all four residual norms.
    pub fn total(&self) -> f64 {
        self.primal_norm() + self.dual_norm()
    }
}

/// Builds the starting state for the given mode.
pub fn initialize(p: &SaddleProblem, mode: InitMode) -> Result<IterateState> {
    let (da, db) = (p.dim_a(), p.dim_b());
    let (x_a, x_b, z_a, z_b) = match mode {
        InitMode::Zeros => {
            let x_a = vec![0.0; da];
            let x_b = vec![0.0; db];
            let z_a = p.global_a().project(&x_a)?;
            let z_b = p.global_b().project(&x_b)?;
            (x_a, x_b, z_a, z_b)
        }
        InitMode::UniformProjected => {
            let uniform = |d: usize| if d == 0 { vec![] } else { vec![1.0 / d as f64; d] };
            let x_a = p.global_a().project(&uniform(da))?;
            let x_b = p.global_b().project(&uniform(db))?;
            let z_a = x_a.clone();
            let z_b = x_b.clone();
            (x_a, x_b, z_a, z_b)
        }
    };
    Ok(IterateState {
        x_a,
        x_b,
        z_a,
        z_b,
        lambda_a: vec![0.0; da],
        lambda_b: vec![0.0; db],
        k: 0,
    })
}

fn solve_one_block(
    p: &SaddleProblem,
    s: &IterateState,
    cfg: &SolverConfig,
    i: usize,
) -> Result<BlockSolution> {
    let sp = BlockSubproblem {
        objective: &p.blocks()[i],
        local_a: p.local_a(i),
        local_b: p.local_b(i),
        z_a: p.slice_a(i, &s.z_a),
        z_b: p.slice_b(i, &s.z_b),
        lambda_a: p.slice_a(i, &s.lambda_a),
        lambda_b: p.slice_b(i, &s.lambda_b),
        rho_a: cfg.rho_a,
        rho_b: cfg.rho_b,
    };
    let (start_x, start_y) = if cfg.warm_start_blocks {
        (p.slice_a(i, &s.x_a), p.slice_b(i, &s.x_b))
    } else {
        (p.slice_a(i, &s.z_a), p.slice_b(i, &s.z_b))
    };
    solve_block(
        &sp,
        cfg.block_solver,
        start_x,
        start_y,
        cfg.block_solver_tol,
        cfg.block_solver_max_iters,
        cfg.extragradient_step,
    )
    .map_err(|e| e.in_block(i))
}

/// One full iteration. Block results are concatenated in ascending block
/// order whatever the worker count, so iterates are bitwise reproducible.
pub fn spadmm_step(
    p: &SaddleProblem,
    s: &IterateState,
    cfg: &SolverConfig,
) -> Result<(IterateState, Residuals)> {
    let n = p.num_blocks();
    let solutions: Vec<BlockSolution> = if cfg.workers > 1 {
        let results: Vec<Result<BlockSolution>> =
            (0..n).into_par_iter().map(|i| solve_one_block(p, s, cfg, i)).collect();
        results.into_iter().collect::<Result<_>>()?
    } else {
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(solve_one_block(p, s, cfg, i)?);
        }
        out
    };

    let mut x_a = Vec::with_capacity(p.dim_a());
    let mut x_b = Vec::with_capacity(p.dim_b());
    let mut worst_certificate = 0.0f64;
    for sol in &solutions {
        x_a.extend_from_slice(&sol.x);
        x_b.extend_from_slice(&sol.y);
        worst_certificate = worst_certificate.max(sol.certificate);
    }
    if worst_certificate > 0.0 {
        log::debug!(
            "iteration {}: worst block sub-solver certificate {worst_certificate:.3e}",
            s.k + 1
        );
    }

    let mut target_a = x_a.clone();
    for j in 0..target_a.len() {
        target_a[j] += s.lambda_a[j] / cfg.rho_a;
    }
    let z_a = p.global_a().project(&target_a)?;
    let mut target_b = x_b.clone();
    for j in 0..target_b.len() {
        target_b[j] += s.lambda_b[j] / cfg.rho_b;
    }
    let z_b = p.global_b().project(&target_b)?;

    let r_a = vecmath::sub(&x_a, &z_a);
    let r_b = vecmath::sub(&x_b, &z_b);
    let mut lambda_a = s.lambda_a.clone();
    vecmath::axpy(&mut lambda_a, cfg.rho_a, &r_a);
    let mut lambda_b = s.lambda_b.clone();
    vecmath::axpy(&mut lambda_b, cfg.rho_b, &r_b);

    let mut s_a = vecmath::sub(&z_a, &s.z_a);
    vecmath::scale(&mut s_a, cfg.rho_a);
    let mut s_b = vecmath::sub(&z_b, &s.z_b);
    vecmath::scale(&mut s_b, cfg.rho_b);

    let next = IterateState { x_a, x_b, z_a, z_b, lambda_a, lambda_b, k: s.k + 1 };
    Ok((next, Residuals::new(r_a, r_b, s_a, s_b)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    Converged,
    IterationCap,
    TimeBudget,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Termination::Converged => write!(f, "converged"),
            Termination::IterationCap => write!(f, "iteration-cap"),
            Termination::TimeBudget => write!(f, "time-budget"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub state: IterateState,
    pub trace: Vec<TraceRecord>,
    pub termination: Termination,
    /// Final best-response bracket, when gap computation was enabled.
    pub bracket: Option<(f64, f64)>,
    pub wall_time: Duration,
}

/// A failed run: the error plus everything computed before it, so partial
/// traces stay inspectable.
#[derive(Debug)]
pub struct SolveFailure {
    pub error: Error,
    pub iteration: usize,
    pub partial_trace: Vec<TraceRecord>,
    pub state: IterateState,
}

impl fmt::Display for SolveFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "solve failed at iteration {}: {}", self.iteration, self.error)
    }
}

impl std::error::Error for SolveFailure {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.error)
    }
}

pub fn solve(p: &SaddleProblem, cfg: &SolverConfig) -> std::result::Result<SolveOutcome, SolveFailure> {
    solve_with_budget(p, cfg, None)
}

/// [`solve`] with an optional wall-clock budget, checked after each
/// iteration; used by the comparison harness to give both methods equal
/// time.
pub fn solve_with_budget(
    p: &SaddleProblem,
    cfg: &SolverConfig,
    budget: Option<Duration>,
) -> std::result::Result<SolveOutcome, SolveFailure> {
    let fail_at_init = |error: Error| SolveFailure {
        error,
        iteration: 0,
        partial_trace: Vec::new(),
        state: IterateState {
            x_a: vec![],
            x_b: vec![],
            z_a: vec![],
            z_b: vec![],
            lambda_a: vec![],
            lambda_b: vec![],
            k: 0,
        },
    };
    if let Err(e) = cfg.validate() {
        return Err(fail_at_init(e));
    }
    let state0 = match initialize(p, cfg.init) {
        Ok(s) => s,
        Err(e) => return Err(fail_at_init(e)),
    };
    if cfg.workers > 1 {
        let pool = match rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build() {
            Ok(p) => p,
            Err(e) => return Err(fail_at_init(Error::Config(format!("worker pool: {e}")))),
        };
        pool.install(|| run_loop(p, cfg, state0, budget))
    } else {
        run_loop(p, cfg, state0, budget)
    }
}

fn run_loop(
    p: &SaddleProblem,
    cfg: &SolverConfig,
    mut state: IterateState,
    budget: Option<Duration>,
) -> std::result::Result<SolveOutcome, SolveFailure> {
    let started = Instant::now();
    let mut trace: Vec<TraceRecord> = Vec::new();
    let mut running = RunningBracket::new();
    let mut bracket = None;
    loop {
        let (next, res) = match spadmm_step(p, &state, cfg) {
            Ok(v) => v,
            Err(error) => {
                return Err(SolveFailure {
                    error,
                    iteration: state.k,
                    partial_trace: trace,
                    state,
                })
            }
        };
        state = next;
        let converged = res.primal_norm() <= cfg.eps_primal && res.dual_norm() <= cfg.eps_dual;
        let out_of_time = budget.is_some_and(|b| started.elapsed() >= b);
        let termination = if converged {
            Some(Termination::Converged)
        } else if state.k >= cfg.max_iters {
            Some(Termination::IterationCap)
        } else if out_of_time {
            Some(Termination::TimeBudget)
        } else {
            None
        };

        let gap_due = cfg.gap_every > 0 && (state.k % cfg.gap_every == 0 || termination.is_some());
        let gap = if gap_due {
            match gap_bracket(p, &state.z_a, &state.z_b, cfg.best_response_tol, &mut running) {
                Ok(b) => {
                    bracket = Some(b);
                    Some(b)
                }
                Err(error) => {
                    return Err(SolveFailure {
                        error,
                        iteration: state.k,
                        partial_trace: trace,
                        state,
                    })
                }
            }
        } else {
            None
        };

        trace.push(TraceRecord {
            k: state.k,
            ra: res.norm_r_a,
            rb: res.norm_r_b,
            sa: res.norm_s_a,
            sb: res.norm_s_b,
            total_residual: res.total(),
            objective: p.total_objective(&state.z_a, &state.z_b),
            gap_lower: gap.map(|g| g.0),
            gap_upper: gap.map(|g| g.1),
            wall_time_s: started.elapsed().as_secs_f64(),
        });

        if let Some(termination) = termination {
            return Ok(SolveOutcome {
                state,
                trace,
                termination,
                bracket,
                wall_time: started.elapsed(),
            });
        }
    }
}

/// The degenerate mode: consensus minimization with the maximizer absent.
/// Errors unless every block has `dim_b = 0`.
pub fn admm_minimize(
    p: &SaddleProblem,
    cfg: &SolverConfig,
) -> std::result::Result<SolveOutcome, SolveFailure> {
    if p.dim_b() != 0 {
        let state = IterateState {
            x_a: vec![],
            x_b: vec![],
            z_a: vec![],
            z_b: vec![],
            lambda_a: vec![],
            lambda_b: vec![],
            k: 0,
        };
        return Err(SolveFailure {
            error: Error::Misuse(format!(
                "consensus minimization requires an absent maximizer; dim_b = {}",
                p.dim_b()
            )),
            iteration: 0,
            partial_trace: Vec::new(),
            state,
        });
    }
    solve(p, cfg)
}
