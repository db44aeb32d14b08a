//! Saddle-point Frank-Wolfe over the full problem, the projection-free
//! baseline the splitting method is measured against.
//!
//! Both players iterate on their complete feasible intersections (coupling
//! set with every local set folded into one polyhedron). Each step solves
//! one linear minimization per player at the current pair, simultaneously:
//!
//! ```text
//!   s_x = argmin <grad_x, s>      s_y = argmax <grad_y, s>
//!   x += gamma_k (s_x - x)        y += gamma_k (s_y - y)
//! ```
//!
//! with `gamma_k = 2/(2+k)`. The saddle gap
//! `<grad_x, x - s_x> + <grad_y, s_y - y>` is the stopping measure; the
//! primal tolerance of the shared config doubles as its threshold since
//! this method has no splitting residuals.

use std::time::{Duration, Instant};

use crate::diagnostics::{gap_bracket, IntersectionProjector, RunningBracket};
use crate::driver::{SolveFailure, SolveOutcome, Termination};
use crate::error::{Error, Result};
use crate::lp::Polyhedron;
use crate::problem::{InitMode, IterateState, SaddleProblem, SolverConfig};
use crate::trace::TraceRecord;
use crate::vecmath;

/// The exact step schedule.
pub fn step_size(k: usize) -> f64 {
    2.0 / (2.0 + k as f64)
}

/// One player's feasible intersection as a single polyhedron for the LMO.
pub(crate) fn assemble_polyhedron(
    global: &crate::sets::ConvexSet,
    locals: &[crate::sets::ConvexSet],
) -> Result<Polyhedron> {
    let mut poly = Polyhedron::of_set(global)?;
    let mut offset = 0;
    for s in locals {
        poly.add_set_embedded(s, offset)?;
        offset += s.dim();
    }
    Ok(poly)
}

/// Runs the baseline with the shared solver config; records a trace row
/// every `trace_every` iterations (and always the last one). Residual
/// columns are zero-filled to keep the schema shared with the splitting
/// driver.
pub fn spfw_solve(
    p: &SaddleProblem,
    cfg: &SolverConfig,
    trace_every: usize,
) -> std::result::Result<SolveOutcome, SolveFailure> {
    spfw_solve_with_budget(p, cfg, trace_every, None)
}

/// [`spfw_solve`] recording every iteration.
pub fn solve(p: &SaddleProblem, cfg: &SolverConfig) -> std::result::Result<SolveOutcome, SolveFailure> {
    spfw_solve(p, cfg, 1)
}

pub fn spfw_solve_with_budget(
    p: &SaddleProblem,
    cfg: &SolverConfig,
    trace_every: usize,
    budget: Option<Duration>,
) -> std::result::Result<SolveOutcome, SolveFailure> {
    let empty_state = || IterateState {
        x_a: vec![],
        x_b: vec![],
        z_a: vec![],
        z_b: vec![],
        lambda_a: vec![],
        lambda_b: vec![],
        k: 0,
    };
    let fail_at_init = |error: Error| SolveFailure {
        error,
        iteration: 0,
        partial_trace: Vec::new(),
        state: empty_state(),
    };
    if let Err(e) = cfg.validate() {
        return Err(fail_at_init(e));
    }
    if trace_every == 0 {
        return Err(fail_at_init(Error::Config("trace_every must be at least 1".into())));
    }
    let started = Instant::now();
    let setup = || -> Result<(Polyhedron, Polyhedron, Vec<f64>, Vec<f64>)> {
        let poly_a = assemble_polyhedron(p.global_a(), p.local_sets_a())?;
        let poly_b = assemble_polyhedron(p.global_b(), p.local_sets_b())?;
        let seed = |dim: usize| match cfg.init {
            InitMode::Zeros => vec![0.0; dim],
            InitMode::UniformProjected => {
                if dim == 0 { vec![] } else { vec![1.0 / dim as f64; dim] }
            }
        };
        let x = IntersectionProjector::new(p.global_a(), p.local_sets_a())
            .project(&seed(p.dim_a()))?;
        let y = IntersectionProjector::new(p.global_b(), p.local_sets_b())
            .project(&seed(p.dim_b()))?;
        Ok((poly_a, poly_b, x, y))
    };
    let (poly_a, poly_b, mut x, mut y) = match setup() {
        Ok(v) => v,
        Err(e) => return Err(fail_at_init(e)),
    };

    let mut trace: Vec<TraceRecord> = Vec::new();
    let mut running = RunningBracket::new();
    let mut bracket = None;
    let mut k = 0usize;
    loop {
        let step = || -> Result<(Vec<f64>, Vec<f64>, f64)> {
            let gx = p.grad_a(&x, &y);
            let gy = p.grad_b(&x, &y);
            let sx = poly_a.lmo(&gx)?;
            let mut neg_gy = gy.clone();
            vecmath::scale(&mut neg_gy, -1.0);
            let sy = poly_b.lmo(&neg_gy)?;
            let gap = vecmath::dot(&gx, &x) - vecmath::dot(&gx, &sx) + vecmath::dot(&gy, &sy)
                - vecmath::dot(&gy, &y);
            Ok((sx, sy, gap))
        };
        let (sx, sy, gap) = match step() {
            Ok(v) => v,
            Err(error) => {
                return Err(SolveFailure {
                    error,
                    iteration: k,
                    partial_trace: trace,
                    state: pair_state(&x, &y, k),
                })
            }
        };

        let converged = gap <= cfg.eps_primal;
        if !converged {
            let gamma = step_size(k);
            for j in 0..x.len() {
                x[j] += gamma * (sx[j] - x[j]);
            }
            for j in 0..y.len() {
                y[j] += gamma * (sy[j] - y[j]);
            }
        }
        k += 1;

        let out_of_time = budget.is_some_and(|b| started.elapsed() >= b);
        let termination = if converged {
            Some(Termination::Converged)
        } else if k >= cfg.max_iters {
            Some(Termination::IterationCap)
        } else if out_of_time {
            Some(Termination::TimeBudget)
        } else {
            None
        };

        if k % trace_every == 0 || termination.is_some() {
            let gap_due =
                cfg.gap_every > 0 && (k % cfg.gap_every == 0 || termination.is_some());
            let gaps = if gap_due {
                match gap_bracket(p, &x, &y, cfg.best_response_tol, &mut running) {
                    Ok(b) => {
                        bracket = Some(b);
                        Some(b)
                    }
                    Err(error) => {
                        return Err(SolveFailure {
                            error,
                            iteration: k,
                            partial_trace: trace,
                            state: pair_state(&x, &y, k),
                        })
                    }
                }
            } else {
                None
            };
            trace.push(TraceRecord {
                k,
                ra: 0.0,
                rb: 0.0,
                sa: 0.0,
                sb: 0.0,
                total_residual: 0.0,
                objective: p.total_objective(&x, &y),
                gap_lower: gaps.map(|g| g.0),
                gap_upper: gaps.map(|g| g.1),
                wall_time_s: started.elapsed().as_secs_f64(),
            });
        }

        if let Some(termination) = termination {
            return Ok(SolveOutcome {
                state: pair_state(&x, &y, k),
                trace,
                termination,
                bracket,
                wall_time: started.elapsed(),
            });
        }
    }
}

/// The baseline has no consensus copies or multipliers; the pair fills both
/// `x` and `z` so downstream reporting can treat the outcomes uniformly.
fn pair_state(x: &[f64], y: &[f64], k: usize) -> IterateState {
    IterateState {
        x_a: x.to_vec(),
        x_b: y.to_vec(),
        z_a: x.to_vec(),
        z_b: y.to_vec(),
        lambda_a: vec![0.0; x.len()],
        lambda_b: vec![0.0; y.len()],
        k,
    }
}
