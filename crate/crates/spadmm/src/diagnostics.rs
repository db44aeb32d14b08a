//! Optimality diagnostics: best-response gap brackets, the dual-distance
//! value function, and saddle certification.
//!
//! For a feasible pair `(z_a, z_b)` the quantities
//!
//! ```text
//!   l = min_x sum_i f_i(x, z_b)     u = max_y sum_i f_i(z_a, y)
//! ```
//!
//! bracket the equilibrium value: `l <= v* <= u`, with equality exactly at a
//! saddle point. Both optimizations run over the player's full feasible
//! intersection (coupling set and all local sets) via projected gradient
//! descent with Armijo backtracking.

use serde::Serialize;

use crate::defaults;
use crate::error::{Error, Result};
use crate::problem::{IterateState, SaddleProblem, SolverConfig};
use crate::sets::{
    clamp_into, collect_stages, product_box_bounds, ConvexSet, Dykstra, PrimitiveStage,
};
use crate::spfw;
use crate::vecmath;

/// Result of one best-response solve. `mapping_norm` is the norm of the
/// unit-step projected-gradient mapping at exit, the stationarity measure
/// the stopping rule uses.
#[derive(Debug, Clone)]
pub struct BestResponse {
    pub point: Vec<f64>,
    pub value: f64,
    pub mapping_norm: f64,
    pub iterations: usize,
}

/// Projection onto (coupling set) ∩ (product of per-block local sets) by
/// one cyclic scheme over exact closed-form stages: the coupling set's
/// flattened primitives plus either one merged clamp (all-box locals) or
/// each local's primitives applied to its slice.
pub(crate) struct IntersectionProjector<'a> {
    global_stages: Vec<PrimitiveStage<'a>>,
    merged_bounds: Option<(Vec<f64>, Vec<f64>)>,
    local_stages: Vec<(usize, usize, PrimitiveStage<'a>)>,
    dykstra: Dykstra,
    /// Euclidean diameter bound of the feasible region, or a large fallback
    /// when no finite bound is available. Line searches cap their travel at
    /// a few multiples of this so projection queries stay at sane scales.
    max_travel: f64,
}

impl<'a> IntersectionProjector<'a> {
    pub(crate) fn new(global: &'a ConvexSet, locals: &'a [ConvexSet]) -> Self {
        let mut global_stages = Vec::new();
        collect_stages(global, &mut global_stages);
        let merged_bounds = product_box_bounds(locals);
        let mut local_stages = Vec::new();
        if merged_bounds.is_none() {
            let mut offset = 0;
            for s in locals {
                let mut prims = Vec::new();
                collect_stages(s, &mut prims);
                for prim in prims {
                    local_stages.push((offset, s.dim(), prim));
                }
                offset += s.dim();
            }
        }
        IntersectionProjector {
            max_travel: diameter_bound(global, locals),
            global_stages,
            merged_bounds,
            local_stages,
            dykstra: Dykstra::default(),
        }
    }

    pub(crate) fn project(&self, v: &[f64]) -> Result<Vec<f64>> {
        let n_global = self.global_stages.len();
        let n_local =
            if self.merged_bounds.is_some() { 1 } else { self.local_stages.len() };
        self.dykstra.run(n_global + n_local, v, |j, t| {
            Ok(if j < n_global {
                self.global_stages[j].project(t)
            } else if let Some((lo, hi)) = &self.merged_bounds {
                clamp_into(t, lo, hi)
            } else {
                let (offset, len, prim) = &self.local_stages[j - n_global];
                let mut out = t.to_vec();
                out[*offset..offset + len]
                    .copy_from_slice(&prim.project(&t[*offset..offset + len]));
                out
            })
        })
    }
}

/// Euclidean diameter of the tightest componentwise box either the coupling
/// set or the local products can vouch for; `1e6` when a coordinate stays
/// unbounded on both sides.
fn diameter_bound(global: &ConvexSet, locals: &[ConvexSet]) -> f64 {
    let dim = global.dim();
    let mut width = vec![f64::INFINITY; dim];
    let mut fold = |bb: Option<(Vec<f64>, Vec<f64>)>, offset: usize| {
        if let Some((lo, hi)) = bb {
            for (i, w) in width[offset..offset + lo.len()].iter_mut().enumerate() {
                *w = w.min((hi[i] - lo[i]).max(0.0));
            }
        }
    };
    fold(global.bounding_box(), 0);
    let mut offset = 0;
    for s in locals {
        fold(s.bounding_box(), offset);
        offset += s.dim();
    }
    if width.iter().all(|w| w.is_finite()) {
        vecmath::norm2(&width).max(1.0)
    } else {
        1e6
    }
}

/// Projected gradient descent with Armijo backtracking (shrink factor 0.5,
/// sufficient-decrease constant 1e-4). The trial step doubles after every
/// accepted iteration so flat directions still pin to faces quickly, but
/// the travel per trial is capped at a few set diameters: on objectives
/// that are linear along the path the doubling would otherwise run away
/// and push projection queries to scales where they cannot resolve. The
/// stopping rule is the unit-step mapping norm `||x - P(x - grad)||`.
fn projected_gradient_min<F, G>(
    projector: &IntersectionProjector,
    f: F,
    grad: G,
    start: &[f64],
    tol: f64,
) -> Result<BestResponse>
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Vec<f64>,
{
    let mut x = projector.project(start)?;
    if x.is_empty() {
        return Ok(BestResponse { point: x, value: f(&[]), mapping_norm: 0.0, iterations: 0 });
    }
    let mut last_t = 1.0f64;
    for it in 0..defaults::BEST_RESPONSE_MAX_ITERS {
        let g = grad(&x);
        let probe = projector.project(&stepped(&x, &g, -1.0))?;
        let mapping = vecmath::dist2(&x, &probe);
        if mapping <= tol {
            return Ok(BestResponse { point: x.clone(), value: f(&x), mapping_norm: mapping, iterations: it });
        }
        let fx = f(&x);
        let t_cap = (4.0 * projector.max_travel / vecmath::norm2(&g)).max(1.0);
        let mut t = (2.0 * last_t).max(1.0).min(t_cap);
        loop {
            let xt = if t == 1.0 { probe.clone() } else { projector.project(&stepped(&x, &g, -t))? };
            let dir: Vec<f64> = xt.iter().zip(&x).map(|(a, b)| a - b).collect();
            if f(&xt) <= fx + defaults::ARMIJO_C * vecmath::dot(&g, &dir) {
                x = xt;
                break;
            }
            t *= defaults::ARMIJO_BETA;
            if t < 1e-18 {
                // Descent stalled at float resolution; report where we are.
                return Ok(BestResponse {
                    point: x.clone(),
                    value: fx,
                    mapping_norm: mapping,
                    iterations: it,
                });
            }
        }
        last_t = t;
    }
    Err(Error::Numerical(format!(
        "best response did not reach mapping norm {tol} within {} iterations",
        defaults::BEST_RESPONSE_MAX_ITERS
    )))
}

fn stepped(v: &[f64], g: &[f64], scale: f64) -> Vec<f64> {
    let mut out = v.to_vec();
    vecmath::axpy(&mut out, scale, g);
    out
}

/// When every block is bilinear-quadratic with no curvature for the given
/// player, that player's response problem is a linear program and one call
/// to the assembled LMO answers it exactly. Returns the minimizer of
/// `cost . v` over the player's feasible intersection.
fn linear_response(
    global: &ConvexSet,
    locals: &[ConvexSet],
    cost: &[f64],
) -> Result<Vec<f64>> {
    spfw::assemble_polyhedron(global, locals)?.lmo(cost)
}

fn all_blocks_linear_in<F>(p: &SaddleProblem, pick: F) -> bool
where
    F: Fn(&crate::problem::BlockObjective) -> (usize, f64),
{
    p.blocks().iter().all(|b| {
        let (dim, quad) = pick(b);
        dim == 0 || quad == 0.0
    })
}

/// Minimizes `sum_i f_i(., y_fixed)` over the minimizer's feasible
/// intersection.
pub fn best_response_min(p: &SaddleProblem, y_fixed: &[f64], tol: f64) -> Result<BestResponse> {
    if y_fixed.len() != p.dim_b() {
        return Err(Error::DimMismatch {
            context: "best response, fixed maximizer point",
            expected: p.dim_b(),
            got: y_fixed.len(),
        });
    }
    let linear = all_blocks_linear_in(p, |b| {
        (b.dim_a, match &b.function {
            crate::problem::BlockFunction::BilinearQuadratic(q) => q.quad_x,
            _ => f64::NAN,
        })
    });
    if linear && p.dim_a() > 0 {
        let cost = p.grad_a(&vec![0.0; p.dim_a()], y_fixed);
        let x = linear_response(p.global_a(), p.local_sets_a(), &cost)?;
        let value = p.total_objective(&x, y_fixed);
        return Ok(BestResponse { point: x, value, mapping_norm: 0.0, iterations: 0 });
    }
    let projector = IntersectionProjector::new(p.global_a(), p.local_sets_a());
    projected_gradient_min(
        &projector,
        |x| p.total_objective(x, y_fixed),
        |x| p.grad_a(x, y_fixed),
        &p.global_a().witness(),
        tol,
    )
}

/// Maximizes `sum_i f_i(x_fixed, .)` over the maximizer's feasible
/// intersection.
pub fn best_response_max(p: &SaddleProblem, x_fixed: &[f64], tol: f64) -> Result<BestResponse> {
    if x_fixed.len() != p.dim_a() {
        return Err(Error::DimMismatch {
            context: "best response, fixed minimizer point",
            expected: p.dim_a(),
            got: x_fixed.len(),
        });
    }
    let linear = all_blocks_linear_in(p, |b| {
        (b.dim_b, match &b.function {
            crate::problem::BlockFunction::BilinearQuadratic(q) => q.quad_y,
            _ => f64::NAN,
        })
    });
    if linear && p.dim_b() > 0 {
        let mut cost = p.grad_b(x_fixed, &vec![0.0; p.dim_b()]);
        vecmath::scale(&mut cost, -1.0);
        let y = linear_response(p.global_b(), p.local_sets_b(), &cost)?;
        let value = p.total_objective(x_fixed, &y);
        return Ok(BestResponse { point: y, value, mapping_norm: 0.0, iterations: 0 });
    }
    let projector = IntersectionProjector::new(p.global_b(), p.local_sets_b());
    let r = projected_gradient_min(
        &projector,
        |y| -p.total_objective(x_fixed, y),
        |y| {
            let mut g = p.grad_b(x_fixed, y);
            vecmath::scale(&mut g, -1.0);
            g
        },
        &p.global_b().witness(),
        tol,
    )?;
    Ok(BestResponse { value: -r.value, ..r })
}

/// Running extremes of the per-iteration bounds: the best lower bound seen
/// so far and the best upper bound, so the reported bracket only tightens.
#[derive(Debug, Clone, Copy)]
pub struct RunningBracket {
    pub lower: f64,
    pub upper: f64,
}

impl Default for RunningBracket {
    fn default() -> Self {
        RunningBracket { lower: f64::NEG_INFINITY, upper: f64::INFINITY }
    }
}

impl RunningBracket {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn update(&mut self, lower_now: f64, upper_now: f64) -> (f64, f64) {
        self.lower = self.lower.max(lower_now);
        self.upper = self.upper.min(upper_now);
        (self.lower, self.upper)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Computes both best responses at the given feasible pair, folds them into
/// the running bracket, and returns the updated `(lower, upper)`.
pub fn gap_bracket(
    p: &SaddleProblem,
    z_a: &[f64],
    z_b: &[f64],
    tol: f64,
    running: &mut RunningBracket,
) -> Result<(f64, f64)> {
    let br_min = best_response_min(p, z_b, tol)?;
    let br_max = best_response_max(p, z_a, tol)?;
    Ok(running.update(br_min.value, br_max.value))
}

/// Reference saddle used by the value function: the consensus points and
/// multipliers of a converged (or otherwise trusted) solution.
#[derive(Debug, Clone)]
pub struct SaddlePoint {
    pub z_a: Vec<f64>,
    pub z_b: Vec<f64>,
    pub lambda_a: Vec<f64>,
    pub lambda_b: Vec<f64>,
}

impl SaddlePoint {
    pub fn from_state(s: &IterateState) -> Self {
        SaddlePoint {
            z_a: s.z_a.clone(),
            z_b: s.z_b.clone(),
            lambda_a: s.lambda_a.clone(),
            lambda_b: s.lambda_b.clone(),
        }
    }
}

/// Distance-to-saddle value
///
/// ```text
///   V = ||lambda_a - lambda_a*||^2 / rho_a + ||lambda_b - lambda_b*||^2 / rho_b
///     + rho_a ||z_a - z_a*||^2 + rho_b ||z_b - z_b*||^2
/// ```
///
/// which decreases at every exact-sub-solve iteration of the splitting
/// method.
pub fn value_function(s: &IterateState, reference: &SaddlePoint, cfg: &SolverConfig) -> Result<f64> {
    if s.z_a.len() != reference.z_a.len() || s.z_b.len() != reference.z_b.len() {
        return Err(Error::DimMismatch {
            context: "value function reference",
            expected: s.z_a.len(),
            got: reference.z_a.len(),
        });
    }
    let dla = vecmath::dist2(&s.lambda_a, &reference.lambda_a);
    let dlb = vecmath::dist2(&s.lambda_b, &reference.lambda_b);
    let dza = vecmath::dist2(&s.z_a, &reference.z_a);
    let dzb = vecmath::dist2(&s.z_b, &reference.z_b);
    Ok(dla * dla / cfg.rho_a + dlb * dlb / cfg.rho_b
        + cfg.rho_a * dza * dza
        + cfg.rho_b * dzb * dzb)
}

/// One-shot saddle check at a candidate pair.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub lower: f64,
    pub upper: f64,
    pub width: f64,
    pub passed: bool,
}

/// Brackets the equilibrium value around the candidate pair and passes when
/// the bracket width is within `tol`. Best responses are solved to the
/// tighter of `tol` and the default best-response tolerance.
pub fn saddle_certificate(
    p: &SaddleProblem,
    x_a: &[f64],
    x_b: &[f64],
    tol: f64,
) -> Result<Certificate> {
    let br_tol = defaults::BEST_RESPONSE_TOL.min(tol);
    let mut running = RunningBracket::new();
    let (lower, upper) = gap_bracket(p, x_a, x_b, br_tol, &mut running)?;
    let width = upper - lower;
    Ok(Certificate { lower, upper, width, passed: width <= tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{BilinearQuadratic, BlockObjective};

    fn quadratic_problem() -> SaddleProblem {
        // f_i = (x_i - c_i)^2 - (y_i - d_i)^2 with c = (0.2, 0.6), d = (0.5, 0.1),
        // all sets boxes, so best responses are clamps of c and d.
        let block = |c: f64, d: f64| {
            BlockObjective::bilinear_quadratic(
                BilinearQuadratic {
                    quad_x: 2.0,
                    quad_y: 2.0,
                    lin_x: -2.0 * c,
                    lin_y: 2.0 * d,
                    constant: c * c - d * d,
                    ..Default::default()
                },
                1,
                1,
            )
            .unwrap()
        };
        let unit = || ConvexSet::box_set(vec![0.0], vec![1.0]).unwrap();
        SaddleProblem::new(
            vec![block(0.2, 0.5), block(0.6, 0.1)],
            vec![unit(), unit()],
            vec![unit(), unit()],
            ConvexSet::box_set(vec![0.0; 2], vec![1.0; 2]).unwrap(),
            ConvexSet::box_set(vec![0.0; 2], vec![1.0; 2]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn best_responses_hit_interior_optima() {
        let p = quadratic_problem();
        let br = best_response_min(&p, &[0.5, 0.1], 1e-9).unwrap();
        assert!((br.point[0] - 0.2).abs() < 1e-7 && (br.point[1] - 0.6).abs() < 1e-7, "{br:?}");
        let br = best_response_max(&p, &[0.2, 0.6], 1e-9).unwrap();
        assert!((br.point[0] - 0.5).abs() < 1e-7 && (br.point[1] - 0.1).abs() < 1e-7, "{br:?}");
    }

    #[test]
    fn bracket_collapses_at_the_saddle() {
        let p = quadratic_problem();
        let cert = saddle_certificate(&p, &[0.2, 0.6], &[0.5, 0.1], 1e-6).unwrap();
        assert!(cert.passed, "{cert:?}");
        assert!(cert.lower <= cert.upper + 2.0 * 1e-7);
        // The saddle value is 0 by construction.
        assert!(cert.lower.abs() < 1e-6 && cert.upper.abs() < 1e-6, "{cert:?}");
    }

    #[test]
    fn bracket_is_strict_away_from_the_saddle() {
        let p = quadratic_problem();
        let cert = saddle_certificate(&p, &[0.9, 0.9], &[0.9, 0.9], 1e-6).unwrap();
        assert!(!cert.passed);
        assert!(cert.lower < -1e-3 && cert.upper > 1e-3, "{cert:?}");
    }

    #[test]
    fn running_bracket_only_tightens() {
        let mut rb = RunningBracket::new();
        assert_eq!(rb.update(-1.0, 2.0), (-1.0, 2.0));
        assert_eq!(rb.update(-3.0, 1.0), (-1.0, 1.0));
        assert_eq!(rb.update(0.5, 5.0), (0.5, 1.0));
        assert!((rb.width() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn value_function_examples() {
        let s = IterateState {
            x_a: vec![0.0; 2],
            x_b: vec![0.0; 2],
            z_a: vec![0.25, 0.75],
            z_b: vec![0.5, 0.5],
            lambda_a: vec![1.0, -1.0],
            lambda_b: vec![0.0, 2.0],
            k: 7,
        };
        let same = SaddlePoint::from_state(&s);
        let cfg = SolverConfig { rho_a: 2.0, rho_b: 3.0, ..Default::default() };
        assert_eq!(value_function(&s, &same, &cfg).unwrap(), 0.0);

        let mut shifted = s.clone();
        shifted.lambda_a[0] += 1.0; // e1 offset, rho_a = 2 -> 1/2
        assert!((value_function(&shifted, &same, &cfg).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn best_response_respects_local_caps() {
        // Minimize (x - 2)^2-ish pull with the box capping at 1.
        let block = BlockObjective::bilinear_quadratic(
            BilinearQuadratic { quad_x: 2.0, lin_x: -4.0, ..Default::default() },
            1,
            0,
        )
        .unwrap();
        let p = SaddleProblem::minimization(
            vec![block],
            vec![ConvexSet::box_set(vec![0.0], vec![1.0]).unwrap()],
            ConvexSet::box_set(vec![-10.0], vec![10.0]).unwrap(),
        )
        .unwrap();
        let br = best_response_min(&p, &[], 1e-10).unwrap();
        assert!((br.point[0] - 1.0).abs() < 1e-9, "{br:?}");
    }
}
