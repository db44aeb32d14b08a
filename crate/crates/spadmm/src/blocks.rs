//! Per-block saddle sub-problems of the splitting iteration
//!
//! Each outer iteration solves, independently per block `i`,
//!
//! ```text
//!   min   max   f_i(x, y) + lambda_a . x + (rho_a/2)||x - z_a||^2
//!    x     y              - lambda_b . y - (rho_b/2)||y - z_b||^2
//! ```
//!
//! over the block's local sets. The penalties make the objective strongly
//! convex in `x` and strongly concave in `y`, so the saddle point exists and
//! is unique. Three sub-solvers are provided: a closed form for
//! one-dimensional bilinear-quadratic blocks on intervals, a Frank-Wolfe
//! iteration needing only linear minimization on the local sets, and a
//! projected extragradient iteration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lp::lmo;
use crate::problem::{BlockObjective, BlockSolverKind};
use crate::sets::ConvexSet;
use crate::vecmath;

/// Borrowed view of one block's augmented sub-problem. The `z` and `lambda`
/// slices are the block's segments of the consensus and multiplier vectors.
pub struct BlockSubproblem<'a> {
    pub objective: &'a BlockObjective,
    pub local_a: &'a ConvexSet,
    pub local_b: &'a ConvexSet,
    pub z_a: &'a [f64],
    pub z_b: &'a [f64],
    pub lambda_a: &'a [f64],
    pub lambda_b: &'a [f64],
    pub rho_a: f64,
    pub rho_b: f64,
}

impl BlockSubproblem<'_> {
    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        let mut v = self.objective.eval(x, y);
        for j in 0..x.len() {
            let d = x[j] - self.z_a[j];
            v += self.lambda_a[j] * x[j] + 0.5 * self.rho_a * d * d;
        }
        for j in 0..y.len() {
            let d = y[j] - self.z_b[j];
            v -= self.lambda_b[j] * y[j] + 0.5 * self.rho_b * d * d;
        }
        v
    }

    pub fn grad_x(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut g = self.objective.grad_x(x, y);
        for j in 0..g.len() {
            g[j] += self.lambda_a[j] + self.rho_a * (x[j] - self.z_a[j]);
        }
        g
    }

    pub fn grad_y(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut g = self.objective.grad_y(x, y);
        for j in 0..g.len() {
            g[j] -= self.lambda_b[j] + self.rho_b * (y[j] - self.z_b[j]);
        }
        g
    }
}

/// Result of one block solve. `certificate` is the sub-solver's own
/// optimality measure at exit: zero for the closed form, the Frank-Wolfe
/// gap, or the extragradient update norm.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSolution {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub iterations: usize,
    pub certificate: f64,
}

/// Closed-form saddle of a bilinear-quadratic block on an interval product.
///
/// Writing `p = quad_x + rho_a`, `q = quad_y + rho_b`, `b = cross`, the
/// stationarity system is `p x + b y = r1`, `b x - q y = r2`. By Danskin's
/// theorem the partial maximum over the `y` interval has derivative
/// `phi'(x) = p x + b y*(x) - r1` with `y*(x)` the clamped ray
/// `(b x - r2)/q`; `phi'` is continuous, increasing, and piecewise linear
/// with three pieces, so the saddle is the clamped root of whichever piece
/// contains it.
pub fn solve_block_analytic(sp: &BlockSubproblem) -> Result<BlockSolution> {
    let q = sp.objective.bilinear().ok_or(Error::Misuse(
        "analytic block solver requires bilinear-quadratic blocks; \
         use the spfw or extragradient solver"
            .into(),
    ))?;
    let (da, db) = (sp.objective.dim_a, sp.objective.dim_b);
    let bounds_a = sp.local_a.as_box().ok_or(Error::Misuse(
        "analytic block solver requires interval local sets".into(),
    ))?;
    let bounds_b = sp.local_b.as_box().ok_or(Error::Misuse(
        "analytic block solver requires interval local sets".into(),
    ))?;

    let done = |x: Vec<f64>, y: Vec<f64>| Ok(BlockSolution { x, y, iterations: 0, certificate: 0.0 });
    if da == 0 && db == 0 {
        return done(vec![], vec![]);
    }

    let p = q.quad_x + sp.rho_a;
    let qq = q.quad_y + sp.rho_b;
    let b = q.cross;
    let r1 = if da == 1 { -(q.lin_x + sp.lambda_a[0] - sp.rho_a * sp.z_a[0]) } else { 0.0 };
    let r2 = if db == 1 { -(q.lin_y - sp.lambda_b[0] + sp.rho_b * sp.z_b[0]) } else { 0.0 };

    if db == 0 {
        if !(p > 0.0) {
            return Err(Error::Invalid {
                what: "analytic block",
                why: "quad_x + rho_a must be positive".into(),
            });
        }
        return done(vec![(r1 / p).clamp(bounds_a.0[0], bounds_a.1[0])], vec![]);
    }
    if !(qq > 0.0) {
        return Err(Error::Invalid {
            what: "analytic block",
            why: "quad_y + rho_b must be positive".into(),
        });
    }
    let (ly, hy) = (bounds_b.0[0], bounds_b.1[0]);
    if da == 0 {
        return done(vec![], vec![(-r2 / qq).clamp(ly, hy)]);
    }
    if !(p > 0.0) {
        return Err(Error::Invalid {
            what: "analytic block",
            why: "quad_x + rho_a must be positive".into(),
        });
    }
    let (lx, hx) = (bounds_a.0[0], bounds_a.1[0]);

    // Candidate roots of phi' on its three pieces, each checked against the
    // piece's validity region with a scale-relative slack.
    let scale = [p, qq, b.abs(), r1.abs(), r2.abs(), 1.0]
        .into_iter()
        .fold(0.0f64, f64::max);
    let slack = 1e-10 * scale;
    let unclamped_y = |x: f64| (b * x - r2) / qq;

    let mut root = None;
    // Interior piece: y*(x) strictly between the bounds.
    let x_int = (qq * r1 + b * r2) / (p * qq + b * b);
    let y_at = unclamped_y(x_int);
    if qq * (y_at - ly) >= -slack && qq * (hy - y_at) >= -slack {
        root = Some(x_int);
    }
    if root.is_none() {
        // Pinned pieces: y*(x) = ly when the ray falls below, hy above.
        for (edge, keep_if_below) in [(ly, true), (hy, false)] {
            let x_e = (r1 - b * edge) / p;
            let y_at = unclamped_y(x_e);
            let ok = if keep_if_below { qq * (y_at - edge) <= slack } else { qq * (y_at - edge) >= -slack };
            if ok {
                root = Some(x_e);
                break;
            }
        }
    }
    // phi' is continuous and increasing, so some piece always contains the
    // root; reaching here means the slack was too tight at a breakpoint.
    let x_root = match root {
        Some(x) => x,
        None => x_int,
    };
    let x = x_root.clamp(lx, hx);
    let y = unclamped_y(x).clamp(ly, hy);
    done(vec![x], vec![y])
}

/// Frank-Wolfe on the augmented block objective: simultaneous linear
/// minimization oracles for both players, step `2/(2+k)`, stopping on the
/// saddle gap `gx.(x - sx) + gy.(sy - y)`.
pub fn solve_block_spfw(
    sp: &BlockSubproblem,
    start_x: &[f64],
    start_y: &[f64],
    max_iters: usize,
    tol: f64,
) -> Result<BlockSolution> {
    let mut x = sp.local_a.project(start_x)?;
    let mut y = sp.local_b.project(start_y)?;
    let mut gap = 0.0;
    for k in 0..max_iters {
        let gx = sp.grad_x(&x, &y);
        let gy = sp.grad_y(&x, &y);
        let sx = lmo(sp.local_a, &gx)?;
        let neg_gy: Vec<f64> = gy.iter().map(|v| -v).collect();
        let sy = lmo(sp.local_b, &neg_gy)?;
        gap = vecmath::dot(&gx, &x) - vecmath::dot(&gx, &sx) + vecmath::dot(&gy, &sy)
            - vecmath::dot(&gy, &y);
        if gap <= tol {
            return Ok(BlockSolution { x, y, iterations: k, certificate: gap });
        }
        let gamma = 2.0 / (2.0 + k as f64);
        for j in 0..x.len() {
            x[j] += gamma * (sx[j] - x[j]);
        }
        for j in 0..y.len() {
            y[j] += gamma * (sy[j] - y[j]);
        }
    }
    Ok(BlockSolution { x, y, iterations: max_iters, certificate: gap })
}

/// Projected extragradient on the augmented block objective. `step = None`
/// selects `1/(2 L)` with `L` estimated by sampling gradient differences at
/// random feasible pairs (fixed internal seed, so runs are reproducible).
pub fn solve_block_extragradient(
    sp: &BlockSubproblem,
    start_x: &[f64],
    start_y: &[f64],
    step: Option<f64>,
    max_iters: usize,
    tol: f64,
) -> Result<BlockSolution> {
    let mut x = sp.local_a.project(start_x)?;
    let mut y = sp.local_b.project(start_y)?;
    let tau = match step {
        Some(t) => t,
        None => 0.5 / estimate_lipschitz(sp, &x, &y)?.max(1e-12),
    };
    let mut change = 0.0;
    for k in 0..max_iters {
        let gx = sp.grad_x(&x, &y);
        let gy = sp.grad_y(&x, &y);
        let xh = sp.local_a.project(&stepped(&x, &gx, -tau))?;
        let yh = sp.local_b.project(&stepped(&y, &gy, tau))?;
        let gxh = sp.grad_x(&xh, &yh);
        let gyh = sp.grad_y(&xh, &yh);
        let xn = sp.local_a.project(&stepped(&x, &gxh, -tau))?;
        let yn = sp.local_b.project(&stepped(&y, &gyh, tau))?;
        change = (vecmath::dist2(&xn, &x).powi(2) + vecmath::dist2(&yn, &y).powi(2)).sqrt();
        x = xn;
        y = yn;
        if change <= tol {
            return Ok(BlockSolution { x, y, iterations: k + 1, certificate: change });
        }
    }
    Ok(BlockSolution { x, y, iterations: max_iters, certificate: change })
}

fn stepped(v: &[f64], g: &[f64], scale: f64) -> Vec<f64> {
    let mut out = v.to_vec();
    vecmath::axpy(&mut out, scale, g);
    out
}

/// Largest ratio `||G(w) - G(w')|| / ||w - w'||` over sampled feasible
/// pairs, where `G = (grad_x, -grad_y)` is the saddle operator. The penalty
/// terms alone contribute at least `min(rho_a, rho_b)`, so the estimate is
/// bounded away from zero for valid configurations.
fn estimate_lipschitz(sp: &BlockSubproblem, x0: &[f64], y0: &[f64]) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b9);
    let radius_x = 1.0 + vecmath::norm2(x0);
    let radius_y = 1.0 + vecmath::norm2(y0);
    let sample = |rng: &mut ChaCha8Rng| -> Result<(Vec<f64>, Vec<f64>)> {
        let px: Vec<f64> =
            x0.iter().map(|v| v + radius_x * rng.random_range(-1.0..1.0)).collect();
        let py: Vec<f64> =
            y0.iter().map(|v| v + radius_y * rng.random_range(-1.0..1.0)).collect();
        Ok((sp.local_a.project(&px)?, sp.local_b.project(&py)?))
    };
    let mut best = sp.rho_a.max(sp.rho_b).max(0.0);
    for _ in 0..16 {
        let (xa, ya) = sample(&mut rng)?;
        let (xb, yb) = sample(&mut rng)?;
        let dw = (vecmath::dist2(&xa, &xb).powi(2) + vecmath::dist2(&ya, &yb).powi(2)).sqrt();
        if dw < 1e-12 {
            continue;
        }
        let gxa = sp.grad_x(&xa, &ya);
        let gya = sp.grad_y(&xa, &ya);
        let gxb = sp.grad_x(&xb, &yb);
        let gyb = sp.grad_y(&xb, &yb);
        let dg = (vecmath::dist2(&gxa, &gxb).powi(2) + vecmath::dist2(&gya, &gyb).powi(2)).sqrt();
        best = best.max(dg / dw);
    }
    Ok(best)
}

/// Runs the configured sub-solver. The start point seeds the iterative
/// solvers and is ignored by the closed form.
pub fn solve_block(
    sp: &BlockSubproblem,
    kind: BlockSolverKind,
    start_x: &[f64],
    start_y: &[f64],
    tol: f64,
    max_iters: usize,
    extragradient_step: Option<f64>,
) -> Result<BlockSolution> {
    match kind {
        BlockSolverKind::Analytic => solve_block_analytic(sp),
        BlockSolverKind::Spfw => solve_block_spfw(sp, start_x, start_y, max_iters, tol),
        BlockSolverKind::Extragradient => {
            solve_block_extragradient(sp, start_x, start_y, extragradient_step, max_iters, tol)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::BilinearQuadratic;

    fn interval(lo: f64, hi: f64) -> ConvexSet {
        ConvexSet::box_set(vec![lo], vec![hi]).unwrap()
    }

    struct Fixture {
        objective: BlockObjective,
        local_a: ConvexSet,
        local_b: ConvexSet,
        z_a: Vec<f64>,
        z_b: Vec<f64>,
        lambda_a: Vec<f64>,
        lambda_b: Vec<f64>,
    }

    impl Fixture {
        fn bilinear(q: BilinearQuadratic, bounds: (f64, f64)) -> Fixture {
            Fixture {
                objective: BlockObjective::bilinear_quadratic(q, 1, 1).unwrap(),
                local_a: interval(bounds.0, bounds.1),
                local_b: interval(bounds.0, bounds.1),
                z_a: vec![0.0],
                z_b: vec![0.0],
                lambda_a: vec![0.0],
                lambda_b: vec![0.0],
            }
        }

        fn sub(&self, rho_a: f64, rho_b: f64) -> BlockSubproblem<'_> {
            BlockSubproblem {
                objective: &self.objective,
                local_a: &self.local_a,
                local_b: &self.local_b,
                z_a: &self.z_a,
                z_b: &self.z_b,
                lambda_a: &self.lambda_a,
                lambda_b: &self.lambda_b,
                rho_a,
                rho_b,
            }
        }
    }

    #[test]
    fn pure_bilinear_saddle_is_origin() {
        let f = Fixture::bilinear(
            BilinearQuadratic { cross: 1.0, ..Default::default() },
            (-1.0, 1.0),
        );
        let s = solve_block_analytic(&f.sub(1.0, 1.0)).unwrap();
        assert!(s.x[0].abs() < 1e-12 && s.y[0].abs() < 1e-12, "{s:?}");
    }

    #[test]
    fn pinned_maximizer_face() {
        // f = xy; the -lambda_b . y term with lambda_b = 3 pulls y to its
        // lower bound.
        let mut f = Fixture::bilinear(
            BilinearQuadratic { cross: 1.0, ..Default::default() },
            (-1.0, 1.0),
        );
        f.lambda_b = vec![3.0];
        let sp = f.sub(1.0, 1.0);
        let s = solve_block_analytic(&sp).unwrap();
        assert!((s.y[0] + 1.0).abs() < 1e-12, "{s:?}");
        // With y pinned at -1, minimizing x^2/2 + xy gives x = 1.
        assert!((s.x[0] - 1.0).abs() < 1e-12, "{s:?}");
    }

    #[test]
    fn degenerate_sides_clip() {
        let q = BilinearQuadratic { quad_x: 1.0, lin_x: -4.0, ..Default::default() };
        let objective = BlockObjective::bilinear_quadratic(q, 1, 0).unwrap();
        let empty = ConvexSet::box_set(vec![], vec![]).unwrap();
        let local_a = interval(0.0, 1.0);
        let sp = BlockSubproblem {
            objective: &objective,
            local_a: &local_a,
            local_b: &empty,
            z_a: &[0.0],
            z_b: &[],
            lambda_a: &[0.0],
            lambda_b: &[],
            rho_a: 1.0,
            rho_b: 1.0,
        };
        // Unconstrained minimizer of x^2/2 - 4x + x^2/2 sits at 2; the box clips to 1.
        let s = solve_block_analytic(&sp).unwrap();
        assert_eq!(s.x, vec![1.0]);
        assert_eq!(s.y, Vec::<f64>::new());
    }

    #[test]
    fn iterative_solvers_agree_with_closed_form() {
        let mut f = Fixture::bilinear(
            BilinearQuadratic {
                quad_x: 0.7,
                quad_y: 0.4,
                cross: -1.3,
                lin_x: 0.2,
                lin_y: -0.5,
                constant: 2.0,
            },
            (-2.0, 2.0),
        );
        f.z_a = vec![0.4];
        f.z_b = vec![-0.3];
        f.lambda_a = vec![-0.1];
        f.lambda_b = vec![0.25];
        let sp = f.sub(0.8, 1.1);
        let exact = solve_block_analytic(&sp).unwrap();
        let fw = solve_block_spfw(&sp, &[0.0], &[0.0], 200_000, 1e-10).unwrap();
        let eg = solve_block_extragradient(&sp, &[0.0], &[0.0], None, 50_000, 1e-12).unwrap();
        assert!((exact.x[0] - fw.x[0]).abs() < 1e-3, "fw {:?} vs {:?}", fw.x, exact.x);
        assert!((exact.y[0] - fw.y[0]).abs() < 1e-3, "fw {:?} vs {:?}", fw.y, exact.y);
        assert!((exact.x[0] - eg.x[0]).abs() < 1e-8, "eg {:?} vs {:?}", eg.x, exact.x);
        assert!((exact.y[0] - eg.y[0]).abs() < 1e-8, "eg {:?} vs {:?}", eg.y, exact.y);
    }

    #[test]
    fn analytic_rejects_smooth_blocks() {
        let objective = BlockObjective::log_capacity(1.0).unwrap();
        let local_a = interval(0.0, 1.0);
        let local_b = interval(0.0, 1.0);
        let sp = BlockSubproblem {
            objective: &objective,
            local_a: &local_a,
            local_b: &local_b,
            z_a: &[0.0],
            z_b: &[0.0],
            lambda_a: &[0.0],
            lambda_b: &[0.0],
            rho_a: 1.0,
            rho_b: 1.0,
        };
        assert!(matches!(solve_block_analytic(&sp), Err(Error::Misuse(_))));
        // The iterative solvers handle it fine.
        let s = solve_block_extragradient(&sp, &[0.5], &[0.5], None, 20_000, 1e-10).unwrap();
        assert!(s.certificate <= 1e-10);
    }

    #[test]
    fn gradients_of_subproblem_include_penalty() {
        let f = Fixture::bilinear(
            BilinearQuadratic { cross: 1.0, ..Default::default() },
            (-1.0, 1.0),
        );
        let sp = f.sub(2.0, 3.0);
        // d/dx [xy + 2/2 (x-0)^2] at (1, 0.5) = 0.5 + 2.
        let gx = sp.grad_x(&[1.0], &[0.5]);
        assert!((gx[0] - 2.5).abs() < 1e-12);
        // d/dy [xy] - 3(y - 0) at (1, 0.5) = 1 - 1.5.
        let gy = sp.grad_y(&[1.0], &[0.5]);
        assert!((gy[0] + 0.5).abs() < 1e-12);
    }
}
