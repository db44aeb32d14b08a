//! Problem model for block-decomposable convex-concave games
//!
//! ```text
//!   min   max   sum_i f_i(x_{a,i}, x_{b,i})
//!  x_a   x_b
//! ```
//!
//! where each block pair is confined to local sets and the concatenated
//! vectors to global coupling sets `X_a`, `X_b`. Each `f_i` must be convex in
//! the minimizer's block and concave in the maximizer's block.
//!
//! The splitting reformulation carries copies `z_a in X_a`, `z_b in X_b` tied
//! to the block variables by multipliers, giving the Lagrangian
//!
//! ```text
//!   L = sum_i f_i + lambda_a . (x_a - z_a) - lambda_b . (x_b - z_b)
//! ```
//!
//! and its augmented variant with `+ (rho_a/2)||x_a - z_a||^2
//! - (rho_b/2)||x_b - z_b||^2`. Infeasible indicator terms evaluate to the
//! IEEE infinities of the matching sign.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::error::{Error, Result};
use crate::sets::{ConvexSet, SetSpec};
use crate::vecmath;

/// Gradient oracles for a custom smooth block objective. Implementations
/// must be convex in `x` and concave in `y` on the block's local sets.
pub trait BlockOracle: Send + Sync {
    fn eval(&self, x: &[f64], y: &[f64]) -> f64;
    fn grad_x(&self, x: &[f64], y: &[f64]) -> Vec<f64>;
    fn grad_y(&self, x: &[f64], y: &[f64]) -> Vec<f64>;
}

/// Coefficients of a one-dimensional bilinear-quadratic block
///
/// ```text
///   f(x, y) = quad_x/2 x^2 - quad_y/2 y^2 + cross x y
///             + lin_x x + lin_y y + constant
/// ```
///
/// with `quad_x >= 0` and `quad_y >= 0` (convex-concave). Blocks missing one
/// player simply drop that player's terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BilinearQuadratic {
    #[serde(default)]
    pub quad_x: f64,
    #[serde(default)]
    pub quad_y: f64,
    #[serde(default)]
    pub cross: f64,
    #[serde(default)]
    pub lin_x: f64,
    #[serde(default)]
    pub lin_y: f64,
    #[serde(default)]
    pub constant: f64,
}

impl Default for BilinearQuadratic {
    fn default() -> Self {
        BilinearQuadratic {
            quad_x: 0.0,
            quad_y: 0.0,
            cross: 0.0,
            lin_x: 0.0,
            lin_y: 0.0,
            constant: 0.0,
        }
    }
}

impl BilinearQuadratic {
    fn validate(&self) -> Result<()> {
        if self.quad_x < 0.0 || self.quad_y < 0.0 {
            return Err(Error::Invalid {
                what: "bilinear-quadratic block",
                why: format!(
                    "quad_x and quad_y must be nonnegative for convex-concavity \
                     (got {}, {})",
                    self.quad_x, self.quad_y
                ),
            });
        }
        Ok(())
    }
}

#[derive(Clone)]
pub enum BlockFunction {
    BilinearQuadratic(BilinearQuadratic),
    /// `f(x, y) = ln(1 + y / (sigma + x))`, the capacity of a channel with
    /// base noise `sigma`, interference `x`, and signal power `y`.
    LogCapacity { sigma: f64 },
    Custom(Arc<dyn BlockOracle>),
}

impl fmt::Debug for BlockFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockFunction::BilinearQuadratic(q) => write!(f, "BilinearQuadratic({q:?})"),
            BlockFunction::LogCapacity { sigma } => write!(f, "LogCapacity {{ sigma: {sigma} }}"),
            BlockFunction::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    BilinearQuadratic,
    SmoothGeneral,
}

/// One block objective with its player dimensions.
#[derive(Debug, Clone)]
pub struct BlockObjective {
    pub function: BlockFunction,
    pub dim_a: usize,
    pub dim_b: usize,
}

impl BlockObjective {
    pub fn bilinear_quadratic(q: BilinearQuadratic, dim_a: usize, dim_b: usize) -> Result<Self> {
        q.validate()?;
        if dim_a > 1 || dim_b > 1 {
            return Err(Error::Invalid {
                what: "bilinear-quadratic block",
                why: format!("blocks are one-dimensional per player, got {dim_a}x{dim_b}"),
            });
        }
        Ok(BlockObjective { function: BlockFunction::BilinearQuadratic(q), dim_a, dim_b })
    }

    pub fn log_capacity(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::Invalid {
                what: "log-capacity block",
                why: format!("sigma must be positive, got {sigma}"),
            });
        }
        Ok(BlockObjective { function: BlockFunction::LogCapacity { sigma }, dim_a: 1, dim_b: 1 })
    }

    pub fn custom(oracle: Arc<dyn BlockOracle>, dim_a: usize, dim_b: usize) -> Self {
        BlockObjective { function: BlockFunction::Custom(oracle), dim_a, dim_b }
    }

    pub fn kind(&self) -> BlockKind {
        match self.function {
            BlockFunction::BilinearQuadratic(_) => BlockKind::BilinearQuadratic,
            _ => BlockKind::SmoothGeneral,
        }
    }

    pub fn bilinear(&self) -> Option<&BilinearQuadratic> {
        match &self.function {
            BlockFunction::BilinearQuadratic(q) => Some(q),
            _ => None,
        }
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim_a);
        debug_assert_eq!(y.len(), self.dim_b);
        match &self.function {
            BlockFunction::BilinearQuadratic(q) => {
                let xv = x.first().copied().unwrap_or(0.0);
                let yv = y.first().copied().unwrap_or(0.0);
                let mut v = q.constant;
                if !x.is_empty() {
                    v += 0.5 * q.quad_x * xv * xv + q.lin_x * xv;
                }
                if !y.is_empty() {
                    v += -0.5 * q.quad_y * yv * yv + q.lin_y * yv;
                }
                if !x.is_empty() && !y.is_empty() {
                    v += q.cross * xv * yv;
                }
                v
            }
            BlockFunction::LogCapacity { sigma } => {
                let (xv, yv) = (x[0], y[0]);
                debug_assert!(sigma + xv > 0.0, "log-capacity outside its domain");
                (sigma + xv + yv).ln() - (sigma + xv).ln()
            }
            BlockFunction::Custom(o) => o.eval(x, y),
        }
    }

    pub fn grad_x(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.dim_a);
        debug_assert_eq!(y.len(), self.dim_b);
        match &self.function {
            BlockFunction::BilinearQuadratic(q) => {
                if x.is_empty() {
                    return Vec::new();
                }
                let xv = x[0];
                let yv = y.first().copied().unwrap_or(0.0);
                let cross = if y.is_empty() { 0.0 } else { q.cross * yv };
                vec![q.quad_x * xv + cross + q.lin_x]
            }
            BlockFunction::LogCapacity { sigma } => {
                let (xv, yv) = (x[0], y[0]);
                vec![1.0 / (sigma + xv + yv) - 1.0 / (sigma + xv)]
            }
            BlockFunction::Custom(o) => o.grad_x(x, y),
        }
    }

    pub fn grad_y(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.dim_a);
        debug_assert_eq!(y.len(), self.dim_b);
        match &self.function {
            BlockFunction::BilinearQuadratic(q) => {
                if y.is_empty() {
                    return Vec::new();
                }
                let yv = y[0];
                let xv = x.first().copied().unwrap_or(0.0);
                let cross = if x.is_empty() { 0.0 } else { q.cross * xv };
                vec![-q.quad_y * yv + cross + q.lin_y]
            }
            BlockFunction::LogCapacity { sigma } => {
                let (xv, yv) = (x[0], y[0]);
                vec![1.0 / (sigma + xv + yv)]
            }
            BlockFunction::Custom(o) => o.grad_y(x, y),
        }
    }
}

/// A block-decomposable saddle-point problem: blocks, per-block local sets,
/// and one coupling set per player over the concatenated coordinates.
#[derive(Debug, Clone)]
pub struct SaddleProblem {
    blocks: Vec<BlockObjective>,
    local_a: Vec<ConvexSet>,
    local_b: Vec<ConvexSet>,
    global_a: ConvexSet,
    global_b: ConvexSet,
    offsets_a: Vec<usize>,
    offsets_b: Vec<usize>,
}

impl SaddleProblem {
    pub fn new(
        blocks: Vec<BlockObjective>,
        local_a: Vec<ConvexSet>,
        local_b: Vec<ConvexSet>,
        global_a: ConvexSet,
        global_b: ConvexSet,
    ) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Invalid { what: "problem", why: "needs at least one block".into() });
        }
        if local_a.len() != blocks.len() || local_b.len() != blocks.len() {
            return Err(Error::DimMismatch {
                context: "local sets per block",
                expected: blocks.len(),
                got: local_a.len().min(local_b.len()),
            });
        }
        let mut offsets_a = vec![0usize];
        let mut offsets_b = vec![0usize];
        for (i, blk) in blocks.iter().enumerate() {
            if local_a[i].dim() != blk.dim_a {
                return Err(Error::DimMismatch {
                    context: "minimizer local set",
                    expected: blk.dim_a,
                    got: local_a[i].dim(),
                });
            }
            if local_b[i].dim() != blk.dim_b {
                return Err(Error::DimMismatch {
                    context: "maximizer local set",
                    expected: blk.dim_b,
                    got: local_b[i].dim(),
                });
            }
            offsets_a.push(offsets_a[i] + blk.dim_a);
            offsets_b.push(offsets_b[i] + blk.dim_b);
        }
        let (da, db) = (*offsets_a.last().unwrap(), *offsets_b.last().unwrap());
        if global_a.dim() != da {
            return Err(Error::DimMismatch {
                context: "minimizer coupling set",
                expected: da,
                got: global_a.dim(),
            });
        }
        if global_b.dim() != db {
            return Err(Error::DimMismatch {
                context: "maximizer coupling set",
                expected: db,
                got: global_b.dim(),
            });
        }
        Ok(SaddleProblem { blocks, local_a, local_b, global_a, global_b, offsets_a, offsets_b })
    }

    /// Minimization-only problem: the maximizer is absent (all of its block
    /// dimensions are zero).
    pub fn minimization(
        blocks: Vec<BlockObjective>,
        local_a: Vec<ConvexSet>,
        global_a: ConvexSet,
    ) -> Result<Self> {
        let n = blocks.len();
        for (i, b) in blocks.iter().enumerate() {
            if b.dim_b != 0 {
                return Err(Error::Misuse(format!(
                    "minimization problem requires dim_b = 0 in every block; block {i} has {}",
                    b.dim_b
                )));
            }
        }
        let empty = ConvexSet::box_set(vec![], vec![])?;
        SaddleProblem::new(blocks, local_a, vec![empty.clone(); n], global_a, empty)
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn dim_a(&self) -> usize {
        *self.offsets_a.last().unwrap()
    }

    pub fn dim_b(&self) -> usize {
        *self.offsets_b.last().unwrap()
    }

    pub fn blocks(&self) -> &[BlockObjective] {
        &self.blocks
    }

    pub fn local_a(&self, i: usize) -> &ConvexSet {
        &self.local_a[i]
    }

    pub fn local_b(&self, i: usize) -> &ConvexSet {
        &self.local_b[i]
    }

    pub fn local_sets_a(&self) -> &[ConvexSet] {
        &self.local_a
    }

    pub fn local_sets_b(&self) -> &[ConvexSet] {
        &self.local_b
    }

    pub fn global_a(&self) -> &ConvexSet {
        &self.global_a
    }

    pub fn global_b(&self) -> &ConvexSet {
        &self.global_b
    }

    pub fn offset_a(&self, i: usize) -> usize {
        self.offsets_a[i]
    }

    pub fn offset_b(&self, i: usize) -> usize {
        self.offsets_b[i]
    }

    pub fn slice_a<'v>(&self, i: usize, v: &'v [f64]) -> &'v [f64] {
        &v[self.offsets_a[i]..self.offsets_a[i + 1]]
    }

    pub fn slice_b<'v>(&self, i: usize, v: &'v [f64]) -> &'v [f64] {
        &v[self.offsets_b[i]..self.offsets_b[i + 1]]
    }

    /// `sum_i f_i`, accumulated in ascending block order so the result is
    /// reproducible across runs and worker counts.
    pub fn total_objective(&self, x_a: &[f64], x_b: &[f64]) -> f64 {
        debug_assert_eq!(x_a.len(), self.dim_a());
        debug_assert_eq!(x_b.len(), self.dim_b());
        let mut total = 0.0;
        for i in 0..self.blocks.len() {
            total += self.blocks[i].eval(self.slice_a(i, x_a), self.slice_b(i, x_b));
        }
        total
    }

    /// Gradient of the total objective in the minimizer's variables.
    pub fn grad_a(&self, x_a: &[f64], x_b: &[f64]) -> Vec<f64> {
        let mut g = Vec::with_capacity(self.dim_a());
        for i in 0..self.blocks.len() {
            g.extend(self.blocks[i].grad_x(self.slice_a(i, x_a), self.slice_b(i, x_b)));
        }
        g
    }

    /// Gradient of the total objective in the maximizer's variables.
    pub fn grad_b(&self, x_a: &[f64], x_b: &[f64]) -> Vec<f64> {
        let mut g = Vec::with_capacity(self.dim_b());
        for i in 0..self.blocks.len() {
            g.extend(self.blocks[i].grad_y(self.slice_a(i, x_a), self.slice_b(i, x_b)));
        }
        g
    }

    /// Lagrangian of the splitting reformulation. Indicator terms map
    /// infeasibility to `+inf` (minimizer side takes precedence) or `-inf`
    /// (maximizer side).
    pub fn lagrangian(&self, s: &IterateState) -> f64 {
        let tol = defaults::MEMBERSHIP_TOL;
        let min_side_feasible = self.global_a.contains(&s.z_a, tol)
            && (0..self.num_blocks()).all(|i| self.local_a[i].contains(self.slice_a(i, &s.x_a), tol));
        if !min_side_feasible {
            return f64::INFINITY;
        }
        let max_side_feasible = self.global_b.contains(&s.z_b, tol)
            && (0..self.num_blocks()).all(|i| self.local_b[i].contains(self.slice_b(i, &s.x_b), tol));
        if !max_side_feasible {
            return f64::NEG_INFINITY;
        }
        self.total_objective(&s.x_a, &s.x_b)
            + vecmath::dot(&s.lambda_a, &vecmath::sub(&s.x_a, &s.z_a))
            - vecmath::dot(&s.lambda_b, &vecmath::sub(&s.x_b, &s.z_b))
    }

    /// Augmented Lagrangian: adds `+(rho_a/2)||x_a - z_a||^2` and
    /// `-(rho_b/2)||x_b - z_b||^2` to [`Self::lagrangian`]. With both
    /// penalties zero this equals the plain Lagrangian exactly.
    pub fn augmented_lagrangian(&self, s: &IterateState, cfg: &SolverConfig) -> f64 {
        let base = self.lagrangian(s);
        if !base.is_finite() {
            return base;
        }
        let pa = vecmath::dist2(&s.x_a, &s.z_a);
        let pb = vecmath::dist2(&s.x_b, &s.z_b);
        base + 0.5 * cfg.rho_a * pa * pa - 0.5 * cfg.rho_b * pb * pb
    }

    pub fn to_spec(&self) -> Result<ProblemSpec> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let function = match &b.function {
                BlockFunction::BilinearQuadratic(q) => BlockFunctionSpec::BilinearQuadratic(*q),
                BlockFunction::LogCapacity { sigma } => {
                    BlockFunctionSpec::LogCapacity { sigma: *sigma }
                }
                BlockFunction::Custom(_) => {
                    return Err(Error::Misuse(
                        "custom oracle blocks cannot be serialized".into(),
                    ))
                }
            };
            blocks.push(BlockSpec { function, dims: [b.dim_a, b.dim_b] });
        }
        Ok(ProblemSpec {
            blocks,
            local_sets_a: self.local_a.iter().map(|s| s.to_spec()).collect(),
            local_sets_b: self.local_b.iter().map(|s| s.to_spec()).collect(),
            global_set_a: self.global_a.to_spec(),
            global_set_b: self.global_b.to_spec(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let spec = self.to_spec()?;
        serde_json::to_string_pretty(&spec)
            .map_err(|e| Error::Config(format!("problem serialization: {e}")))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ProblemSpec =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("problem JSON: {e}")))?;
        spec.build()
    }
}

/// Iterates of the splitting method: block variables `x`, coupling copies
/// `z`, multipliers `lambda`, one triple per player, plus the iteration
/// counter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterateState {
    pub x_a: Vec<f64>,
    pub x_b: Vec<f64>,
    pub z_a: Vec<f64>,
    pub z_b: Vec<f64>,
    pub lambda_a: Vec<f64>,
    pub lambda_b: Vec<f64>,
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockSolverKind {
    /// Closed-form saddle of bilinear-quadratic blocks on intervals.
    Analytic,
    /// Saddle-point Frank-Wolfe on the augmented block objective.
    Spfw,
    /// Projected extragradient on the augmented block objective.
    Extragradient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitMode {
    /// `x = 0`, `z = project(global, x)`, `lambda = 0`.
    Zeros,
    /// `x = project(global, uniform)` with `uniform = (1/dim, ...)`,
    /// `z = x`, `lambda = 0`.
    UniformProjected,
}

/// Solver knobs, shared by the splitting driver and the Frank-Wolfe
/// baseline. Field names match the config-file keys and CLI flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Penalty weight on the minimizer's consensus constraint (`> 0`).
    pub rho_a: f64,
    /// Penalty weight on the maximizer's consensus constraint (`> 0`).
    pub rho_b: f64,
    pub eps_primal: f64,
    pub eps_dual: f64,
    pub max_iters: usize,
    pub block_solver: BlockSolverKind,
    pub block_solver_tol: f64,
    pub block_solver_max_iters: usize,
    /// Extragradient step size; `None` selects `1/(2*L)` with `L` estimated
    /// from sampled gradients.
    pub extragradient_step: Option<f64>,
    /// Start block sub-solves from the previous block iterate instead of the
    /// consensus point.
    pub warm_start_blocks: bool,
    pub init: InitMode,
    /// Compute the optimality-gap bracket every this many iterations
    /// (0 disables it).
    pub gap_every: usize,
    pub best_response_tol: f64,
    pub seed: u64,
    /// Worker threads for the per-block solves. Results are bitwise
    /// identical for any value.
    pub workers: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            rho_a: 1.0,
            rho_b: 1.0,
            eps_primal: defaults::EPS_PRIMAL,
            eps_dual: defaults::EPS_DUAL,
            max_iters: defaults::MAX_ITERS,
            block_solver: BlockSolverKind::Analytic,
            block_solver_tol: defaults::BLOCK_TOL,
            block_solver_max_iters: defaults::BLOCK_MAX_ITERS,
            extragradient_step: None,
            warm_start_blocks: true,
            init: InitMode::Zeros,
            gap_every: defaults::GAP_EVERY,
            best_response_tol: defaults::BEST_RESPONSE_TOL,
            seed: 0,
            workers: 1,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let positive: [(&str, f64); 6] = [
            ("rho_a", self.rho_a),
            ("rho_b", self.rho_b),
            ("eps_primal", self.eps_primal),
            ("eps_dual", self.eps_dual),
            ("block_solver_tol", self.block_solver_tol),
            ("best_response_tol", self.best_response_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config(format!("{name} must be a positive real, got {v}")));
            }
        }
        if let Some(step) = self.extragradient_step {
            if !(step > 0.0) || !step.is_finite() {
                return Err(Error::Config(format!(
                    "extragradient_step must be a positive real, got {step}"
                )));
            }
        }
        if self.max_iters == 0 {
            return Err(Error::Config("max_iters must be at least 1".into()));
        }
        if self.block_solver_max_iters == 0 {
            return Err(Error::Config("block_solver_max_iters must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        Ok(())
    }
}

/// Serializable problem description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub blocks: Vec<BlockSpec>,
    pub local_sets_a: Vec<SetSpec>,
    pub local_sets_b: Vec<SetSpec>,
    pub global_set_a: SetSpec,
    pub global_set_b: SetSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockSpec {
    #[serde(flatten)]
    pub function: BlockFunctionSpec,
    /// `[dim_a, dim_b]`.
    pub dims: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum BlockFunctionSpec {
    BilinearQuadratic(BilinearQuadratic),
    LogCapacity { sigma: f64 },
}

impl ProblemSpec {
    pub fn build(&self) -> Result<SaddleProblem> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for spec in &self.blocks {
            let [da, db] = spec.dims;
            let block = match &spec.function {
                BlockFunctionSpec::BilinearQuadratic(q) => {
                    BlockObjective::bilinear_quadratic(*q, da, db)?
                }
                BlockFunctionSpec::LogCapacity { sigma } => {
                    let b = BlockObjective::log_capacity(*sigma)?;
                    if da != 1 || db != 1 {
                        return Err(Error::Invalid {
                            what: "log-capacity block",
                            why: format!("dims must be [1, 1], got [{da}, {db}]"),
                        });
                    }
                    b
                }
            };
            blocks.push(block);
        }
        let build_all = |specs: &[SetSpec]| -> Result<Vec<ConvexSet>> {
            specs.iter().map(|s| s.build()).collect()
        };
        SaddleProblem::new(
            blocks,
            build_all(&self.local_sets_a)?,
            build_all(&self.local_sets_b)?,
            self.global_set_a.build()?,
            self.global_set_b.build()?,
        )
    }
}

/// Compares analytic block gradients against central finite differences at
/// the given points. Returns the worst relative error observed; useful as a
/// model-validation step for custom oracles.
pub fn max_gradient_error(
    p: &SaddleProblem,
    points: &[(Vec<f64>, Vec<f64>)],
    h: f64,
) -> f64 {
    let mut worst: f64 = 0.0;
    for (xa, xb) in points {
        let ga = p.grad_a(xa, xb);
        let gb = p.grad_b(xa, xb);
        for j in 0..xa.len() {
            let hj = h * xa[j].abs().max(1.0);
            let mut hi = xa.clone();
            let mut lo = xa.clone();
            hi[j] += hj;
            lo[j] -= hj;
            let fd = (p.total_objective(&hi, xb) - p.total_objective(&lo, xb)) / (2.0 * hj);
            worst = worst.max((fd - ga[j]).abs() / ga[j].abs().max(1.0));
        }
        for j in 0..xb.len() {
            let hj = h * xb[j].abs().max(1.0);
            let mut hi = xb.clone();
            let mut lo = xb.clone();
            hi[j] += hj;
            lo[j] -= hj;
            let fd = (p.total_objective(xa, &hi) - p.total_objective(xa, &lo)) / (2.0 * hj);
            worst = worst.max((fd - gb[j]).abs() / gb[j].abs().max(1.0));
        }
    }
    worst
}
