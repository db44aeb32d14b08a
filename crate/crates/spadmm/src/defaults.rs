//! Default tolerances and iteration budgets, collected in one place so that
//! every hard-coded number in the solver has a single auditable home.
//!
//! Values were chosen for double precision arithmetic on desk-scale problems
//! (tens of blocks, hundreds of coupled variables). Loosening a projection or
//! sub-solver tolerance below the outer stopping thresholds makes the outer
//! loop chase noise, so the inner budgets here sit two or more orders of
//! magnitude below the outer ones.

/// Outer stopping threshold on ||r_a|| + ||r_b|| (primal residual).
pub const EPS_PRIMAL: f64 = 1e-6;
/// Outer stopping threshold on ||s_a|| + ||s_b|| (scaled dual residual).
pub const EPS_DUAL: f64 = 1e-6;
/// Outer iteration cap.
pub const MAX_ITERS: usize = 10_000;

/// Per-block sub-solver termination (Frank-Wolfe gap or extragradient step).
pub const BLOCK_TOL: f64 = 1e-8;
/// Per-block sub-solver iteration cap.
pub const BLOCK_MAX_ITERS: usize = 10_000;

/// Error target for cyclic (Dykstra) projections: the rate-aware stopping
/// rule bounds the distance to the true projection by this, not just the
/// last per-cycle change.
pub const DYKSTRA_TOL: f64 = 1e-10;
/// Cycle cap for cyclic projections; hitting it is reported as an error.
/// Generous because each cycle is a handful of closed-form maps: shallow
/// angles between stages give contraction ratios near 1, and only genuinely
/// empty intersections should trip the cap.
pub const DYKSTRA_MAX_CYCLES: usize = 100_000;
/// Pivot threshold below which equality rows count as redundant.
pub const RANK_TOL: f64 = 1e-10;

/// Feasibility / optimality tolerance inside the simplex method.
pub const LP_TOL: f64 = 1e-9;
/// Simplex pivot cap; Bland's rule prevents cycling, this bounds stalling.
pub const LP_MAX_PIVOTS: usize = 1_000_000;

/// Projected-gradient mapping threshold for best responses.
pub const BEST_RESPONSE_TOL: f64 = 1e-7;
/// Iteration cap for best-response solves.
pub const BEST_RESPONSE_MAX_ITERS: usize = 50_000;
/// Backtracking shrink factor for the Armijo line search.
pub const ARMIJO_BETA: f64 = 0.5;
/// Sufficient-decrease constant for the Armijo line search.
pub const ARMIJO_C: f64 = 1e-4;

/// Compute the optimality-gap bracket every this many outer iterations.
pub const GAP_EVERY: usize = 10;

/// Default absolute tolerance for set membership queries.
pub const MEMBERSHIP_TOL: f64 = 1e-8;
