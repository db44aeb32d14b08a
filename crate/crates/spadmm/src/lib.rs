//! Splitting-based solver toolkit for block-decomposable convex-concave
//! saddle-point problems.
//!
//! The problems take the form
//!
//! ```text
//!   min        max        sum_i f_i(x_{a,i}, x_{b,i})
//!  x_a in X_a x_b in X_b
//! ```
//!
//! with each `f_i` convex in its minimizer block and concave in its
//! maximizer block, per-block local constraint sets, and one coupling set
//! per player over the concatenated variables. The main driver alternates
//! independent per-block saddle solves with projections onto the coupling
//! sets and multiplier updates; a projection-free Frank-Wolfe iteration over
//! the full problem is included as a baseline, and a best-response bracket
//! provides computable optimality certificates for either.
//!
//! Entry points:
//! - [`driver::solve`] runs the splitting method on a [`problem::SaddleProblem`].
//! - [`spfw::solve`] runs the Frank-Wolfe baseline on the same problem.
//! - [`diagnostics::saddle_certificate`] brackets the equilibrium value of a
//!   candidate point.
//! - [`benchmarks`] builds the two bundled problem families.
//!
//! The `examples/` directory has one runnable program per capability; the
//! `spadmm` binary exposes the same flows as `solve` and `compare`
//! subcommands.

pub mod benchmarks;
pub mod blocks;
pub mod cli;
pub mod defaults;
pub mod dense;
pub mod diagnostics;
pub mod driver;
pub mod error;
pub mod lp;
pub mod problem;
pub mod sets;
pub mod spfw;
pub mod trace;
pub mod vecmath;

pub use error::{Error, Result};
pub use problem::{
    BilinearQuadratic, BlockFunction, BlockObjective, BlockOracle, BlockSolverKind, InitMode,
    IterateState, ProblemSpec, SaddleProblem, SolverConfig,
};
pub use sets::{ConvexSet, Dykstra, SetSpec};
