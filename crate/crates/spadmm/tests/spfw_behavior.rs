//! Baseline contract: exact step schedule, feasibility of iterates, gap
//! behavior on a bilinear toy, immediate exit at a saddle start, and the
//! infeasible-intersection setup error.

mod common;

use spadmm::benchmarks::{build_power_allocation, default_config_power, PowerAllocationSpec};
use spadmm::driver::Termination;
use spadmm::problem::{
    BilinearQuadratic, BlockObjective, InitMode, SaddleProblem, SolverConfig,
};
use spadmm::sets::ConvexSet;
use spadmm::spfw::{spfw_solve, step_size};

#[test]
fn step_schedule_is_two_over_two_plus_k() {
    assert_eq!(step_size(0), 1.0);
    for k in 0..200 {
        assert_eq!(step_size(k), 2.0 / (2.0 + k as f64));
    }
}

fn toy_game(q: BilinearQuadratic) -> SaddleProblem {
    let blocks = vec![BlockObjective::bilinear_quadratic(q, 1, 1).unwrap()];
    let interval = || ConvexSet::box_set(vec![-1.0], vec![1.0]).unwrap();
    SaddleProblem::new(blocks, vec![interval()], vec![interval()], interval(), interval())
        .unwrap()
}

#[test]
fn iterates_stay_feasible_on_power_allocation() {
    let p = build_power_allocation(&PowerAllocationSpec::standard()).unwrap();
    let cfg = SolverConfig {
        max_iters: 500,
        eps_primal: 1e-300,
        gap_every: 0,
        ..default_config_power()
    };
    let out = spfw_solve(&p, &cfg, 50).unwrap();
    assert_eq!(out.termination, Termination::IterationCap);
    assert!(p.global_a().contains(&out.state.x_a, 1e-8));
    assert!(p.global_b().contains(&out.state.x_b, 1e-8));
    for i in 0..p.num_blocks() {
        assert!(p.local_a(i).contains(p.slice_a(i, &out.state.x_a), 1e-8));
        assert!(p.local_b(i).contains(p.slice_b(i, &out.state.x_b), 1e-8));
    }
}

#[test]
fn bilinear_toy_stays_bounded_and_bracket_tightens() {
    // Pure bilinear x * y on [-1,1]^2: the last iterate orbits the origin
    // saddle, but the running bracket over visited pairs closes on the
    // equilibrium value 0.
    let p = toy_game(BilinearQuadratic { cross: 1.0, ..Default::default() });
    let cfg = SolverConfig {
        max_iters: 4000,
        eps_primal: 1e-300,
        gap_every: 10,
        init: InitMode::UniformProjected,
        ..SolverConfig::default()
    };
    let out = spfw_solve(&p, &cfg, 10).unwrap();
    assert!(out.state.x_a[0].abs() <= 1.0 + 1e-12);
    assert!(out.state.x_b[0].abs() <= 1.0 + 1e-12);
    let (lower, upper) = out.bracket.expect("gap bracket enabled");
    eprintln!("toy bracket after {} iterations: [{lower}, {upper}]", out.state.k);
    assert!(lower <= 0.0 + 1e-9 && 0.0 <= upper + 1e-9, "bracket excludes the equilibrium");
    assert!(upper - lower <= 0.1, "bracket failed to tighten: width {}", upper - lower);
}

#[test]
fn saddle_start_exits_with_tiny_gap() {
    // Strongly convex-concave with the saddle at the origin, which is also
    // the Zeros start: the very first gap check passes.
    let p = toy_game(BilinearQuadratic {
        quad_x: 2.0,
        quad_y: 2.0,
        cross: 1.0,
        ..Default::default()
    });
    let cfg = SolverConfig {
        eps_primal: 1e-8,
        gap_every: 0,
        init: InitMode::Zeros,
        ..SolverConfig::default()
    };
    let out = spfw_solve(&p, &cfg, 1).unwrap();
    assert_eq!(out.termination, Termination::Converged);
    assert_eq!(out.state.k, 1);
    assert_eq!(out.state.x_a[0], 0.0);
    assert_eq!(out.state.x_b[0], 0.0);
    assert!(out.trace.last().unwrap().objective.abs() <= 1e-12);
}

#[test]
fn disjoint_intersection_is_a_setup_error() {
    // Locals [2,3] x [2,3] cannot meet the unit simplex, so the baseline
    // must fail during setup rather than iterate.
    let q = BilinearQuadratic { cross: 1.0, ..Default::default() };
    let blocks = vec![
        BlockObjective::bilinear_quadratic(q.clone(), 1, 1).unwrap(),
        BlockObjective::bilinear_quadratic(q, 1, 1).unwrap(),
    ];
    let far = || ConvexSet::box_set(vec![2.0], vec![3.0]).unwrap();
    let near = || ConvexSet::box_set(vec![0.0], vec![1.0]).unwrap();
    let p = SaddleProblem::new(
        blocks,
        vec![far(), far()],
        vec![near(), near()],
        ConvexSet::scaled_simplex(1.0, 2).unwrap(),
        ConvexSet::scaled_simplex(1.0, 2).unwrap(),
    )
    .unwrap();
    let err = spfw_solve(&p, &SolverConfig::default(), 1).unwrap_err();
    assert_eq!(err.iteration, 0, "expected a setup failure, got one mid-run");
}
