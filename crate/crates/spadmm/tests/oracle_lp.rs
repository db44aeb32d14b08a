//! Cross-checks the simplex solver and the linear minimization oracle
//! against exhaustive vertex enumeration on instances small enough to
//! enumerate.

mod common;

use rand::Rng;
use spadmm::benchmarks::flow_polytope;
use spadmm::dense::Mat;
use spadmm::lp::{lmo, solve_lp, LpOutcome, StandardFormLp};
use spadmm::sets::ConvexSet;

use common::{dot, lp_optimal as optimal};

#[test]
fn worked_examples() {
    // min x1 s.t. x1 + x2 = 1, x >= 0.
    let lp = StandardFormLp {
        cost: vec![1.0, 0.0],
        a_eq: Mat::from_rows(vec![vec![1.0, 1.0]]).unwrap(),
        b_eq: vec![1.0],
        lower: vec![0.0, 0.0],
        upper: vec![f64::INFINITY, f64::INFINITY],
    };
    let (x, value) = optimal(&lp);
    assert!(value.abs() <= 1e-9);
    assert!((x[0]).abs() <= 1e-9 && (x[1] - 1.0).abs() <= 1e-9);

    // min -x1 - 2 x2 s.t. x1 + x2 = 1, 0 <= x <= 1.
    let lp = StandardFormLp {
        cost: vec![-1.0, -2.0],
        a_eq: Mat::from_rows(vec![vec![1.0, 1.0]]).unwrap(),
        b_eq: vec![1.0],
        lower: vec![0.0, 0.0],
        upper: vec![1.0, 1.0],
    };
    let (x, value) = optimal(&lp);
    assert!((value + 2.0).abs() <= 1e-9);
    assert!(x[0].abs() <= 1e-9 && (x[1] - 1.0).abs() <= 1e-9);
}

#[test]
fn infeasible_and_unbounded_are_tagged() {
    // x1 + x2 = 5 cannot hold inside [0,1]^2.
    let lp = StandardFormLp {
        cost: vec![1.0, 1.0],
        a_eq: Mat::from_rows(vec![vec![1.0, 1.0]]).unwrap(),
        b_eq: vec![5.0],
        lower: vec![0.0, 0.0],
        upper: vec![1.0, 1.0],
    };
    assert_eq!(solve_lp(&lp).unwrap(), LpOutcome::Infeasible);

    // min -x1 with x1 free above.
    let lp = StandardFormLp {
        cost: vec![-1.0],
        a_eq: Mat::zeros(0, 1),
        b_eq: vec![],
        lower: vec![0.0],
        upper: vec![f64::INFINITY],
    };
    assert_eq!(solve_lp(&lp).unwrap(), LpOutcome::Unbounded);
}

#[test]
fn random_lps_match_vertex_enumeration() {
    let mut r = common::rng(1601);
    for trial in 0..20 {
        let (lp, rows) = common::random_small_lp(&mut r);
        let (_, value) = optimal(&lp);
        let (oracle_value, _) =
            common::enumerate_lp_min(&rows, &lp.b_eq, &lp.lower, &lp.upper, &lp.cost)
                .expect("oracle found no feasible vertex");
        assert!(
            (value - oracle_value).abs() <= 1e-8,
            "trial {trial}: solver {value} vs enumeration {oracle_value}"
        );
    }
}

#[test]
fn solver_value_dominates_random_feasible_points() {
    let mut r = common::rng(1777);
    for _ in 0..5 {
        let (lp, rows) = common::random_small_lp(&mut r);
        let (_, value) = optimal(&lp);
        let vertices =
            common::enumerate_lp_vertices(&rows, &lp.b_eq, &lp.lower, &lp.upper);
        assert!(!vertices.is_empty());
        // Convex combinations of vertices stay feasible; 100 of them per LP.
        for _ in 0..100 {
            let mut weights: Vec<f64> =
                (0..vertices.len()).map(|_| r.random::<f64>()).collect();
            let total: f64 = weights.iter().sum();
            for w in &mut weights {
                *w /= total;
            }
            let mut point = vec![0.0; lp.cost.len()];
            for (w, v) in weights.iter().zip(&vertices) {
                for (p, x) in point.iter_mut().zip(v) {
                    *p += w * x;
                }
            }
            assert!(value <= dot(&lp.cost, &point) + 1e-8);
        }
    }
}

#[test]
fn lmo_closed_forms() {
    let simplex = ConvexSet::scaled_simplex(20.0, 10).unwrap();
    let mut cost = vec![1.0; 10];
    cost[3] = -2.0;
    let v = lmo(&simplex, &cost).unwrap();
    let mut expected = vec![0.0; 10];
    expected[3] = 20.0;
    assert_eq!(v, expected);

    let unit_box = ConvexSet::box_set(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
    assert_eq!(lmo(&unit_box, &[-1.0, 1.0]).unwrap(), vec![1.0, 0.0]);
}

#[test]
fn lmo_simplex_tie_breaks_to_lowest_index() {
    let simplex = ConvexSet::scaled_simplex(5.0, 4).unwrap();
    let v = lmo(&simplex, &[2.0, -1.0, -1.0, 0.0]).unwrap();
    assert_eq!(v, vec![0.0, 5.0, 0.0, 0.0]);
}

/// Explicit standard form of a unit-flow polytope: one conservation row per
/// node (out minus in), one total-mass row, edge variables in [0,1]. Built
/// here by hand so the comparison against the library's set-based route is
/// independent.
fn explicit_flow_lp(n_nodes: usize, edges: &[(usize, usize)], cost: &[f64]) -> StandardFormLp {
    let mut rows = vec![vec![0.0; edges.len()]; n_nodes + 1];
    let mut b = vec![0.0; n_nodes + 1];
    for (e, &(tail, head)) in edges.iter().enumerate() {
        rows[tail][e] += 1.0;
        rows[head][e] -= 1.0;
    }
    rows[n_nodes] = vec![1.0; edges.len()];
    b[n_nodes] = 1.0;
    StandardFormLp {
        cost: cost.to_vec(),
        a_eq: Mat::from_rows(rows).unwrap(),
        b_eq: b,
        lower: vec![0.0; edges.len()],
        upper: vec![1.0; edges.len()],
    }
}

#[test]
fn lmo_flow_polytope_matches_explicit_lp() {
    let mut r = common::rng(1999);

    // The directed 3-cycle pins the flow to (1/3, 1/3, 1/3); both routes
    // must agree on it regardless of cost.
    let cycle = [(0usize, 1usize), (1, 2), (2, 0)];
    let set = flow_polytope(3, &cycle).unwrap();
    for _ in 0..10 {
        let cost = common::sample_vec(&mut r, 3, -2.0, 2.0);
        let via_set = lmo(&set, &cost).unwrap();
        let (via_lp, lp_value) = optimal(&explicit_flow_lp(3, &cycle, &cost));
        assert!((dot(&cost, &via_set) - lp_value).abs() <= 1e-8);
        for (a, b) in via_set.iter().zip(&via_lp) {
            assert!((a - b).abs() <= 1e-8);
        }
        assert!(set.contains(&via_set, 1e-8));
    }

    // A multigraph on 3 nodes with both directions gives a polytope with
    // several vertices, so costs actually steer the optimum.
    let dense = [(0usize, 1usize), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)];
    let set = flow_polytope(3, &dense).unwrap();
    for _ in 0..10 {
        let cost = common::sample_vec(&mut r, 6, -2.0, 2.0);
        let via_set = lmo(&set, &cost).unwrap();
        let (_, lp_value) = optimal(&explicit_flow_lp(3, &dense, &cost));
        assert!((dot(&cost, &via_set) - lp_value).abs() <= 1e-8);
        assert!(set.contains(&via_set, 1e-8));
    }
}
