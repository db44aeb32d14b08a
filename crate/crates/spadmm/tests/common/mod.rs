//! Shared oracles for the integration suites. Everything here is written
//! against the math, not against the library: grid searches, vertex
//! enumeration, an independent simplex projection, and an extragradient
//! loop for whole-game saddles. Keeping these separate from the crate's own
//! numerics is what lets them act as ground truth.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use spadmm::blocks::BlockSubproblem;
use spadmm::dense::Mat;
use spadmm::lp::{solve_lp, LpOutcome, StandardFormLp};
use spadmm::problem::{BilinearQuadratic, BlockObjective};
use spadmm::sets::Sense;
use spadmm::ConvexSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Grid min-max saddle on a rectangle: for each x on the grid take the
/// y-grid maximum, then minimize over x. Returns the arg pair.
pub fn grid_minmax<F>(eval: F, x_range: (f64, f64), y_range: (f64, f64), step: f64) -> (f64, f64)
where
    F: Fn(f64, f64) -> f64,
{
    let xs = grid(x_range, step);
    let ys = grid(y_range, step);
    let mut best = (f64::INFINITY, xs[0], ys[0]);
    for &x in &xs {
        let mut inner = (f64::NEG_INFINITY, ys[0]);
        for &y in &ys {
            let v = eval(x, y);
            if v > inner.0 {
                inner = (v, y);
            }
        }
        if inner.0 < best.0 {
            best = (inner.0, x, inner.1);
        }
    }
    (best.1, best.2)
}

fn grid(range: (f64, f64), step: f64) -> Vec<f64> {
    let n = ((range.1 - range.0) / step).round() as usize;
    let mut out: Vec<f64> = (0..=n).map(|i| range.0 + i as f64 * step).collect();
    if let Some(last) = out.last_mut() {
        *last = range.1;
    }
    out
}

/// Dense Gaussian elimination with partial pivoting; `None` for singular
/// systems. Oracle-side; deliberately not the library's solver.
pub fn gauss_solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| {
            m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap()
        })?;
        if m[piv][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, piv);
        for row in 0..n {
            if row != col {
                let factor = m[row][col] / m[col][col];
                for k in col..=n {
                    m[row][k] -= factor * m[col][k];
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

/// Minimum of `cost . v` over `{ A v = b, lower <= v <= upper }` by
/// enumerating every basic solution: all bases, all lower/upper assignments
/// of the nonbasic variables. Exponential, fine for n <= 8.
pub fn enumerate_lp_min(
    a: &[Vec<f64>],
    b: &[f64],
    lower: &[f64],
    upper: &[f64],
    cost: &[f64],
) -> Option<(f64, Vec<f64>)> {
    let m = b.len();
    let n = lower.len();
    assert!(m <= n, "oracle expects fewer rows than columns");
    let mut best: Option<(f64, Vec<f64>)> = None;
    for basis in combinations(n, m) {
        let nonbasic: Vec<usize> = (0..n).filter(|i| !basis.contains(i)).collect();
        for mask in 0..(1u32 << nonbasic.len()) {
            let mut v = vec![0.0; n];
            for (bit, &j) in nonbasic.iter().enumerate() {
                v[j] = if mask >> bit & 1 == 1 { upper[j] } else { lower[j] };
            }
            let rows: Vec<Vec<f64>> =
                (0..m).map(|r| basis.iter().map(|&j| a[r][j]).collect()).collect();
            let rhs: Vec<f64> = (0..m)
                .map(|r| b[r] - nonbasic.iter().map(|&j| a[r][j] * v[j]).sum::<f64>())
                .collect();
            let Some(vb) = gauss_solve(&rows, &rhs) else { continue };
            for (&j, &val) in basis.iter().zip(&vb) {
                v[j] = val;
            }
            let feasible = v
                .iter()
                .enumerate()
                .all(|(j, &x)| x >= lower[j] - 1e-9 && x <= upper[j] + 1e-9);
            if !feasible {
                continue;
            }
            let c: f64 = cost.iter().zip(&v).map(|(a, b)| a * b).sum();
            if best.as_ref().is_none_or(|(bc, _)| c < *bc) {
                best = Some((c, v));
            }
        }
    }
    best
}

/// Every feasible basic solution of `{Ax = b, lower <= x <= upper}`: all
/// basis choices, all bound assignments of the nonbasic variables. The
/// feasible ones are the vertices, so convex combinations of the result
/// sample the whole polytope.
pub fn enumerate_lp_vertices(
    a: &[Vec<f64>],
    b: &[f64],
    lower: &[f64],
    upper: &[f64],
) -> Vec<Vec<f64>> {
    let m = b.len();
    let n = lower.len();
    let mut out = Vec::new();
    for basis in combinations(n, m) {
        let nonbasic: Vec<usize> = (0..n).filter(|i| !basis.contains(i)).collect();
        for mask in 0..(1u32 << nonbasic.len()) {
            let mut v = vec![0.0; n];
            for (bit, &j) in nonbasic.iter().enumerate() {
                v[j] = if mask >> bit & 1 == 1 { upper[j] } else { lower[j] };
            }
            let rows: Vec<Vec<f64>> =
                (0..m).map(|r| basis.iter().map(|&j| a[r][j]).collect()).collect();
            let rhs: Vec<f64> = (0..m)
                .map(|r| b[r] - nonbasic.iter().map(|&j| a[r][j] * v[j]).sum::<f64>())
                .collect();
            let Some(vb) = gauss_solve(&rows, &rhs) else { continue };
            for (&j, &val) in basis.iter().zip(&vb) {
                v[j] = val;
            }
            if v.iter()
                .enumerate()
                .all(|(j, &x)| x >= lower[j] - 1e-9 && x <= upper[j] + 1e-9)
            {
                out.push(v);
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Independent simplex projection (sort and threshold), used to cross-check
/// the library's and to drive the whole-game oracle below.
pub fn own_project_simplex(v: &[f64], total: f64) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cum = 0.0;
    let mut theta = (v.iter().sum::<f64>() - total) / v.len() as f64;
    for (i, &s) in sorted.iter().enumerate() {
        cum += s;
        let t = (cum - total) / (i + 1) as f64;
        if i + 1 == sorted.len() || sorted[i + 1] <= t {
            theta = t;
            break;
        }
    }
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

/// Whole-game saddle for the capacity game `sum_i ln(1 + y_i/(sigma_i+x_i))`
/// over budget simplices, by plain projected extragradient with the local
/// projection above. Slow but independent of every crate component.
pub fn capacity_saddle_oracle(
    sigma: &[f64],
    noise_budget: f64,
    power_budget: f64,
    tau: f64,
    iters: usize,
) -> (Vec<f64>, Vec<f64>) {
    let n = sigma.len();
    let gx = |x: &[f64], y: &[f64], i: usize| {
        1.0 / (sigma[i] + x[i] + y[i]) - 1.0 / (sigma[i] + x[i])
    };
    let gy = |x: &[f64], y: &[f64], i: usize| 1.0 / (sigma[i] + x[i] + y[i]);
    let mut x = own_project_simplex(&vec![0.0; n], noise_budget);
    let mut y = own_project_simplex(&vec![0.0; n], power_budget);
    for _ in 0..iters {
        let xh: Vec<f64> = (0..n).map(|i| x[i] - tau * gx(&x, &y, i)).collect();
        let yh: Vec<f64> = (0..n).map(|i| y[i] + tau * gy(&x, &y, i)).collect();
        let xh = own_project_simplex(&xh, noise_budget);
        let yh = own_project_simplex(&yh, power_budget);
        let xn: Vec<f64> = (0..n).map(|i| x[i] - tau * gx(&xh, &yh, i)).collect();
        let yn: Vec<f64> = (0..n).map(|i| y[i] + tau * gy(&xh, &yh, i)).collect();
        x = own_project_simplex(&xn, noise_budget);
        y = own_project_simplex(&yn, power_budget);
    }
    (x, y)
}

pub fn capacity_value(sigma: &[f64], x: &[f64], y: &[f64]) -> f64 {
    sigma
        .iter()
        .zip(x.iter().zip(y))
        .map(|(&s, (&xi, &yi))| (1.0 + yi / (s + xi)).ln())
        .sum()
}

/// Central finite differences on a scalar function of one coordinate.
pub fn central_diff<F: Fn(f64) -> f64>(f: F, at: f64, h: f64) -> f64 {
    (f(at + h) - f(at - h)) / (2.0 * h)
}

pub fn sample_vec(r: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| r.random_range(lo..hi)).collect()
}

pub fn random_box(r: &mut ChaCha8Rng) -> ConvexSet {
    let dim = r.random_range(1..=8);
    let lower: Vec<f64> = (0..dim).map(|_| r.random_range(-5.0..0.0)).collect();
    let upper: Vec<f64> = lower.iter().map(|&l| l + r.random_range(0.1..5.0)).collect();
    ConvexSet::box_set(lower, upper).unwrap()
}

pub fn random_simplex(r: &mut ChaCha8Rng) -> ConvexSet {
    ConvexSet::scaled_simplex(r.random_range(0.1..10.0), r.random_range(1..=8)).unwrap()
}

pub fn random_halfspace(r: &mut ChaCha8Rng) -> ConvexSet {
    let dim = r.random_range(1..=8);
    let normal: Vec<f64> = (0..dim).map(|_| r.random_range(-1.0..1.0) + 0.1).collect();
    let sense = if r.random::<bool>() { Sense::Ge } else { Sense::Le };
    ConvexSet::halfspace(normal, r.random_range(-2.0..2.0), sense).unwrap()
}

/// Affine rows through a strictly interior point of the box, so the set is
/// nonempty by construction.
pub fn random_affine_box(r: &mut ChaCha8Rng) -> ConvexSet {
    let n = r.random_range(2..=6);
    let m = r.random_range(1..n);
    let v0: Vec<f64> = (0..n).map(|_| r.random_range(0.5..2.5)).collect();
    let rows: Vec<Vec<f64>> =
        (0..m).map(|_| (0..n).map(|_| r.random_range(-1.0..1.0)).collect()).collect();
    let b: Vec<f64> = rows.iter().map(|row| dot(row, &v0)).collect();
    ConvexSet::affine_box(Mat::from_rows(rows).unwrap(), b, vec![0.0; n], vec![3.0; n]).unwrap()
}

pub fn random_intersection(r: &mut ChaCha8Rng) -> ConvexSet {
    let inner = random_affine_box(r);
    let n = inner.dim();
    let w = inner.witness();
    let normal: Vec<f64> = (0..n).map(|_| r.random_range(-1.0..1.0)).collect();
    // Feasible by a margin at the witness.
    let offset = dot(&normal, &w) - r.random_range(0.0..0.5);
    let hs = ConvexSet::halfspace(normal, offset, Sense::Ge).unwrap();
    ConvexSet::intersection(vec![inner, hs]).unwrap()
}

/// Random bounded LP with a guaranteed feasible point: pick an interior
/// anchor in the box and set b = A * anchor. Returns the constraint rows
/// alongside so enumeration oracles can reuse them.
pub fn random_small_lp(r: &mut ChaCha8Rng) -> (StandardFormLp, Vec<Vec<f64>>) {
    let n = r.random_range(2..=6usize);
    let m = r.random_range(1..=4usize.min(n - 1));
    let lower = sample_vec(r, n, -3.0, 0.0);
    let upper: Vec<f64> = lower.iter().map(|&l| l + r.random_range(0.5..4.0)).collect();
    let anchor: Vec<f64> = lower
        .iter()
        .zip(&upper)
        .map(|(&l, &u)| l + r.random_range(0.2..0.8) * (u - l))
        .collect();
    let rows: Vec<Vec<f64>> = (0..m).map(|_| sample_vec(r, n, -2.0, 2.0)).collect();
    let b: Vec<f64> = rows.iter().map(|row| dot(row, &anchor)).collect();
    let lp = StandardFormLp {
        cost: sample_vec(r, n, -2.0, 2.0),
        a_eq: Mat::from_rows(rows.clone()).unwrap(),
        b_eq: b,
        lower,
        upper,
    };
    (lp, rows)
}

pub fn lp_optimal(lp: &StandardFormLp) -> (Vec<f64>, f64) {
    match solve_lp(lp).expect("solver error") {
        LpOutcome::Optimal { x, value } => (x, value),
        other => panic!("expected optimum, got {other:?}"),
    }
}

/// Owns everything a `BlockSubproblem` borrows. One scalar x-block against
/// one scalar y-block, which is exactly what a 2-D grid search can check.
pub struct BlockFixture {
    pub objective: BlockObjective,
    pub local_a: ConvexSet,
    pub local_b: ConvexSet,
    pub z_a: Vec<f64>,
    pub z_b: Vec<f64>,
    pub lambda_a: Vec<f64>,
    pub lambda_b: Vec<f64>,
    pub rho_a: f64,
    pub rho_b: f64,
}

impl BlockFixture {
    pub fn sp(&self) -> BlockSubproblem<'_> {
        BlockSubproblem {
            objective: &self.objective,
            local_a: &self.local_a,
            local_b: &self.local_b,
            z_a: &self.z_a,
            z_b: &self.z_b,
            lambda_a: &self.lambda_a,
            lambda_b: &self.lambda_b,
            rho_a: self.rho_a,
            rho_b: self.rho_b,
        }
    }

    pub fn bounds(&self) -> ((f64, f64), (f64, f64)) {
        let (la, ua) = self.local_a.as_box().unwrap();
        let (lb, ub) = self.local_b.as_box().unwrap();
        ((la[0], ua[0]), (lb[0], ub[0]))
    }
}

pub fn bilinear_fixture(
    q: BilinearQuadratic,
    box_a: (f64, f64),
    box_b: (f64, f64),
) -> BlockFixture {
    BlockFixture {
        objective: BlockObjective::bilinear_quadratic(q, 1, 1).unwrap(),
        local_a: ConvexSet::box_set(vec![box_a.0], vec![box_a.1]).unwrap(),
        local_b: ConvexSet::box_set(vec![box_b.0], vec![box_b.1]).unwrap(),
        z_a: vec![0.0],
        z_b: vec![0.0],
        lambda_a: vec![0.0],
        lambda_b: vec![0.0],
        rho_a: 1.0,
        rho_b: 1.0,
    }
}

/// Parameter ranges are kept tame (curvature below 1.5, cross term below
/// 0.9) so the grid argmin at step 1e-3 stays inside the 2e-3 contract.
pub fn random_block_fixture(r: &mut ChaCha8Rng) -> BlockFixture {
    let q = BilinearQuadratic {
        quad_x: r.random_range(0.0..1.5),
        quad_y: r.random_range(0.0..1.5),
        cross: r.random_range(-0.9..0.9),
        lin_x: r.random_range(-1.0..1.0),
        lin_y: r.random_range(-1.0..1.0),
        constant: r.random_range(-1.0..1.0),
    };
    let mut fix = bilinear_fixture(q, (0.0, 1.0), (0.0, 1.0));
    let la = r.random_range(-1.25..-0.25);
    let lb = r.random_range(-1.25..-0.25);
    fix.local_a = ConvexSet::box_set(vec![la], vec![la + r.random_range(0.75..2.0)]).unwrap();
    fix.local_b = ConvexSet::box_set(vec![lb], vec![lb + r.random_range(0.75..2.0)]).unwrap();
    fix.z_a = vec![r.random_range(-0.5..0.5)];
    fix.z_b = vec![r.random_range(-0.5..0.5)];
    fix.lambda_a = vec![r.random_range(-0.5..0.5)];
    fix.lambda_b = vec![r.random_range(-0.5..0.5)];
    fix.rho_a = r.random_range(0.8..2.0);
    fix.rho_b = r.random_range(0.8..2.0);
    fix
}

pub fn grid_saddle(fix: &BlockFixture) -> (f64, f64) {
    let sp = fix.sp();
    let (xr, yr) = fix.bounds();
    grid_minmax(|x, y| sp.eval(&[x], &[y]), xr, yr, 1e-3)
}

/// Randomized projection suite over one set family: idempotence,
/// nonexpansiveness, optimality against sampled feasible points, and the
/// variational inequality, `trials` times.
pub fn projection_suite<F>(seed: u64, trials: usize, mut make: F)
where
    F: FnMut(&mut ChaCha8Rng) -> ConvexSet,
{
    let mut r = rng(seed);
    for trial in 0..trials {
        let set = make(&mut r);
        let dim = set.dim();
        let v = sample_vec(&mut r, dim, -8.0, 8.0);
        let u = sample_vec(&mut r, dim, -8.0, 8.0);
        let pv = set.project(&v).unwrap();
        let pu = set.project(&u).unwrap();

        let ppv = set.project(&pv).unwrap();
        assert!(
            dist(&pv, &ppv) <= 1e-9,
            "idempotence failed on trial {trial}: moved {}",
            dist(&pv, &ppv)
        );
        assert!(
            dist(&pu, &pv) <= dist(&u, &v) + 1e-9,
            "nonexpansiveness failed on trial {trial}"
        );
        for _ in 0..5 {
            let w = set.project(&sample_vec(&mut r, dim, -8.0, 8.0)).unwrap();
            assert!(
                dist(&v, &pv) <= dist(&v, &w) + 1e-9,
                "optimality failed on trial {trial}"
            );
            let gap: f64 = (0..dim).map(|i| (v[i] - pv[i]) * (w[i] - pv[i])).sum();
            assert!(gap <= 1e-8, "variational inequality failed on trial {trial}: {gap}");
        }
    }
}
