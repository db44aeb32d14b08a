//! Dense linear programming: a two-phase tableau simplex with Bland's
//! anti-cycling rule, plus the linear minimization oracle (LMO) used by the
//! Frank-Wolfe paths.
//!
//! Problems are desk-scale (hundreds of variables), so the tableau is stored
//! dense and rebuilt per solve. Boxes and scaled simplices get closed-form
//! oracles; everything else is assembled into an explicit LP.

use crate::defaults;
use crate::dense::Mat;
use crate::error::{Error, Result};
use crate::sets::ConvexSet;
use crate::vecmath;

/// `min cost . x` subject to `a_eq x = b_eq` and `lower <= x <= upper`.
/// Bound entries may be `f64::INFINITY` / `f64::NEG_INFINITY`.
#[derive(Debug, Clone)]
pub struct StandardFormLp {
    pub cost: Vec<f64>,
    pub a_eq: Mat,
    pub b_eq: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

impl StandardFormLp {
    fn validate(&self) -> Result<()> {
        let n = self.cost.len();
        for (name, len) in [
            ("a_eq columns", self.a_eq.cols),
            ("lower bounds", self.lower.len()),
            ("upper bounds", self.upper.len()),
        ] {
            if len != n {
                return Err(Error::Invalid {
                    what: "lp",
                    why: format!("{name}: expected {n}, got {len}"),
                });
            }
        }
        if self.a_eq.rows != self.b_eq.len() {
            return Err(Error::DimMismatch {
                context: "lp rows",
                expected: self.a_eq.rows,
                got: self.b_eq.len(),
            });
        }
        Ok(())
    }
}

// One canonical variable t >= 0 representing x[orig] = shift + sign * t.
#[derive(Debug, Clone, Copy)]
struct CanonVar {
    orig: usize,
    sign: f64,
    shift: f64,
}

/// Solves the LP with a dense two-phase simplex. Infeasibility and
/// unboundedness are tagged outcomes, not errors; exceeding
/// [`defaults::LP_MAX_PIVOTS`] pivots is an error.
pub fn solve_lp(lp: &StandardFormLp) -> Result<LpOutcome> {
    lp.validate()?;
    let n = lp.cost.len();
    let tol = defaults::LP_TOL;

    // Canonicalize to min c.t, A t = b, t >= 0. Double-bounded variables get
    // an extra row t + slack = u - l (the slack is its own canonical var).
    let mut vars: Vec<CanonVar> = Vec::new();
    let mut var_cols: Vec<Vec<usize>> = vec![Vec::new(); n]; // orig -> canon cols
    let mut bound_rows: Vec<(usize, f64)> = Vec::new(); // (canon col, u - l)
    for j in 0..n {
        let (l, u) = (lp.lower[j], lp.upper[j]);
        if !(l <= u) {
            return Ok(LpOutcome::Infeasible);
        }
        if l.is_finite() {
            let col = vars.len();
            vars.push(CanonVar { orig: j, sign: 1.0, shift: l });
            var_cols[j].push(col);
            if u.is_finite() {
                bound_rows.push((col, u - l));
            }
        } else if u.is_finite() {
            let col = vars.len();
            vars.push(CanonVar { orig: j, sign: -1.0, shift: u });
            var_cols[j].push(col);
        } else {
            let cp = vars.len();
            vars.push(CanonVar { orig: j, sign: 1.0, shift: 0.0 });
            vars.push(CanonVar { orig: j, sign: -1.0, shift: 0.0 });
            var_cols[j].push(cp);
            var_cols[j].push(cp + 1);
        }
    }
    let n_bound_slacks = bound_rows.len();
    let n_canon = vars.len() + n_bound_slacks;
    let m = lp.a_eq.rows + bound_rows.len();

    // Assemble rows and right-hand sides.
    let mut rows = vec![vec![0.0; n_canon]; m];
    let mut rhs = vec![0.0; m];
    for i in 0..lp.a_eq.rows {
        let arow = lp.a_eq.row(i);
        let mut b = lp.b_eq[i];
        for (k, var) in vars.iter().enumerate() {
            let a = arow[var.orig];
            if a != 0.0 {
                rows[i][k] = a * var.sign;
            }
        }
        for j in 0..n {
            if arow[j] != 0.0 {
                b -= arow[j] * shift_of(&vars, &var_cols[j]);
            }
        }
        rhs[i] = b;
    }
    for (bi, &(col, width)) in bound_rows.iter().enumerate() {
        let i = lp.a_eq.rows + bi;
        rows[i][col] = 1.0;
        rows[i][vars.len() + bi] = 1.0; // slack column
        rhs[i] = width;
    }

    let mut cost = vec![0.0; n_canon];
    for (k, var) in vars.iter().enumerate() {
        cost[k] = lp.cost[var.orig] * var.sign;
    }

    // No rows: optimum is t = 0 unless some cost direction is open.
    if m == 0 {
        if cost.iter().any(|&c| c < -tol) {
            return Ok(LpOutcome::Unbounded);
        }
        let x = recover(&vars, &var_cols, &vec![0.0; n_canon], n);
        let value = vecmath::dot(&lp.cost, &x);
        return Ok(LpOutcome::Optimal { x, value });
    }

    // Flip rows so rhs >= 0, then run phase 1 with artificial columns.
    for i in 0..m {
        if rhs[i] < 0.0 {
            for v in rows[i].iter_mut() {
                *v = -*v;
            }
            rhs[i] = -rhs[i];
        }
    }
    let mut tab = Tableau::phase1(rows, rhs, n_canon);
    tab.run(tol)?;
    if tab.infeasibility() > tol * 1e3 {
        return Ok(LpOutcome::Infeasible);
    }
    if !tab.drop_artificials(tol) {
        return Ok(LpOutcome::Infeasible);
    }
    tab.set_costs(&cost);
    match tab.run(tol)? {
        RunEnd::Optimal => {}
        RunEnd::Unbounded => return Ok(LpOutcome::Unbounded),
    }
    let t = tab.solution();
    let x = recover(&vars, &var_cols, &t, n);
    let value = vecmath::dot(&lp.cost, &x);
    Ok(LpOutcome::Optimal { x, value })
}

fn shift_of(vars: &[CanonVar], cols: &[usize]) -> f64 {
    // Free variables split into +/- parts share shift 0; bounded ones have a
    // single column whose shift applies.
    cols.first().map_or(0.0, |&c| vars[c].shift)
}

fn recover(vars: &[CanonVar], var_cols: &[Vec<usize>], t: &[f64], n: usize) -> Vec<f64> {
    let mut x = vec![0.0; n];
    for j in 0..n {
        let mut v = shift_of(vars, &var_cols[j]);
        for &c in &var_cols[j] {
            v += vars[c].sign * t[c];
        }
        x[j] = v;
    }
    x
}

enum RunEnd {
    Optimal,
    Unbounded,
}

struct Tableau {
    // rows[i] has n_total coefficient columns; rhs kept separately.
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    obj: Vec<f64>,
    basis: Vec<usize>,
    n_real: usize,  // columns eligible to enter
    n_total: usize, // includes artificial columns
    pivots: usize,
}

impl Tableau {
    fn phase1(rows: Vec<Vec<f64>>, rhs: Vec<f64>, n_real: usize) -> Self {
        let m = rows.len();
        let n_total = n_real + m;
        let mut full = Vec::with_capacity(m);
        for (i, mut row) in rows.into_iter().enumerate() {
            row.resize(n_total, 0.0);
            row[n_real + i] = 1.0;
            full.push(row);
        }
        // Phase-1 reduced costs: minimize the sum of artificials.
        let mut obj = vec![0.0; n_total];
        for j in 0..n_real {
            obj[j] = -full.iter().map(|r| r[j]).sum::<f64>();
        }
        let basis = (n_real..n_total).collect();
        Tableau { rows: full, rhs, obj, basis, n_real, n_total, pivots: 0 }
    }

    /// Bland's rule: entering column = lowest index with negative reduced
    /// cost; leaving row = lexicographic minimum ratio, ties broken by the
    /// lowest basic variable index. Terminates by the anti-cycling property;
    /// the pivot cap guards against stalls only.
    fn run(&mut self, tol: f64) -> Result<RunEnd> {
        loop {
            let mut entering = None;
            for j in 0..self.n_real {
                if self.obj[j] < -tol {
                    entering = Some(j);
                    break;
                }
            }
            let j = match entering {
                Some(j) => j,
                None => return Ok(RunEnd::Optimal),
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][j];
                if a > tol {
                    let ratio = self.rhs[i] / a;
                    let better = match leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < lr - tol
                                || (ratio < lr + tol && self.basis[i] < self.basis[li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let (r, _) = match leave {
                Some(p) => p,
                None => return Ok(RunEnd::Unbounded),
            };
            self.pivot(r, j);
            self.pivots += 1;
            if self.pivots > defaults::LP_MAX_PIVOTS {
                return Err(Error::PivotLimit(defaults::LP_MAX_PIVOTS));
            }
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let piv = self.rows[r][j];
        for v in self.rows[r].iter_mut() {
            *v /= piv;
        }
        self.rhs[r] /= piv;
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][j];
            if f == 0.0 {
                continue;
            }
            for c in 0..self.n_total {
                let v = self.rows[r][c];
                self.rows[i][c] -= f * v;
            }
            self.rhs[i] -= f * self.rhs[r];
        }
        let f = self.obj[j];
        if f != 0.0 {
            for c in 0..self.n_total {
                self.obj[c] -= f * self.rows[r][c];
            }
        }
        self.basis[r] = j;
    }

    fn infeasibility(&self) -> f64 {
        let mut total = 0.0;
        for (i, &b) in self.basis.iter().enumerate() {
            if b >= self.n_real {
                total += self.rhs[i].abs();
            }
        }
        total
    }

    /// Pivots remaining artificial variables out of the basis, dropping rows
    /// that turn out redundant. Returns false when a basic artificial has a
    /// significantly nonzero value (should have been caught as infeasible).
    fn drop_artificials(&mut self, tol: f64) -> bool {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.n_real {
                i += 1;
                continue;
            }
            if self.rhs[i].abs() > tol * 1e3 {
                return false;
            }
            let mut pivot_col = None;
            for j in 0..self.n_real {
                if self.rows[i][j].abs() > tol {
                    pivot_col = Some(j);
                    break;
                }
            }
            match pivot_col {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    // Redundant row.
                    self.rows.swap_remove(i);
                    self.rhs.swap_remove(i);
                    self.basis.swap_remove(i);
                }
            }
        }
        true
    }

    fn set_costs(&mut self, cost: &[f64]) {
        debug_assert_eq!(cost.len(), self.n_real);
        let mut obj = vec![0.0; self.n_total];
        obj[..self.n_real].copy_from_slice(cost);
        // Subtract c_B B^-1 A (the rows are already B^-1 A).
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = if b < self.n_real { cost[b] } else { 0.0 };
            if cb != 0.0 {
                for c in 0..self.n_total {
                    obj[c] -= cb * self.rows[i][c];
                }
            }
        }
        self.obj = obj;
    }

    fn solution(&self) -> Vec<f64> {
        let mut t = vec![0.0; self.n_real];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n_real {
                t[b] = self.rhs[i];
            }
        }
        debug_assert!(
            self.obj[..self.n_real].iter().all(|&c| c >= -1e-8),
            "simplex returned with negative reduced costs"
        );
        t
    }
}

/// Explicit polyhedral description `{x : A x = b, C x <= d, l <= x <= u}`
/// assembled from set descriptors, with embedding support so per-block sets
/// can be placed at their coordinate offsets.
#[derive(Debug, Clone)]
pub struct Polyhedron {
    dim: usize,
    eq: Vec<(Vec<f64>, f64)>,
    ineq: Vec<(Vec<f64>, f64)>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Polyhedron {
    pub fn whole_space(dim: usize) -> Self {
        Polyhedron {
            dim,
            eq: Vec::new(),
            ineq: Vec::new(),
            lower: vec![f64::NEG_INFINITY; dim],
            upper: vec![f64::INFINITY; dim],
        }
    }

    pub fn of_set(set: &ConvexSet) -> Result<Self> {
        let mut p = Polyhedron::whole_space(set.dim());
        p.add_set_embedded(set, 0)?;
        Ok(p)
    }

    /// Intersects with `set` placed at coordinates `[offset, offset + set.dim())`.
    pub fn add_set_embedded(&mut self, set: &ConvexSet, offset: usize) -> Result<()> {
        let d = set.dim();
        if offset + d > self.dim {
            return Err(Error::DimMismatch {
                context: "polyhedron embedding",
                expected: self.dim,
                got: offset + d,
            });
        }
        match set {
            ConvexSet::Box(_) => {
                let (l, u) = set.as_box().expect("matched box");
                for i in 0..d {
                    self.lower[offset + i] = self.lower[offset + i].max(l[i]);
                    self.upper[offset + i] = self.upper[offset + i].min(u[i]);
                }
            }
            ConvexSet::ScaledSimplex(_) => {
                let spec = set.to_spec();
                let (total, dim) = match spec {
                    crate::sets::SetSpec::ScaledSimplex { total, dim } => (total, dim),
                    _ => unreachable!(),
                };
                let mut row = vec![0.0; self.dim];
                for i in 0..dim {
                    row[offset + i] = 1.0;
                    self.lower[offset + i] = self.lower[offset + i].max(0.0);
                    self.upper[offset + i] = self.upper[offset + i].min(total);
                }
                self.eq.push((row, total));
            }
            ConvexSet::Halfspace(_) => {
                let spec = set.to_spec();
                let (normal, offset_b, sense) = match spec {
                    crate::sets::SetSpec::Halfspace { normal, offset, sense } => {
                        (normal, offset, sense)
                    }
                    _ => unreachable!(),
                };
                let mut row = vec![0.0; self.dim];
                let (scale, rhs) = match sense {
                    crate::sets::Sense::Le => (1.0, offset_b),
                    crate::sets::Sense::Ge => (-1.0, -offset_b),
                };
                for i in 0..d {
                    row[offset + i] = scale * normal[i];
                }
                self.ineq.push((row, rhs));
            }
            ConvexSet::AffineBox(_) => {
                let spec = set.to_spec();
                let (rows, cols, a, b, l, u) = match spec {
                    crate::sets::SetSpec::AffineBox { rows, cols, a, b, lower, upper } => {
                        (rows, cols, a, b, lower, upper)
                    }
                    _ => unreachable!(),
                };
                for r in 0..rows {
                    let mut row = vec![0.0; self.dim];
                    row[offset..offset + cols].copy_from_slice(&a[r * cols..(r + 1) * cols]);
                    self.eq.push((row, b[r]));
                }
                for i in 0..d {
                    self.lower[offset + i] = self.lower[offset + i].max(l[i]);
                    self.upper[offset + i] = self.upper[offset + i].min(u[i]);
                }
            }
            ConvexSet::Intersection(_) => {
                if let crate::sets::SetSpec::Intersection { members } = set.to_spec() {
                    for m in members {
                        let built = m.build()?;
                        self.add_set_embedded(&built, offset)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds the explicit LP, one slack column per inequality row.
    pub fn to_lp(&self, cost: &[f64]) -> StandardFormLp {
        assert_eq!(cost.len(), self.dim);
        let n = self.dim + self.ineq.len();
        let mut rows = Vec::with_capacity(self.eq.len() + self.ineq.len());
        let mut b = Vec::with_capacity(rows.capacity());
        for (row, rhs) in &self.eq {
            let mut r = row.clone();
            r.resize(n, 0.0);
            rows.push(r);
            b.push(*rhs);
        }
        for (k, (row, rhs)) in self.ineq.iter().enumerate() {
            let mut r = row.clone();
            r.resize(n, 0.0);
            r[self.dim + k] = 1.0;
            rows.push(r);
            b.push(*rhs);
        }
        let mut lower = self.lower.clone();
        let mut upper = self.upper.clone();
        lower.resize(n, 0.0);
        upper.resize(n, f64::INFINITY);
        let mut c = cost.to_vec();
        c.resize(n, 0.0);
        // from_rows cannot learn the width of an empty system.
        let a_eq = if rows.is_empty() {
            Mat::zeros(0, n)
        } else {
            Mat::from_rows(rows).expect("rectangular by construction")
        };
        StandardFormLp { cost: c, a_eq, b_eq: b, lower, upper }
    }

    pub fn lmo(&self, cost: &[f64]) -> Result<Vec<f64>> {
        let lp = self.to_lp(cost);
        match solve_lp(&lp)? {
            LpOutcome::Optimal { mut x, .. } => {
                x.truncate(self.dim);
                Ok(x)
            }
            LpOutcome::Infeasible => Err(Error::DegenerateLmo("infeasible")),
            LpOutcome::Unbounded => Err(Error::DegenerateLmo("unbounded")),
        }
    }
}

/// `argmin_{s in set} cost . s`. Closed form for boxes (active bound per
/// coordinate) and scaled simplices (all mass on the lowest-index minimum
/// cost coordinate); other sets go through [`solve_lp`].
pub fn lmo(set: &ConvexSet, cost: &[f64]) -> Result<Vec<f64>> {
    if cost.len() != set.dim() {
        return Err(Error::DimMismatch {
            context: "lmo cost",
            expected: set.dim(),
            got: cost.len(),
        });
    }
    match set {
        ConvexSet::Box(_) => {
            let (l, u) = set.as_box().expect("matched box");
            let mut s = vec![0.0; cost.len()];
            for i in 0..cost.len() {
                let v = if cost[i] > 0.0 {
                    l[i]
                } else if cost[i] < 0.0 {
                    u[i]
                } else if l[i].is_finite() {
                    l[i]
                } else if u[i].is_finite() {
                    u[i]
                } else {
                    0.0
                };
                if !v.is_finite() {
                    return Err(Error::DegenerateLmo("unbounded"));
                }
                s[i] = v;
            }
            Ok(s)
        }
        ConvexSet::ScaledSimplex(_) => {
            let (total, dim) = match set.to_spec() {
                crate::sets::SetSpec::ScaledSimplex { total, dim } => (total, dim),
                _ => unreachable!(),
            };
            let mut best = 0usize;
            for i in 1..dim {
                if cost[i] < cost[best] {
                    best = i;
                }
            }
            let mut s = vec![0.0; dim];
            s[best] = total;
            Ok(s)
        }
        _ => Polyhedron::of_set(set)?.lmo(cost),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::Sense;

    fn lp(
        cost: Vec<f64>,
        rows: Vec<Vec<f64>>,
        b: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    ) -> StandardFormLp {
        StandardFormLp { cost, a_eq: Mat::from_rows(rows).unwrap(), b_eq: b, lower, upper }
    }

    #[test]
    fn fixed_value_objective() {
        // min x1 + x2 s.t. x1 + x2 = 1, 0 <= x <= 1: every feasible point
        // has value 1.
        let p = lp(
            vec![1.0, 1.0],
            vec![vec![1.0, 1.0]],
            vec![1.0],
            vec![0.0, 0.0],
            vec![1.0, 1.0],
        );
        match solve_lp(&p).unwrap() {
            LpOutcome::Optimal { value, x } => {
                assert!((value - 1.0).abs() < 1e-9);
                assert!((x[0] + x[1] - 1.0).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn vertex_solution() {
        // min -x1 over the probability simplex: x = e1.
        let p = lp(
            vec![-1.0, 0.0],
            vec![vec![1.0, 1.0]],
            vec![1.0],
            vec![0.0, 0.0],
            vec![f64::INFINITY, f64::INFINITY],
        );
        match solve_lp(&p).unwrap() {
            LpOutcome::Optimal { value, x } => {
                assert!((value + 1.0).abs() < 1e-9);
                assert!((x[0] - 1.0).abs() < 1e-9 && x[1].abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn detects_infeasible() {
        let p = lp(
            vec![0.0, 0.0],
            vec![vec![1.0, 1.0]],
            vec![3.0],
            vec![0.0, 0.0],
            vec![1.0, 1.0],
        );
        assert_eq!(solve_lp(&p).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        let p = StandardFormLp {
            cost: vec![-1.0],
            a_eq: Mat::zeros(0, 1),
            b_eq: vec![],
            lower: vec![0.0],
            upper: vec![f64::INFINITY],
        };
        assert_eq!(solve_lp(&p).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn upper_bound_becomes_active() {
        let p = StandardFormLp {
            cost: vec![-1.0],
            a_eq: Mat::zeros(0, 1),
            b_eq: vec![],
            lower: vec![0.0],
            upper: vec![2.0],
        };
        match solve_lp(&p).unwrap() {
            LpOutcome::Optimal { value, x } => {
                assert!((value + 2.0).abs() < 1e-9 && (x[0] - 2.0).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_variable_pinned_by_row() {
        let p = lp(
            vec![1.0],
            vec![vec![2.0]],
            vec![10.0],
            vec![f64::NEG_INFINITY],
            vec![f64::INFINITY],
        );
        match solve_lp(&p).unwrap() {
            LpOutcome::Optimal { value, x } => {
                assert!((x[0] - 5.0).abs() < 1e-9 && (value - 5.0).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_rhs_is_handled() {
        // x1 - x2 = -1 with x in [0,1]^2; min x1 -> x = (0, 1).
        let p = lp(
            vec![1.0, 0.0],
            vec![vec![1.0, -1.0]],
            vec![-1.0],
            vec![0.0, 0.0],
            vec![1.0, 1.0],
        );
        match solve_lp(&p).unwrap() {
            LpOutcome::Optimal { x, .. } => {
                assert!(x[0].abs() < 1e-9 && (x[1] - 1.0).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lmo_box_picks_bounds() {
        let s = ConvexSet::box_set(vec![-1.0, -1.0], vec![2.0, 3.0]).unwrap();
        assert_eq!(lmo(&s, &[1.0, -1.0]).unwrap(), vec![-1.0, 3.0]);
    }

    #[test]
    fn lmo_simplex_picks_lowest_index_minimum() {
        let s = ConvexSet::scaled_simplex(2.0, 3).unwrap();
        assert_eq!(lmo(&s, &[0.5, 0.1, 0.1]).unwrap(), vec![0.0, 2.0, 0.0]);
    }

    #[test]
    fn lmo_unbounded_box_errors() {
        let s = ConvexSet::box_set(vec![f64::NEG_INFINITY], vec![1.0]).unwrap();
        assert!(matches!(lmo(&s, &[1.0]), Err(Error::DegenerateLmo(_))));
    }

    #[test]
    fn lmo_intersection_respects_extra_halfspace() {
        // Simplex in R^2 with x1 >= 0.25: min x1 puts the rest on x2.
        let s = ConvexSet::intersection(vec![
            ConvexSet::scaled_simplex(1.0, 2).unwrap(),
            ConvexSet::halfspace(vec![1.0, 0.0], 0.25, Sense::Ge).unwrap(),
        ])
        .unwrap();
        let v = lmo(&s, &[1.0, 0.0]).unwrap();
        assert!((v[0] - 0.25).abs() < 1e-8 && (v[1] - 0.75).abs() < 1e-8, "{v:?}");
    }
}
