//! Feasible sets and Euclidean projections.
//!
//! Five set families cover everything the solver needs:
//!
//! * [`ConvexSet::box_set`] — axis-aligned bounds, projection by clamping;
//! * [`ConvexSet::scaled_simplex`] — `{x >= 0, sum x = total}`, projection by
//!   sort-and-threshold;
//! * [`ConvexSet::halfspace`] — single linear inequality, closed-form
//!   reflection;
//! * [`ConvexSet::affine_box`] — `{A x = b, l <= x <= u}`, cyclic projection
//!   alternating an exact affine projector (cached `A A^T` factorization)
//!   with bound clamping;
//! * [`ConvexSet::intersection`] — finite intersections via cyclic
//!   projections with Dykstra's correction terms.
//!
//! Every set is validated at construction and stores a feasibility witness;
//! constructing an empty set is an error, so downstream code can assume
//! projections have somewhere to land. Sets are immutable after construction
//! and safe to share across worker threads.

use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::dense::{reduce_rows, Cholesky, Mat};
use crate::error::{Error, Result};
use crate::vecmath;

/// Direction of a halfspace inequality `normal . x (<=|>=) offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Le,
    Ge,
}

#[derive(Debug, Clone)]
pub enum ConvexSet {
    Box(BoxSet),
    ScaledSimplex(SimplexSet),
    Halfspace(HalfspaceSet),
    AffineBox(AffineBoxSet),
    Intersection(IntersectionSet),
}

#[derive(Debug, Clone)]
pub struct BoxSet {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SimplexSet {
    total: f64,
    dim: usize,
}

#[derive(Debug, Clone)]
pub struct HalfspaceSet {
    normal: Vec<f64>,
    offset: f64,
    sense: Sense,
    norm_sq: f64,
    witness: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct AffineBoxSet {
    // Original rows are kept for serialization; the reduced full-row-rank
    // system drives the projector.
    a_orig: Mat,
    b_orig: Vec<f64>,
    a: Mat,
    b: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    chol: Option<Cholesky>,
    witness: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct IntersectionSet {
    members: Vec<ConvexSet>,
    witness: Vec<f64>,
}

fn check_bounds(lower: &[f64], upper: &[f64]) -> Result<()> {
    if lower.len() != upper.len() {
        return Err(Error::DimMismatch {
            context: "box bounds",
            expected: lower.len(),
            got: upper.len(),
        });
    }
    for i in 0..lower.len() {
        // NaN fails this comparison too.
        if !(lower[i] <= upper[i]) {
            return Err(Error::Invalid {
                what: "box bounds",
                why: format!("lower[{i}] = {} > upper[{i}] = {}", lower[i], upper[i]),
            });
        }
    }
    Ok(())
}

pub(crate) fn clamp_into(v: &[f64], lower: &[f64], upper: &[f64]) -> Vec<f64> {
    v.iter()
        .enumerate()
        .map(|(i, &x)| x.max(lower[i]).min(upper[i]))
        .collect()
}

/// One exact, closed-form projection stage. Intersections flatten into a
/// list of these before running the cyclic scheme, so an iterative
/// projector never nests inside another: the inner solve's residual error
/// would put a floor under the outer per-cycle change that the stopping
/// rule cannot tell apart from slow convergence.
pub(crate) enum PrimitiveStage<'a> {
    Clamp { lower: &'a [f64], upper: &'a [f64] },
    Simplex { total: f64 },
    Halfspace(&'a HalfspaceSet),
    Subspace(&'a AffineBoxSet),
}

impl PrimitiveStage<'_> {
    pub(crate) fn project(&self, v: &[f64]) -> Vec<f64> {
        match self {
            PrimitiveStage::Clamp { lower, upper } => clamp_into(v, lower, upper),
            PrimitiveStage::Simplex { total } => project_simplex(v, *total),
            PrimitiveStage::Halfspace(h) => h.project(v),
            PrimitiveStage::Subspace(s) => s.project_subspace(v),
        }
    }
}

/// Flattens a set into its exact projection stages; the stages' intersection
/// is the set itself.
pub(crate) fn collect_stages<'a>(set: &'a ConvexSet, out: &mut Vec<PrimitiveStage<'a>>) {
    match set {
        ConvexSet::Box(s) => {
            out.push(PrimitiveStage::Clamp { lower: &s.lower, upper: &s.upper })
        }
        ConvexSet::ScaledSimplex(s) => out.push(PrimitiveStage::Simplex { total: s.total }),
        ConvexSet::Halfspace(s) => out.push(PrimitiveStage::Halfspace(s)),
        ConvexSet::AffineBox(s) => {
            if s.chol.is_some() {
                out.push(PrimitiveStage::Subspace(s));
            }
            out.push(PrimitiveStage::Clamp { lower: &s.lower, upper: &s.upper });
        }
        ConvexSet::Intersection(s) => {
            for m in &s.members {
                collect_stages(m, out);
            }
        }
    }
}

/// Concatenated bounds when every set is a box; `None` otherwise.
pub(crate) fn product_box_bounds(sets: &[ConvexSet]) -> Option<(Vec<f64>, Vec<f64>)> {
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for s in sets {
        match s {
            ConvexSet::Box(b) => {
                lower.extend_from_slice(&b.lower);
                upper.extend_from_slice(&b.upper);
            }
            _ => return None,
        }
    }
    Some((lower, upper))
}

impl ConvexSet {
    /// `{x : lower <= x <= upper}`. Bounds may be infinite; zero-dimensional
    /// boxes are allowed (they model an absent player).
    pub fn box_set(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        check_bounds(&lower, &upper)?;
        Ok(ConvexSet::Box(BoxSet { lower, upper }))
    }

    /// `{x in R^dim : x >= 0, sum_i x_i = total}` with `total > 0`.
    pub fn scaled_simplex(total: f64, dim: usize) -> Result<Self> {
        if !(total > 0.0) || !total.is_finite() {
            return Err(Error::Invalid {
                what: "simplex total",
                why: format!("must be a positive real, got {total}"),
            });
        }
        if dim == 0 {
            return Err(Error::Invalid { what: "simplex dim", why: "must be >= 1".into() });
        }
        Ok(ConvexSet::ScaledSimplex(SimplexSet { total, dim }))
    }

    /// `{x : normal . x <= offset}` (or `>=` with [`Sense::Ge`]).
    pub fn halfspace(normal: Vec<f64>, offset: f64, sense: Sense) -> Result<Self> {
        let norm_sq = vecmath::dot(&normal, &normal);
        if !(norm_sq > 0.0) || !norm_sq.is_finite() || !offset.is_finite() {
            return Err(Error::Invalid {
                what: "halfspace",
                why: "normal must be nonzero and finite".into(),
            });
        }
        let mut hs = HalfspaceSet { normal, offset, sense, norm_sq, witness: Vec::new() };
        hs.witness = hs.project(&vec![0.0; hs.normal.len()]);
        Ok(ConvexSet::Halfspace(hs))
    }

    /// `{x : A x = b, lower <= x <= upper}` with `A` given row-major.
    ///
    /// Redundant equality rows are dropped at tolerance
    /// [`defaults::RANK_TOL`]; inconsistent rows or an empty intersection of
    /// the subspace with the box are construction errors.
    pub fn affine_box(
        a: Mat,
        b: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    ) -> Result<Self> {
        if a.rows != b.len() {
            return Err(Error::DimMismatch {
                context: "affine rows",
                expected: a.rows,
                got: b.len(),
            });
        }
        if a.cols != lower.len() {
            return Err(Error::DimMismatch {
                context: "affine bounds",
                expected: a.cols,
                got: lower.len(),
            });
        }
        check_bounds(&lower, &upper)?;
        let (ar, br) = reduce_rows(&a, &b, defaults::RANK_TOL)?;
        let chol = if ar.rows == 0 {
            None
        } else {
            Some(Cholesky::new(&ar.gram()).ok_or_else(|| Error::Numerical(
                "A A^T not positive definite after rank reduction".into(),
            ))?)
        };
        let mut set = AffineBoxSet {
            a_orig: a,
            b_orig: b,
            a: ar,
            b: br,
            lower,
            upper,
            chol,
            witness: Vec::new(),
        };
        let origin = vec![0.0; set.dim()];
        let w = match set.project(&origin, defaults::DYKSTRA_TOL) {
            Ok(w) => w,
            Err(Error::ProjectionStalled { .. }) => {
                return Err(Error::EmptySet("affine subspace does not meet the box".into()))
            }
            Err(e) => return Err(e),
        };
        if !set.contains(&w, 1e-6) {
            return Err(Error::EmptySet(
                "affine subspace does not meet the box".into(),
            ));
        }
        set.witness = w;
        Ok(ConvexSet::AffineBox(set))
    }

    /// Intersection of finitely many sets of equal dimension.
    pub fn intersection(members: Vec<ConvexSet>) -> Result<Self> {
        let dim = match members.first() {
            Some(m) => m.dim(),
            None => {
                return Err(Error::Invalid {
                    what: "intersection",
                    why: "needs at least one member".into(),
                })
            }
        };
        for m in &members {
            if m.dim() != dim {
                return Err(Error::DimMismatch {
                    context: "intersection members",
                    expected: dim,
                    got: m.dim(),
                });
            }
        }
        let probe = IntersectionSet { members, witness: Vec::new() };
        // Disjoint members leave the correction terms growing forever, so a
        // witness-probe stall means emptiness rather than slow convergence.
        let w = match probe.project(&vec![0.0; dim], defaults::DYKSTRA_TOL) {
            Ok(w) => w,
            Err(Error::ProjectionStalled { .. }) => {
                return Err(Error::EmptySet("intersection members are disjoint".into()))
            }
            Err(e) => return Err(e),
        };
        for m in &probe.members {
            if !m.contains(&w, 1e-6) {
                return Err(Error::EmptySet("intersection members are disjoint".into()));
            }
        }
        let mut set = probe;
        set.witness = w;
        Ok(ConvexSet::Intersection(set))
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexSet::Box(s) => s.lower.len(),
            ConvexSet::ScaledSimplex(s) => s.dim,
            ConvexSet::Halfspace(s) => s.normal.len(),
            ConvexSet::AffineBox(s) => s.lower.len(),
            ConvexSet::Intersection(s) => s.members[0].dim(),
        }
    }

    /// Componentwise bounds enclosing the set, when the structure provides
    /// them; entries may be infinite. `None` carries no box information at
    /// all (halfspaces). Intersections combine whatever their members offer.
    pub fn bounding_box(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        match self {
            ConvexSet::Box(s) => Some((s.lower.clone(), s.upper.clone())),
            ConvexSet::ScaledSimplex(s) => {
                Some((vec![0.0; s.dim], vec![s.total; s.dim]))
            }
            ConvexSet::Halfspace(_) => None,
            ConvexSet::AffineBox(s) => Some((s.lower.clone(), s.upper.clone())),
            ConvexSet::Intersection(s) => {
                let mut acc: Option<(Vec<f64>, Vec<f64>)> = None;
                for m in &s.members {
                    let Some((lo, hi)) = m.bounding_box() else { continue };
                    acc = Some(match acc {
                        None => (lo, hi),
                        Some((mut alo, mut ahi)) => {
                            for i in 0..alo.len() {
                                alo[i] = alo[i].max(lo[i]);
                                ahi[i] = ahi[i].min(hi[i]);
                            }
                            (alo, ahi)
                        }
                    });
                }
                acc
            }
        }
    }

    /// A feasible point recorded at construction.
    pub fn witness(&self) -> Vec<f64> {
        match self {
            ConvexSet::Box(s) => clamp_into(&vec![0.0; s.lower.len()], &s.lower, &s.upper),
            ConvexSet::ScaledSimplex(s) => vec![s.total / s.dim as f64; s.dim],
            ConvexSet::Halfspace(s) => s.witness.clone(),
            ConvexSet::AffineBox(s) => s.witness.clone(),
            ConvexSet::Intersection(s) => s.witness.clone(),
        }
    }

    /// Euclidean projection of `v` onto the set.
    ///
    /// Closed form for boxes, simplices and halfspaces; cyclic projections at
    /// tolerance [`defaults::DYKSTRA_TOL`] otherwise. Errors only on
    /// dimension mismatch or a stalled cyclic projection.
    pub fn project(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.dim() {
            return Err(Error::DimMismatch {
                context: "projection input",
                expected: self.dim(),
                got: v.len(),
            });
        }
        self.project_tol(v, defaults::DYKSTRA_TOL)
    }

    /// Projection with an explicit accuracy target for the iterative cases.
    /// Nested cyclic schemes pass a tightened tolerance down so that inner
    /// error stays negligible against the outer stopping rule.
    pub(crate) fn project_tol(&self, v: &[f64], tol: f64) -> Result<Vec<f64>> {
        match self {
            ConvexSet::Box(s) => Ok(clamp_into(v, &s.lower, &s.upper)),
            ConvexSet::ScaledSimplex(s) => Ok(project_simplex(v, s.total)),
            ConvexSet::Halfspace(s) => Ok(s.project(v)),
            ConvexSet::AffineBox(s) => s.project(v, tol),
            ConvexSet::Intersection(s) => s.project(v, tol),
        }
    }

    /// Membership test with absolute tolerance `tol` on every constraint.
    pub fn contains(&self, v: &[f64], tol: f64) -> bool {
        if v.len() != self.dim() {
            return false;
        }
        match self {
            ConvexSet::Box(s) => in_bounds(v, &s.lower, &s.upper, tol),
            ConvexSet::ScaledSimplex(s) => {
                v.iter().all(|&x| x >= -tol)
                    && (v.iter().sum::<f64>() - s.total).abs() <= tol
            }
            ConvexSet::Halfspace(s) => s.violation(v) <= tol,
            ConvexSet::AffineBox(s) => s.contains(v, tol),
            ConvexSet::Intersection(s) => s.members.iter().all(|m| m.contains(v, tol)),
        }
    }

    pub fn to_spec(&self) -> SetSpec {
        match self {
            ConvexSet::Box(s) => SetSpec::Box { lower: s.lower.clone(), upper: s.upper.clone() },
            ConvexSet::ScaledSimplex(s) => SetSpec::ScaledSimplex { total: s.total, dim: s.dim },
            ConvexSet::Halfspace(s) => SetSpec::Halfspace {
                normal: s.normal.clone(),
                offset: s.offset,
                sense: s.sense,
            },
            ConvexSet::AffineBox(s) => SetSpec::AffineBox {
                rows: s.a_orig.rows,
                cols: s.a_orig.cols,
                a: s.a_orig.data().to_vec(),
                b: s.b_orig.clone(),
                lower: s.lower.clone(),
                upper: s.upper.clone(),
            },
            ConvexSet::Intersection(s) => SetSpec::Intersection {
                members: s.members.iter().map(|m| m.to_spec()).collect(),
            },
        }
    }

    /// Bounds of a box set, if this is one.
    pub fn as_box(&self) -> Option<(&[f64], &[f64])> {
        match self {
            ConvexSet::Box(s) => Some((&s.lower, &s.upper)),
            _ => None,
        }
    }
}

fn in_bounds(v: &[f64], lower: &[f64], upper: &[f64], tol: f64) -> bool {
    v.iter()
        .enumerate()
        .all(|(i, &x)| x >= lower[i] - tol && x <= upper[i] + tol)
}

/// Projection onto `{x >= 0, sum x = total}` by sort-and-threshold.
fn project_simplex(v: &[f64], total: f64) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_unstable_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (i, &ui) in u.iter().enumerate() {
        cumsum += ui;
        let t = (cumsum - total) / (i + 1) as f64;
        if ui - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

impl HalfspaceSet {
    fn violation(&self, v: &[f64]) -> f64 {
        let s = vecmath::dot(&self.normal, v);
        match self.sense {
            Sense::Le => s - self.offset,
            Sense::Ge => self.offset - s,
        }
    }

    fn project(&self, v: &[f64]) -> Vec<f64> {
        let viol = self.violation(v);
        if viol <= 0.0 {
            return v.to_vec();
        }
        let dir = match self.sense {
            Sense::Le => -viol / self.norm_sq,
            Sense::Ge => viol / self.norm_sq,
        };
        let mut out = v.to_vec();
        vecmath::axpy(&mut out, dir, &self.normal);
        out
    }
}

impl AffineBoxSet {
    fn dim(&self) -> usize {
        self.lower.len()
    }

    /// Exact projection onto `{A x = b}`: v - A^T (A A^T)^-1 (A v - b).
    fn project_subspace(&self, v: &[f64]) -> Vec<f64> {
        let chol = match &self.chol {
            Some(c) => c,
            None => return v.to_vec(),
        };
        let mut resid = self.a.matvec(v);
        for i in 0..resid.len() {
            resid[i] -= self.b[i];
        }
        let y = chol.solve(&resid);
        let corr = self.a.tr_matvec(&y);
        let mut out = v.to_vec();
        vecmath::axpy(&mut out, -1.0, &corr);
        out
    }

    fn project(&self, v: &[f64], tol: f64) -> Result<Vec<f64>> {
        if self.chol.is_none() {
            return Ok(clamp_into(v, &self.lower, &self.upper));
        }
        let dykstra = Dykstra { tol, ..Dykstra::default() };
        dykstra.run(2, v, |j, t| {
            Ok(match j {
                0 => self.project_subspace(t),
                _ => clamp_into(t, &self.lower, &self.upper),
            })
        })
    }

    fn contains(&self, v: &[f64], tol: f64) -> bool {
        if !in_bounds(v, &self.lower, &self.upper, tol) {
            return false;
        }
        let av = self.a.matvec(v);
        av.iter().zip(&self.b).all(|(&l, &r)| (l - r).abs() <= tol)
    }
}

impl IntersectionSet {
    fn project(&self, v: &[f64], tol: f64) -> Result<Vec<f64>> {
        let mut stages = Vec::new();
        for m in &self.members {
            collect_stages(m, &mut stages);
        }
        let dykstra = Dykstra { tol, ..Dykstra::default() };
        dykstra.run(stages.len(), v, |j, t| Ok(stages[j].project(t)))
    }
}

/// Cyclic projection onto an intersection with Dykstra's correction terms.
///
/// The change measured per cycle is the largest sup-norm move across every
/// in-cycle stage. That equals the change in the stage's correction term,
/// the robust reading: the end-of-cycle iterate alone can repeat exactly
/// while the corrections still evolve, which would stop a naive test at a
/// point outside the intersection.
///
/// Stopping aims `tol` at the distance to the limit, not at the raw change:
/// under linear convergence at rate `theta` the remaining distance is about
/// `change * theta / (1 - theta)`, and badly angled intersections run at
/// `theta` near one, where the change alone understates the error a
/// hundredfold. The rate is estimated from the last few cycles. Errors
/// after `max_cycles`, carrying the last change.
#[derive(Debug, Clone, Copy)]
pub struct Dykstra {
    pub tol: f64,
    pub max_cycles: usize,
}

impl Default for Dykstra {
    fn default() -> Self {
        Dykstra { tol: defaults::DYKSTRA_TOL, max_cycles: defaults::DYKSTRA_MAX_CYCLES }
    }
}

impl Dykstra {
    pub fn project(&self, sets: &[&ConvexSet], v: &[f64]) -> Result<Vec<f64>> {
        for s in sets {
            if s.dim() != v.len() {
                return Err(Error::DimMismatch {
                    context: "cyclic projection",
                    expected: v.len(),
                    got: s.dim(),
                });
            }
        }
        self.run(sets.len(), v, |j, t| sets[j].project(t))
    }

    /// Generic engine over per-set projector callbacks. `project_one(j, t)`
    /// must be the exact projection onto set `j`.
    pub(crate) fn run<F>(&self, n_sets: usize, v: &[f64], mut project_one: F) -> Result<Vec<f64>>
    where
        F: FnMut(usize, &[f64]) -> Result<Vec<f64>>,
    {
        if n_sets == 0 {
            return Ok(v.to_vec());
        }
        let dim = v.len();
        let mut x = v.to_vec();
        let mut corr = vec![vec![0.0; dim]; n_sets];
        // Absolute thresholds are unreachable in doubles once the query sits
        // far from the origin, so the tolerance scales with the input.
        let tol = self.tol * vecmath::norm_inf(v).max(1.0);
        let mut change = f64::INFINITY;
        // Contraction ratios of the last three cycles; their maximum is the
        // rate estimate. Pessimistic until real history exists.
        let mut ratios = [1.0f64; 3];
        for cycle in 0..self.max_cycles {
            let prev_change = change;
            change = 0.0;
            for (j, c) in corr.iter_mut().enumerate() {
                let mut t = x.clone();
                vecmath::axpy(&mut t, 1.0, c);
                let y = project_one(j, &t)?;
                for i in 0..dim {
                    c[i] = t[i] - y[i];
                }
                change = change.max(vecmath::max_abs_diff(&x, &y));
                x = y;
            }
            ratios[cycle % 3] = if prev_change.is_finite() && prev_change > 0.0 {
                change / prev_change
            } else {
                1.0
            };
            let theta = ratios.iter().fold(0.0f64, |a, &b| a.max(b)).min(0.999);
            // One spare decade on the tail bound keeps downstream contracts
            // (idempotence at 1e-9, variational inequality at 1e-8) clear of
            // the projection error even at the scale limit.
            if change * theta / (1.0 - theta) <= 0.1 * tol {
                return Ok(x);
            }
        }
        Err(Error::ProjectionStalled { cycles: self.max_cycles, change })
    }
}

/// Merges per-block boxes into one product box over the concatenated
/// coordinates. Returns None when any member is not a box.
pub fn product_box(sets: &[ConvexSet]) -> Option<ConvexSet> {
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for s in sets {
        let (l, u) = s.as_box()?;
        lower.extend_from_slice(l);
        upper.extend_from_slice(u);
    }
    Some(ConvexSet::box_set(lower, upper).expect("members were validated"))
}

/// Serializable set descriptor. JSON I/O requires finite bounds (IEEE
/// infinities do not round-trip through JSON); build unbounded sets through
/// the constructors instead.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    Box {
        lower: Vec<f64>,
        upper: Vec<f64>,
    },
    ScaledSimplex {
        total: f64,
        dim: usize,
    },
    Halfspace {
        normal: Vec<f64>,
        offset: f64,
        sense: Sense,
    },
    AffineBox {
        rows: usize,
        cols: usize,
        /// Row-major entries, `rows * cols` of them.
        a: Vec<f64>,
        b: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    },
    Intersection {
        members: Vec<SetSpec>,
    },
}

impl SetSpec {
    pub fn build(&self) -> Result<ConvexSet> {
        match self {
            SetSpec::Box { lower, upper } => ConvexSet::box_set(lower.clone(), upper.clone()),
            SetSpec::ScaledSimplex { total, dim } => ConvexSet::scaled_simplex(*total, *dim),
            SetSpec::Halfspace { normal, offset, sense } => {
                ConvexSet::halfspace(normal.clone(), *offset, *sense)
            }
            SetSpec::AffineBox { rows, cols, a, b, lower, upper } => {
                let mat = Mat::from_row_major(*rows, *cols, a.clone())?;
                ConvexSet::affine_box(mat, b.clone(), lower.clone(), upper.clone())
            }
            SetSpec::Intersection { members } => {
                let built: Result<Vec<_>> = members.iter().map(|m| m.build()).collect();
                ConvexSet::intersection(built?)
            }
        }
    }
}
