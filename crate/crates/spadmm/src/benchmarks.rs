//! The two bundled problem families: adversarial power allocation over
//! parallel channels, and a zero-sum routing game on a random digraph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dense::Mat;
use crate::error::{Error, Result};
use crate::problem::{
    BilinearQuadratic, BlockObjective, BlockSolverKind, InitMode, SaddleProblem, SolverConfig,
};
use crate::sets::{ConvexSet, Sense};

/// Power allocation over parallel channels: a maximizer splits a power
/// budget, an adversary splits a jamming-noise budget, and the payoff is
/// the total capacity `sum_i ln(1 + y_i / (sigma_i + x_i))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerAllocationSpec {
    /// Per-channel receiver noise, all positive.
    pub sigma: Vec<f64>,
    /// The minimizer's total jamming budget.
    pub noise_budget: f64,
    /// The maximizer's total power budget.
    pub power_budget: f64,
    /// Per-channel caps; default to the respective budgets.
    pub noise_cap: f64,
    pub power_cap: f64,
}

impl PowerAllocationSpec {
    /// The ten-channel instance: `sigma = [2,6,5,8,3,9,5,6,7,3]`, noise
    /// budget 10, power budget 20.
    pub fn standard() -> Self {
        PowerAllocationSpec {
            sigma: vec![2.0, 6.0, 5.0, 8.0, 3.0, 9.0, 5.0, 6.0, 7.0, 3.0],
            noise_budget: 10.0,
            power_budget: 20.0,
            noise_cap: 10.0,
            power_cap: 20.0,
        }
    }

    pub fn channels(&self) -> usize {
        self.sigma.len()
    }
}

pub fn build_power_allocation(spec: &PowerAllocationSpec) -> Result<SaddleProblem> {
    if spec.sigma.is_empty() {
        return Err(Error::Invalid { what: "power allocation", why: "needs channels".into() });
    }
    for &s in &spec.sigma {
        if !(s > 0.0) {
            return Err(Error::Invalid {
                what: "power allocation",
                why: format!("sigma must be positive, got {s}"),
            });
        }
    }
    for (name, v) in [
        ("noise_budget", spec.noise_budget),
        ("power_budget", spec.power_budget),
        ("noise_cap", spec.noise_cap),
        ("power_cap", spec.power_cap),
    ] {
        if !(v > 0.0) {
            return Err(Error::Invalid {
                what: "power allocation",
                why: format!("{name} must be positive, got {v}"),
            });
        }
    }
    let n = spec.channels();
    let blocks = spec
        .sigma
        .iter()
        .map(|&s| BlockObjective::log_capacity(s))
        .collect::<Result<Vec<_>>>()?;
    let local_a =
        (0..n).map(|_| ConvexSet::box_set(vec![0.0], vec![spec.noise_cap])).collect::<Result<_>>()?;
    let local_b =
        (0..n).map(|_| ConvexSet::box_set(vec![0.0], vec![spec.power_cap])).collect::<Result<_>>()?;
    SaddleProblem::new(
        blocks,
        local_a,
        local_b,
        ConvexSet::scaled_simplex(spec.noise_budget, n)?,
        ConvexSet::scaled_simplex(spec.power_budget, n)?,
    )
}

/// Defaults tuned for the power-allocation family. The blocks are smooth
/// but not bilinear-quadratic, so they run on the extragradient sub-solver,
/// which reaches tight tolerances at linear rate.
pub fn default_config_power() -> SolverConfig {
    SolverConfig {
        rho_a: 0.1,
        rho_b: 0.1,
        block_solver: BlockSolverKind::Extragradient,
        block_solver_tol: 1e-9,
        init: InitMode::Zeros,
        ..Default::default()
    }
}

/// Routing game on a random strongly connected digraph. Both players pick
/// an occupancy distribution over edges; each edge costs the minimizer
/// `x (x + y)`. The maximizer must keep at least `state1_min_density` mass
/// entering node 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoutingSpec {
    pub n_nodes: usize,
    pub expected_out_degree: f64,
    pub state1_min_density: f64,
    pub seed: u64,
}

impl RoutingSpec {
    pub fn new(n_nodes: usize, seed: u64) -> Self {
        RoutingSpec { n_nodes, expected_out_degree: 5.0, state1_min_density: 0.1, seed }
    }
}

/// A generated routing instance: the edge list (tail, head) in generation
/// order, the assembled problem, and a feasible maximizer point routing the
/// required mass through node 0 (uniform flow on a short cycle).
#[derive(Debug, Clone)]
pub struct RoutingInstance {
    pub spec: RoutingSpec,
    pub edges: Vec<(usize, usize)>,
    pub problem: SaddleProblem,
    pub witness_b: Vec<f64>,
}

impl RoutingInstance {
    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Indices of edges entering the given node.
    pub fn in_edges(&self, node: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, &(_, h))| (h == node).then_some(i))
            .collect()
    }
}

pub fn build_routing(spec: &RoutingSpec) -> Result<RoutingInstance> {
    if spec.n_nodes < 2 {
        return Err(Error::Invalid {
            what: "routing",
            why: format!("needs at least 2 nodes, got {}", spec.n_nodes),
        });
    }
    if !(spec.state1_min_density > 0.0 && spec.state1_min_density < 1.0) {
        return Err(Error::Invalid {
            what: "routing",
            why: format!("state1_min_density must lie in (0,1), got {}", spec.state1_min_density),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n_nodes;
    let p_edge = (spec.expected_out_degree / n as f64).min(1.0);
    // The density constraint needs a cycle through node 0 short enough that
    // uniform flow on it carries the required mass.
    let max_cycle_len = (1.0 / spec.state1_min_density).floor() as usize;

    for _attempt in 0..100 {
        let mut adjacency = vec![vec![false; n]; n];
        for (i, row) in adjacency.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                if i != j && rng.random::<f64>() < p_edge {
                    *cell = true;
                }
            }
        }
        if !strongly_connected(&adjacency) {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            for w in 0..n {
                adjacency[perm[w]][perm[(w + 1) % n]] = true;
            }
            debug_assert!(strongly_connected(&adjacency));
        }
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| i != j).map(move |j| (i, j)))
            .filter(|&(i, j)| adjacency[i][j])
            .collect();
        let cycle = match shortest_cycle_through(&adjacency, 0) {
            Some(c) if c.len() <= max_cycle_len => c,
            _ => continue,
        };
        let mut witness_b = vec![0.0; edges.len()];
        let edge_index: std::collections::HashMap<(usize, usize), usize> =
            edges.iter().copied().enumerate().map(|(i, e)| (e, i)).collect();
        let share = 1.0 / cycle.len() as f64;
        for pair in &cycle {
            witness_b[edge_index[pair]] = share;
        }
        let problem = routing_from_edges(n, &edges, spec.state1_min_density)?;
        return Ok(RoutingInstance { spec: spec.clone(), edges, problem, witness_b });
    }
    Err(Error::Invalid {
        what: "routing",
        why: format!(
            "no generated graph admitted a cycle through node 0 of length <= {max_cycle_len} \
             in 100 attempts"
        ),
    })
}

/// Assembles the routing game for an explicit edge list.
pub fn routing_from_edges(
    n_nodes: usize,
    edges: &[(usize, usize)],
    state1_min_density: f64,
) -> Result<SaddleProblem> {
    let m = edges.len();
    let blocks = (0..m)
        .map(|_| {
            BlockObjective::bilinear_quadratic(
                BilinearQuadratic { quad_x: 2.0, cross: 1.0, ..Default::default() },
                1,
                1,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = |_: usize| ConvexSet::box_set(vec![0.0], vec![1.0]);
    let local_a = (0..m).map(unit).collect::<Result<_>>()?;
    let local_b = (0..m).map(unit).collect::<Result<_>>()?;
    let global_a = flow_polytope(n_nodes, edges)?;
    let mut normal = vec![0.0; m];
    for (i, &(_, head)) in edges.iter().enumerate() {
        if head == 0 {
            normal[i] = 1.0;
        }
    }
    let state1 = ConvexSet::halfspace(normal, state1_min_density, Sense::Ge)?;
    let global_b = ConvexSet::intersection(vec![flow_polytope(n_nodes, edges)?, state1])?;
    SaddleProblem::new(blocks, local_a, local_b, global_a, global_b)
}

/// Stationary edge-occupancy polytope: per-node flow conservation, total
/// mass one, occupancies in `[0,1]`. One conservation row is redundant and
/// dropped by the rank reduction inside the affine-box constructor.
pub fn flow_polytope(n_nodes: usize, edges: &[(usize, usize)]) -> Result<ConvexSet> {
    let m = edges.len();
    let mut rows = Vec::with_capacity(n_nodes + 1);
    let mut rhs = Vec::with_capacity(n_nodes + 1);
    for v in 0..n_nodes {
        let mut row = vec![0.0; m];
        for (i, &(tail, head)) in edges.iter().enumerate() {
            if tail == v {
                row[i] += 1.0;
            }
            if head == v {
                row[i] -= 1.0;
            }
        }
        rows.push(row);
        rhs.push(0.0);
    }
    rows.push(vec![1.0; m]);
    rhs.push(1.0);
    ConvexSet::affine_box(Mat::from_rows(rows)?, rhs, vec![0.0; m], vec![1.0; m])
}

/// Defaults tuned for the routing family: unit penalties, the closed-form
/// block solver, and the uniform-projected start.
pub fn default_config_routing() -> SolverConfig {
    SolverConfig {
        rho_a: 1.0,
        rho_b: 1.0,
        block_solver: BlockSolverKind::Analytic,
        init: InitMode::UniformProjected,
        ..Default::default()
    }
}

fn strongly_connected(adjacency: &[Vec<bool>]) -> bool {
    let n = adjacency.len();
    let reach = |forward: bool| -> usize {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                let connected = if forward { adjacency[v][w] } else { adjacency[w][v] };
                if connected && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count
    };
    reach(true) == n && reach(false) == n
}

/// Shortest directed cycle through `root` as a list of (tail, head) edges,
/// via breadth-first distances from `root` plus the entering edge closing
/// the cycle. `None` when no edge returns to `root`.
fn shortest_cycle_through(adjacency: &[Vec<bool>], root: usize) -> Option<Vec<(usize, usize)>> {
    let n = adjacency.len();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    dist[root] = 0;
    queue.push_back(root);
    while let Some(v) = queue.pop_front() {
        for w in 0..n {
            if adjacency[v][w] && dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let closer = (0..n)
        .filter(|&u| adjacency[u][root] && dist[u] != usize::MAX)
        .min_by_key(|&u| (dist[u], u))?;
    let mut path = vec![(closer, root)];
    let mut v = closer;
    while v != root {
        path.push((parent[v], v));
        v = parent[v];
    }
    path.reverse();
    Some(path)
}
