//! The degenerate one-player mode: with the maximizer absent the driver
//! reduces to plain consensus ADMM. Minimizes sum_i (x_i - c_i)^2 over the
//! probability simplex, which is just the projection of c, so the answer
//! is easy to eyeball.

use spadmm::driver::admm_minimize;
use spadmm::problem::{BilinearQuadratic, BlockObjective, SaddleProblem, SolverConfig};
use spadmm::ConvexSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = [0.9, 0.4, -0.2, 0.6];
    let blocks = c
        .iter()
        .map(|&ci| {
            BlockObjective::bilinear_quadratic(
                BilinearQuadratic {
                    quad_x: 2.0,
                    lin_x: -2.0 * ci,
                    constant: ci * ci,
                    ..Default::default()
                },
                1,
                0,
            )
        })
        .collect::<Result<_, _>>()?;
    let locals = c
        .iter()
        .map(|_| ConvexSet::box_set(vec![-10.0], vec![10.0]))
        .collect::<Result<_, _>>()?;
    let p = SaddleProblem::minimization(blocks, locals, ConvexSet::scaled_simplex(1.0, c.len())?)?;

    let out = admm_minimize(&p, &SolverConfig::default())?;
    println!("{} after {} iterations", out.termination, out.state.k);
    println!("target c:  {c:?}");
    println!("solution:  {:?}", out.state.z_a);
    println!("objective: {:.8}", p.total_objective(&out.state.z_a, &[]));
    println!("sum:       {:.8}", out.state.z_a.iter().sum::<f64>());
    Ok(())
}
