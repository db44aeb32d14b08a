//! Head to head on one routing instance: run the splitting driver to
//! convergence, then give the projection-free Frank-Wolfe baseline exactly
//! the same wall-clock budget and certify both answers with the same
//! best-response bracket.

use spadmm::benchmarks::{build_routing, default_config_routing, RoutingSpec};
use spadmm::diagnostics::saddle_certificate;
use spadmm::{driver, spfw};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = build_routing(&RoutingSpec::new(20, 7))?;
    let cfg = default_config_routing();

    let adm = driver::solve(&inst.problem, &cfg)?;
    let budget = adm.wall_time;

    let mut fw_cfg = cfg.clone();
    fw_cfg.max_iters = usize::MAX; // the clock is the stop
    let fw = spfw::spfw_solve_with_budget(&inst.problem, &fw_cfg, 100, Some(budget))?;

    let tol = cfg.best_response_tol;
    let ca = saddle_certificate(&inst.problem, &adm.state.z_a, &adm.state.z_b, tol)?;
    let cf = saddle_certificate(&inst.problem, &fw.state.z_a, &fw.state.z_b, tol)?;

    println!("budget: {:.2} ms (the splitting driver's time to converge)", budget.as_secs_f64() * 1e3);
    println!("sp-admm  {:>8} iterations   gap {:.3e}", adm.state.k, ca.width);
    println!("sp-fw    {:>8} iterations   gap {:.3e}", fw.state.k, cf.width);
    Ok(())
}
