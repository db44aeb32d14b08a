//! How the consensus penalty shapes convergence on the jamming game: mild
//! penalties let the blocks move and settle in a handful of iterations,
//! stiff ones pin every block to the consensus point and crawl.

use spadmm::benchmarks::{build_power_allocation, default_config_power, PowerAllocationSpec};
use spadmm::driver;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = build_power_allocation(&PowerAllocationSpec::standard())?;
    let equilibrium = 2.860;

    println!("  rho   iterations   within 5e-3 at   final objective");
    for rho in [0.05, 0.1, 0.5, 1.0, 5.0, 10.0] {
        let mut cfg = default_config_power();
        cfg.rho_a = rho;
        cfg.rho_b = rho;
        cfg.max_iters = 5_000;
        let out = driver::solve(&p, &cfg)?;
        let entry = out
            .trace
            .iter()
            .find(|t| (t.objective - equilibrium).abs() <= 5e-3)
            .map_or("never".into(), |t| format!("k={}", t.k));
        let last = out.trace.last().expect("at least one iteration");
        println!(
            "{:5}   {:10}   {:>14}   {:.6}",
            rho, out.state.k, entry, last.objective
        );
    }
    Ok(())
}
