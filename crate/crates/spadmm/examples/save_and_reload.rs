//! Problems built from the declarative block forms round-trip through
//! JSON: generate an instance once, save it, and solve it later from code
//! or with `spadmm solve --problem file.json`.

use spadmm::benchmarks::{build_routing, default_config_routing, RoutingSpec};
use spadmm::driver;
use spadmm::problem::SaddleProblem;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = build_routing(&RoutingSpec::new(8, 11))?;
    let json = inst.problem.to_json()?;
    let path = std::env::temp_dir().join("routing_8_seed11.json");
    std::fs::write(&path, &json)?;
    println!("saved {} bytes to {}", json.len(), path.display());

    let reloaded = SaddleProblem::from_json(&std::fs::read_to_string(&path)?)?;
    let cfg = default_config_routing();
    let a = driver::solve(&inst.problem, &cfg)?;
    let b = driver::solve(&reloaded, &cfg)?;

    // Reloading is exact: the runs are bit-identical, not just close.
    assert_eq!(a.state.z_a, b.state.z_a);
    assert_eq!(a.state.z_b, b.state.z_b);
    println!(
        "original and reloaded runs agree: {} iterations, objective {:.9}",
        a.state.k,
        a.trace.last().expect("nonempty trace").objective
    );
    Ok(())
}
