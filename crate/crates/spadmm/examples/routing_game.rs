//! Adversarial routing on a random strongly connected digraph. Both
//! players pick stationary edge-occupancy distributions; each edge costs
//! the router x(x + y), and the adversary must keep at least 10% of its
//! mass flowing into node 0.

use spadmm::benchmarks::{build_routing, default_config_routing, RoutingSpec};
use spadmm::driver;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = build_routing(&RoutingSpec::new(20, 7))?;
    println!(
        "{} nodes, {} edges (generator seed {})",
        inst.spec.n_nodes,
        inst.n_edges(),
        inst.spec.seed
    );

    let out = driver::solve(&inst.problem, &default_config_routing())?;
    println!(
        "{} after {} iterations ({:.1} ms)",
        out.termination,
        out.state.k,
        out.wall_time.as_secs_f64() * 1e3
    );
    if let Some((l, u)) = out.bracket {
        println!("equilibrium value in [{l:.9}, {u:.9}], gap {:.2e}", u - l);
    }

    let mut by_load: Vec<usize> = (0..inst.n_edges()).collect();
    by_load.sort_by(|&i, &j| out.state.z_a[j].partial_cmp(&out.state.z_a[i]).unwrap());
    println!("\nbusiest router edges:");
    println!("  edge        router      adversary");
    for &e in by_load.iter().take(8) {
        let (tail, head) = inst.edges[e];
        println!(
            "{:3} -> {:<3}   {:9.5}   {:9.5}",
            tail, head, out.state.z_a[e], out.state.z_b[e]
        );
    }

    let into_node0: f64 = inst.in_edges(0).iter().map(|&e| out.state.z_b[e]).sum();
    println!("\nadversary mass into node 0: {into_node0:.4} (constraint: at least 0.10)");
    Ok(())
}
