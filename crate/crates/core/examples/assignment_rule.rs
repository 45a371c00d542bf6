//! Evaluates the load-weighted assignment rule at a single location while
//! one node's mass grows: congested cells hand users to their neighbours.
//!
//!     cargo run --example assignment_rule

use otcell::association::assignment_rule;
use otcell::channel::delay_kernel;
use otcell::scenario::Scenario;

fn main() -> otcell::Result<()> {
    let scenario = Scenario::urban_hotspot(200.0)?;
    let point = (1300.0, 1300.0);

    println!("per-bit delay kernel at {point:?}:");
    for node in scenario.nodes() {
        println!(
            "  node {} ({:?}): {:.0} s/Hz",
            node.id,
            node.kind,
            delay_kernel(&scenario, node, point)?
        );
    }

    let k = scenario.nodes().len();
    println!("\n{:>10} {:>8}", "a_4", "serves");
    for a4 in [0.05, 0.1, 0.2, 0.3, 0.4, 0.6, 0.8] {
        let rest = (1.0 - a4) / (k - 1) as f64;
        let masses: Vec<f64> = (0..k).map(|i| if i == 4 { a4 } else { rest }).collect();
        println!("{a4:>10.2} {:>8}", assignment_rule(&scenario, &masses, point)?);
    }
    Ok(())
}
