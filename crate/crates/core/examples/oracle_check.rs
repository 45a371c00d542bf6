//! Compares the transport iteration with exhaustive search on small random
//! instances and lists every trial where they disagree.
//!
//!     cargo run --release --example oracle_check -- [seed] [trials]

use otcell::association::SolverConfig;
use otcell::oracle::oracle_check;

fn main() -> otcell::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().map_or(Ok(0), |s| s.parse()).expect("seed");
    let trials: usize = args.next().map_or(Ok(20), |s| s.parse()).expect("trial count");

    let report = oracle_check(seed, trials, &SolverConfig::default())?;
    println!(
        "{:>5} {:>6} {:>11} {:>11} {:>9} {:>6}",
        "trial", "points", "oracle_s", "solver_s", "gap", "fixed"
    );
    for t in report.trials.iter().filter(|t| t.relative_gap > 1e-6) {
        println!(
            "{:>5} {:>6} {:>11.5} {:>11.5} {:>9.2e} {:>6}",
            t.trial, t.points, t.oracle, t.solver, t.relative_gap, t.converged
        );
    }
    println!(
        "\n{}/{} match the optimum, {} reached a certified fixed point, largest gap {:.2}%",
        report.matches(1e-6),
        trials,
        report.converged(),
        100.0 * report.max_gap()
    );
    let optimal_fixed = report.trials.iter().filter(|t| t.oracle_violation <= 1e-9).count();
    println!("{optimal_fixed}/{trials} optima are themselves fixed points of the assignment rule");
    Ok(())
}
