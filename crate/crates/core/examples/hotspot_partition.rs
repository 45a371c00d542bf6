//! Solves the urban hotspot deployment with max-SNR and with the transport
//! iteration, then prints per-node loads and a coarse label map.
//!
//!     cargo run --release --example hotspot_partition -- [sigma_m] [grid]

use otcell::association::{Instance, Partition, SolverConfig};
use otcell::density::DensityGrid;
use otcell::metrics::NodeStats;
use otcell::scenario::Scenario;

fn main() -> otcell::Result<()> {
    let mut args = std::env::args().skip(1);
    let sigma: f64 = args.next().map_or(Ok(200.0), |s| s.parse()).expect("sigma in metres");
    let n: usize = args.next().map_or(Ok(200), |s| s.parse()).expect("grid size");

    let scenario = Scenario::urban_hotspot(sigma)?;
    let grid = scenario.density().build(*scenario.area(), n, n)?;
    let inst = Instance::new(&scenario, &grid)?;

    let snr = inst.snr_association();
    let (ot, trace) = inst.ot_association(&SolverConfig::default(), &snr)?;

    println!("sigma = {sigma} m, {n}x{n} grid");
    println!("max-SNR   average delay {:.4} s", inst.average_delay(&snr));
    println!(
        "transport average delay {:.4} s after {} iterations (certified fixed point: {}, violation {:.2e})",
        inst.average_delay(&ot),
        trace.iterations,
        trace.converged,
        trace.violation
    );
    println!("{} of {} cells change owner", snr.differing_cells(&ot), n * n);

    println!("\nmax-SNR cells");
    print_stats(&inst.node_stats(&snr));
    println!("\ntransport cells");
    print_stats(&inst.node_stats(&ot));

    println!("\nmax-SNR map (north up)");
    print_map(&grid, &snr, 40);
    println!("\ntransport map (north up)");
    print_map(&grid, &ot, 40);
    Ok(())
}

fn print_stats(stats: &[NodeStats]) {
    println!(
        "{:>4} {:>12} {:>8} {:>8} {:>9}",
        "id", "kind", "users", "delay_s", "snr_dB"
    );
    for s in stats {
        let snr_db = s.mean_snr.map_or(f64::NAN, |v| 10.0 * v.log10());
        println!(
            "{:>4} {:>12} {:>8.1} {:>8.4} {:>9.1}",
            s.id,
            format!("{:?}", s.kind).to_lowercase(),
            s.load,
            s.delay_contribution,
            snr_db
        );
    }
}

fn print_map(grid: &DensityGrid, p: &Partition, width: usize) {
    let step = (grid.nx() / width).max(1);
    for iy in (0..grid.ny()).step_by(step).rev() {
        let row: String = (0..grid.nx())
            .step_by(step)
            .map(|ix| char::from_digit(p.label_id(grid.index(ix, iy)) % 36, 36).unwrap_or('?'))
            .collect();
        println!("{row}");
    }
}
