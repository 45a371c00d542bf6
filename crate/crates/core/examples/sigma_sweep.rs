//! Average delay of max-SNR and transport association as the hotspot
//! widens. Writes the table as CSV when given a path.
//!
//!     cargo run --release --example sigma_sweep -- [out.csv]

use otcell::metrics::{default_sigmas, sweep_sigma, write_sweep_csv, SweepSettings};
use otcell::scenario::Scenario;

fn main() -> otcell::Result<()> {
    let scenario = Scenario::urban_hotspot(1000.0)?;
    let rows = sweep_sigma(&scenario, &default_sigmas(), &SweepSettings::default())?;

    println!(
        "{:>8} {:>10} {:>10} {:>9} {:>9}",
        "sigma_m", "snr_s", "ot_s", "gain_%", "fixed_pt"
    );
    for r in &rows {
        println!(
            "{:>8.0} {:>10.4} {:>10.4} {:>9.1} {:>9}",
            r.sigma, r.delay_snr, r.delay_ot, r.reduction_pct, r.converged
        );
    }

    if let Some(path) = std::env::args().nth(1) {
        let file = std::fs::File::create(&path).expect("create output file");
        write_sweep_csv(&rows, file)?;
        println!("wrote {path}");
    }
    Ok(())
}
