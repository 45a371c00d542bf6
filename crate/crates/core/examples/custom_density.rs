//! Builds a two-hotspot user density from raw weights, round-trips it
//! through a density file and a scenario file, and solves on a custom
//! deployment.
//!
//!     cargo run --release --example custom_density

use otcell::association::{Instance, SolverConfig};
use otcell::density::{DensityGrid, DensitySpec};
use otcell::scenario::{grid_deployment, Area, ChannelParams, DeploymentPlan, Scenario};

fn main() -> otcell::Result<()> {
    let area = Area::new(0.0, 6000.0, 0.0, 3000.0)?;
    let (nx, ny) = (120, 60);

    // a stadium and a station, plus a thin uniform floor
    let blobs = [((1500.0, 1500.0), 250.0, 3.0), ((4500.0, 1000.0), 500.0, 1.0)];
    let mut weights = Vec::with_capacity(nx * ny);
    let probe = DensityGrid::from_weights(area, nx, ny, vec![1.0; nx * ny])?;
    for iy in 0..ny {
        for ix in 0..nx {
            let (x, y) = probe.cell_center(ix, iy);
            let w: f64 = blobs
                .iter()
                .map(|&((cx, cy), s, h)| h * (-((x - cx).powi(2) + (y - cy).powi(2)) / (2.0 * s * s)).exp())
                .sum();
            weights.push(w + 0.01);
        }
    }
    let density = DensityGrid::from_weights(area, nx, ny, weights)?;

    let dir = std::env::temp_dir().join("otcell-custom-density");
    std::fs::create_dir_all(&dir).expect("temp dir");
    density.write(dir.join("users.grid"))?;

    let plan = DeploymentPlan {
        num_uav: 6,
        num_bs: 2,
        ..DeploymentPlan::default()
    };
    let scenario = Scenario::new(
        area,
        grid_deployment(&area, &plan)?,
        ChannelParams::dense_urban(),
        500,
        2e6,
    )?
    .with_density(DensitySpec::GridFile {
        path: "users.grid".into(),
    })?;
    scenario.write(dir.join("scenario.toml"))?;
    println!("wrote {}", dir.join("scenario.toml").display());

    let reloaded = otcell::scenario::load_scenario(dir.join("scenario.toml"))?;
    let grid = reloaded.density().build(*reloaded.area(), nx, ny)?;
    let inst = Instance::new(&reloaded, &grid)?;
    let snr = inst.snr_association();
    let (ot, trace) = inst.ot_association(&SolverConfig::default(), &snr)?;

    println!("max-SNR   {:.4} s", inst.average_delay(&snr));
    println!(
        "transport {:.4} s ({} iterations)",
        inst.average_delay(&ot),
        trace.iterations
    );
    for (s, n) in inst.node_stats(&ot).iter().zip(reloaded.nodes()) {
        println!("node {} at ({:.0}, {:.0}): {:.1} users", s.id, n.x, n.y, s.load);
    }
    Ok(())
}
