//! Path loss, SNR and per-bit delay along a ground track, for one UAV and
//! one macro BS.
//!
//!     cargo run --example channel_profile

use otcell::channel::{delay_kernel, elevation_angle, los_probability, path_loss, snr};
use otcell::scenario::{Area, ChannelParams, NodeKind, NodeSpec, Scenario};

fn main() -> otcell::Result<()> {
    let uav = NodeSpec {
        id: 0,
        kind: NodeKind::Aerial,
        x: 0.0,
        y: 0.0,
        height: 200.0,
        tx_power: 1.0,
        bandwidth: 1e6,
    };
    let bs = NodeSpec {
        id: 1,
        kind: NodeKind::Terrestrial,
        x: 0.0,
        y: 0.0,
        height: 20.0,
        tx_power: 40.0,
        bandwidth: 1e6,
    };
    let scenario = Scenario::new(
        Area::square(4000.0)?,
        vec![uav, bs],
        ChannelParams::dense_urban(),
        300,
        1e6,
    )?;
    let params = scenario.channel();

    println!(
        "{:>7} {:>7} {:>6} {:>10} {:>10} {:>9} {:>10} {:>10} {:>9}",
        "r_m", "theta", "p_los", "uav_L_dB", "uav_snr_dB", "uav_F", "bs_L_dB", "bs_snr_dB", "bs_F"
    );
    for r in [0.0, 50.0, 100.0, 200.0, 400.0, 746.4, 800.0, 1200.0, 2000.0, 3000.0] {
        let pt = (r, 0.0);
        let theta = elevation_angle(&uav, pt)?;
        println!(
            "{r:>7.1} {:>7.2} {:>6.3} {:>10.2} {:>10.2} {:>9.0} {:>10.2} {:>10.2} {:>9.0}",
            theta.to_degrees(),
            los_probability(params, theta),
            db(path_loss(params, &uav, pt)),
            db(snr(params, &uav, pt)),
            delay_kernel(&scenario, &uav, pt)?,
            db(path_loss(params, &bs, pt)),
            db(snr(params, &bs, pt)),
            delay_kernel(&scenario, &bs, pt)?,
        );
    }
    Ok(())
}

fn db(x: f64) -> f64 {
    10.0 * x.log10()
}
