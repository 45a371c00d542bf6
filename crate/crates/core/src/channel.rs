//! Air-to-ground and terrestrial link budgets.
//!
//! Per-user SNR is load independent: a node splits both its power and its
//! bandwidth evenly over its `N_k` users, so the `1/N_k` factors in the
//! received power and in the per-user noise `N0 * W_k / N_k` cancel.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use rayon::prelude::*;

use crate::density::MassSupport;
use crate::error::{Error, Result};
use crate::scenario::{ChannelParams, NodeKind, NodeSpec, Scenario};

/// Elevation below which a link is treated as pure NLoS (15 degrees).
pub const MIN_LOS_ELEVATION: f64 = PI / 12.0;

pub fn distance3d(node: &NodeSpec, point: (f64, f64)) -> f64 {
    let dx = point.0 - node.x;
    let dy = point.1 - node.y;
    (dx * dx + dy * dy + node.height * node.height).sqrt()
}

/// Elevation of an aerial node as seen from a ground point, in `(0, pi/2]`.
pub fn elevation_angle(node: &NodeSpec, point: (f64, f64)) -> Result<f64> {
    if node.kind != NodeKind::Aerial {
        return Err(Error::NotAerial(node.id));
    }
    // asin(h/d) loses precision near pi/2; atan2 of the same triangle does not.
    let horizontal = (point.0 - node.x).hypot(point.1 - node.y);
    Ok(node.height.atan2(horizontal).min(FRAC_PI_2))
}

/// `alpha * (theta_deg - 15)^gamma`, zero at or below 15 degrees and
/// clamped to 1 above.
pub fn los_probability(params: &ChannelParams, theta: f64) -> f64 {
    if theta <= MIN_LOS_ELEVATION {
        return 0.0;
    }
    let excess_deg = theta.to_degrees() - 15.0;
    (params.alpha() * excess_deg.powf(params.gamma())).clamp(0.0, 1.0)
}

/// Mean linear path loss of an aerial link,
/// `K_o (d/d_o)^2 [P_LoS mu_LoS + (1 - P_LoS) mu_NLoS]`.
pub fn mean_path_loss_uav(params: &ChannelParams, node: &NodeSpec, point: (f64, f64)) -> Result<f64> {
    let theta = elevation_angle(node, point)?;
    let p_los = los_probability(params, theta);
    let d = distance3d(node, point) / params.ref_distance();
    let blend = p_los * params.mu_los() + (1.0 - p_los) * params.mu_nlos();
    Ok(params.k_o() * d * d * blend)
}

/// `K_o (d/d_o)^n`: the loss that turns `P K_o^-1 d^-n` into `P / L`.
pub fn terrestrial_loss(params: &ChannelParams, distance: f64) -> f64 {
    params.k_o() * (distance / params.ref_distance()).powf(params.pathloss_exp())
}

pub fn path_loss_bs(params: &ChannelParams, node: &NodeSpec, point: (f64, f64)) -> Result<f64> {
    if node.kind != NodeKind::Terrestrial {
        return Err(Error::invalid(
            format!("node {}", node.id),
            "terrestrial path loss requested for an aerial node",
        ));
    }
    Ok(terrestrial_loss(params, distance3d(node, point)))
}

/// Linear path loss for either node kind.
pub fn path_loss(params: &ChannelParams, node: &NodeSpec, point: (f64, f64)) -> f64 {
    match node.kind {
        NodeKind::Aerial => mean_path_loss_uav(params, node, point).expect("aerial node"),
        NodeKind::Terrestrial => terrestrial_loss(params, distance3d(node, point)),
    }
}

/// Per-user SNR, `P / (L N0 W)`.
pub fn snr(params: &ChannelParams, node: &NodeSpec, point: (f64, f64)) -> f64 {
    node.tx_power / (path_loss(params, node, point) * params.noise_psd() * node.bandwidth)
}

/// Seconds-times-hertz needed to push `bits` at spectral efficiency
/// `log2(1 + snr)`. `None` when the link carries nothing.
pub fn delay_from_snr(bits: f64, snr: f64) -> Option<f64> {
    if !(snr > 0.0) {
        return None;
    }
    let efficiency = snr.ln_1p() / LN_2;
    let f = bits / efficiency;
    (f.is_finite() && f > 0.0).then_some(f)
}

/// Delay kernel `F(v, s_k) = b / log2(1 + SNR)`.
pub fn delay_kernel(scenario: &Scenario, node: &NodeSpec, point: (f64, f64)) -> Result<f64> {
    let s = snr(scenario.channel(), node, point);
    delay_from_snr(scenario.payload_bits(), s).ok_or(Error::Unreachable(node.id))
}

/// SNR and delay kernel of every node at every support point, node-major.
#[derive(Debug, Clone)]
pub struct LinkTable {
    num_nodes: usize,
    num_points: usize,
    snr: Vec<f64>,
    delay: Vec<f64>,
    bandwidth: Vec<f64>,
}

impl LinkTable {
    pub fn build<S: MassSupport + ?Sized>(scenario: &Scenario, support: &S) -> Result<Self> {
        let nodes = scenario.nodes();
        let n = support.len();
        let bits = scenario.payload_bits();
        let params = scenario.channel();
        let snr: Vec<f64> = (0..nodes.len() * n)
            .into_par_iter()
            .map(|idx| self::snr(params, &nodes[idx / n], support.point(idx % n)))
            .collect();
        let delay = snr
            .par_iter()
            .enumerate()
            .map(|(idx, &s)| delay_from_snr(bits, s).ok_or(Error::Unreachable(nodes[idx / n].id)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LinkTable {
            num_nodes: nodes.len(),
            num_points: n,
            snr,
            delay,
            bandwidth: nodes.iter().map(|n| n.bandwidth).collect(),
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn snr(&self, node: usize, point: usize) -> f64 {
        self.snr[node * self.num_points + point]
    }

    pub fn delay(&self, node: usize, point: usize) -> f64 {
        self.delay[node * self.num_points + point]
    }

    pub fn delay_row(&self, node: usize) -> &[f64] {
        &self.delay[node * self.num_points..(node + 1) * self.num_points]
    }

    pub fn bandwidth(&self, node: usize) -> f64 {
        self.bandwidth[node]
    }
}
