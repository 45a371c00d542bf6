//! Deployment geometry, propagation constants and scenario files.
//!
//! A scenario file is TOML with four required tables and one optional one:
//!
//! ```toml
//! [area]
//! x_min = 0.0
//! x_max = 4000.0
//! y_min = 0.0
//! y_max = 4000.0
//!
//! [channel]
//! carrier_freq = 2e9      # Hz
//! ref_distance = 1.0      # m
//! mu_los_db = 3.0         # or `mu_los` (linear)
//! mu_nlos_db = 23.0       # or `mu_nlos` (linear)
//! alpha = 0.36
//! gamma = 0.21
//! pathloss_exp = 3.0
//! noise_psd_db = -170.0   # dBm/Hz, or `noise_psd` in W/Hz
//!
//! [[nodes]]
//! id = 0
//! kind = "aerial"         # or "terrestrial"
//! x = 1000.0
//! y = 1000.0
//! height = 200.0
//! tx_power = 1.0          # W
//! bandwidth = 1e6         # Hz
//!
//! [users]
//! N = 300
//! b = 1e6
//!
//! [density]               # optional, defaults to uniform
//! kind = "gaussian"
//! center = [1300.0, 1300.0]
//! sigma = 1000.0
//! ```
//!
//! All units are SI. Keys ending in `_db` are converted to linear once, on
//! load; writing a scenario always emits the linear keys.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::density::DensitySpec;
use crate::error::{Error, Result};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Area {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Area {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        let area = Area {
            x_min,
            x_max,
            y_min,
            y_max,
        };
        area.validate()?;
        Ok(area)
    }

    /// Axis-aligned square `[0, side] x [0, side]`.
    pub fn square(side: f64) -> Result<Self> {
        Self::new(0.0, side, 0.0, side)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::invalid("area", "bounds must be finite"));
        }
        if self.x_max <= self.x_min {
            return Err(Error::invalid("area", "x_max must exceed x_min"));
        }
        if self.y_max <= self.y_min {
            return Err(Error::invalid("area", "y_max must exceed y_min"));
        }
        Ok(())
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn center(&self) -> (f64, f64) {
        (0.5 * (self.x_min + self.x_max), 0.5 * (self.y_min + self.y_max))
    }

    /// Closed-rectangle membership.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x_min && x <= self.x_max && y >= self.y_min && y <= self.y_max
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Terrestrial,
    Aerial,
}

/// One base station or UAV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeSpec {
    pub id: u32,
    pub kind: NodeKind,
    pub x: f64,
    pub y: f64,
    /// Antenna height above ground, m.
    pub height: f64,
    /// Total transmit power, W.
    pub tx_power: f64,
    /// Total bandwidth shared by the node's users, Hz.
    pub bandwidth: f64,
}

impl NodeSpec {
    pub fn validate(&self) -> Result<()> {
        let what = || format!("node {}", self.id);
        if !(self.x.is_finite() && self.y.is_finite()) {
            return Err(Error::invalid(what(), "position must be finite"));
        }
        if !(self.height > 0.0 && self.height.is_finite()) {
            return Err(Error::invalid(what(), "height must be > 0"));
        }
        if !(self.tx_power > 0.0 && self.tx_power.is_finite()) {
            return Err(Error::invalid(what(), "tx_power must be > 0"));
        }
        if !(self.bandwidth > 0.0 && self.bandwidth.is_finite()) {
            return Err(Error::invalid(what(), "bandwidth must be > 0"));
        }
        Ok(())
    }
}

/// Propagation constants shared by every link.
///
/// Attenuations and the noise density are stored linear. The free-space
/// constant `K_o = (4 pi f_c d_o / c)^2` is computed once at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    carrier_freq: f64,
    ref_distance: f64,
    mu_los: f64,
    mu_nlos: f64,
    alpha: f64,
    gamma: f64,
    pathloss_exp: f64,
    noise_psd: f64,
    k_o: f64,
}

impl ChannelParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        carrier_freq: f64,
        ref_distance: f64,
        mu_los: f64,
        mu_nlos: f64,
        alpha: f64,
        gamma: f64,
        pathloss_exp: f64,
        noise_psd: f64,
    ) -> Result<Self> {
        let named = [
            ("carrier_freq", carrier_freq),
            ("ref_distance", ref_distance),
            ("mu_los", mu_los),
            ("mu_nlos", mu_nlos),
            ("alpha", alpha),
            ("gamma", gamma),
            ("pathloss_exp", pathloss_exp),
            ("noise_psd", noise_psd),
        ];
        for (name, value) in named {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::invalid("channel", format!("{name} must be > 0")));
            }
        }
        if mu_nlos < mu_los {
            return Err(Error::invalid("channel", "mu_nlos must be >= mu_los"));
        }
        let k_o = (4.0 * PI * carrier_freq * ref_distance / SPEED_OF_LIGHT).powi(2);
        Ok(ChannelParams {
            carrier_freq,
            ref_distance,
            mu_los,
            mu_nlos,
            alpha,
            gamma,
            pathloss_exp,
            noise_psd,
            k_o,
        })
    }

    /// Dense-urban constants at 2 GHz: n = 3, 3/23 dB LoS/NLoS attenuation,
    /// alpha = 0.36, gamma = 0.21, N0 = -170 dBm/Hz.
    pub fn dense_urban() -> Self {
        Self::new(
            2e9,
            1.0,
            db_to_linear(3.0),
            db_to_linear(23.0),
            0.36,
            0.21,
            3.0,
            dbm_to_watts(-170.0),
        )
        .expect("dense-urban constants are valid")
    }

    pub fn carrier_freq(&self) -> f64 {
        self.carrier_freq
    }
    pub fn ref_distance(&self) -> f64 {
        self.ref_distance
    }
    pub fn mu_los(&self) -> f64 {
        self.mu_los
    }
    pub fn mu_nlos(&self) -> f64 {
        self.mu_nlos
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn pathloss_exp(&self) -> f64 {
        self.pathloss_exp
    }
    /// Noise power spectral density, W/Hz.
    pub fn noise_psd(&self) -> f64 {
        self.noise_psd
    }
    pub fn k_o(&self) -> f64 {
        self.k_o
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// A validated deployment: area, nodes, channel and traffic constants.
///
/// Nodes are kept sorted by id, so "lowest index" and "lowest id" coincide
/// wherever ties are broken.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    area: Area,
    nodes: Vec<NodeSpec>,
    channel: ChannelParams,
    total_users: u32,
    payload_bits: f64,
    density: DensitySpec,
}

impl Scenario {
    pub fn new(
        area: Area,
        mut nodes: Vec<NodeSpec>,
        channel: ChannelParams,
        total_users: u32,
        payload_bits: f64,
    ) -> Result<Self> {
        area.validate()?;
        if nodes.is_empty() {
            return Err(Error::invalid("nodes", "at least one node is required"));
        }
        let mut seen = HashSet::new();
        for node in &nodes {
            node.validate()?;
            if !seen.insert(node.id) {
                return Err(Error::invalid("nodes", format!("duplicate id {}", node.id)));
            }
            if !area.contains(node.x, node.y) {
                return Err(Error::invalid(
                    format!("node {}", node.id),
                    format!("position ({}, {}) lies outside the area", node.x, node.y),
                ));
            }
        }
        if total_users < 1 {
            return Err(Error::invalid("users", "N must be >= 1"));
        }
        if !(payload_bits > 0.0 && payload_bits.is_finite()) {
            return Err(Error::invalid("users", "b must be > 0"));
        }
        nodes.sort_by_key(|n| n.id);
        Ok(Scenario {
            area,
            nodes,
            channel,
            total_users,
            payload_bits,
            density: DensitySpec::Uniform,
        })
    }

    /// Four UAVs and two macro BSs on a 4 km x 4 km grid deployment, 300
    /// users, 1 Mb payloads, Gaussian hotspot at (1300 m, 1300 m).
    pub fn urban_hotspot(sigma: f64) -> Result<Self> {
        let area = Area::square(4000.0)?;
        let nodes = grid_deployment(&area, &DeploymentPlan::default())?;
        Scenario::new(area, nodes, ChannelParams::dense_urban(), 300, 1e6)?.with_density(DensitySpec::Gaussian {
            center: [1300.0, 1300.0],
            sigma,
        })
    }

    pub fn with_density(mut self, density: DensitySpec) -> Result<Self> {
        density.validate()?;
        self.density = density;
        Ok(self)
    }

    pub fn with_payload_bits(mut self, bits: f64) -> Result<Self> {
        if !(bits > 0.0 && bits.is_finite()) {
            return Err(Error::invalid("users", "b must be > 0"));
        }
        self.payload_bits = bits;
        Ok(self)
    }

    pub fn with_total_users(mut self, n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid("users", "N must be >= 1"));
        }
        self.total_users = n;
        Ok(self)
    }

    /// Replaces the node list, re-running every node check.
    pub fn with_nodes(self, nodes: Vec<NodeSpec>) -> Result<Self> {
        let density = self.density.clone();
        Scenario::new(self.area, nodes, self.channel, self.total_users, self.payload_bits)?.with_density(density)
    }

    pub fn area(&self) -> &Area {
        &self.area
    }
    pub fn nodes(&self) -> &[NodeSpec] {
        &self.nodes
    }
    pub fn channel(&self) -> &ChannelParams {
        &self.channel
    }
    pub fn total_users(&self) -> u32 {
        self.total_users
    }
    pub fn payload_bits(&self) -> f64 {
        self.payload_bits
    }
    pub fn density(&self) -> &DensitySpec {
        &self.density
    }

    pub fn node_index(&self, id: u32) -> Result<usize> {
        self.nodes
            .binary_search_by_key(&id, |n| n.id)
            .map_err(|_| Error::UnknownNode(id))
    }

    pub fn node_ids(&self) -> Vec<u32> {
        self.nodes.iter().map(|n| n.id).collect()
    }

    /// Parses TOML text. Relative density-file paths resolve against `base_dir`.
    pub fn from_toml_str(text: &str, base_dir: Option<&Path>) -> Result<Self> {
        let file: ScenarioFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_scenario(base_dir)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(&ScenarioFile::from(self)).expect("scenario serializes to TOML")
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_toml_string()).map_err(|e| Error::io(path, e))
    }
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Scenario::from_toml_str(&text, path.parent())
}

/// Parameters for [`grid_deployment`]. Defaults: 4 UAVs at 200 m / 1 W and
/// 2 BSs at 20 m / 40 W, each with 1 MHz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeploymentPlan {
    pub num_uav: usize,
    pub num_bs: usize,
    pub uav_height: f64,
    pub bs_height: f64,
    pub uav_power: f64,
    pub bs_power: f64,
    pub bandwidth: f64,
}

impl Default for DeploymentPlan {
    fn default() -> Self {
        DeploymentPlan {
            num_uav: 4,
            num_bs: 2,
            uav_height: 200.0,
            bs_height: 20.0,
            uav_power: 1.0,
            bs_power: 40.0,
            bandwidth: 1e6,
        }
    }
}

/// Places UAVs and BSs at the centres of two independent grid tilings of
/// `area`. Each tiling has `ceil(sqrt(n))` columns and as many rows as
/// needed; nodes fill cells row by row from the `y_min` edge. UAV ids come
/// first (`0..num_uav`), then BS ids.
pub fn grid_deployment(area: &Area, plan: &DeploymentPlan) -> Result<Vec<NodeSpec>> {
    area.validate()?;
    if plan.num_uav == 0 && plan.num_bs == 0 {
        return Err(Error::invalid("deployment", "need at least one node"));
    }
    let mut nodes = Vec::with_capacity(plan.num_uav + plan.num_bs);
    let tilings = [
        (NodeKind::Aerial, plan.num_uav, plan.uav_height, plan.uav_power),
        (NodeKind::Terrestrial, plan.num_bs, plan.bs_height, plan.bs_power),
    ];
    for (kind, count, height, tx_power) in tilings {
        for (x, y) in tiling_centers(area, count) {
            let node = NodeSpec {
                id: nodes.len() as u32,
                kind,
                x,
                y,
                height,
                tx_power,
                bandwidth: plan.bandwidth,
            };
            node.validate()?;
            nodes.push(node);
        }
    }
    Ok(nodes)
}

fn tiling_centers(area: &Area, count: usize) -> Vec<(f64, f64)> {
    if count == 0 {
        return Vec::new();
    }
    let cols = (count as f64).sqrt().ceil() as usize;
    let rows = count.div_ceil(cols);
    let dx = area.width() / cols as f64;
    let dy = area.height() / rows as f64;
    (0..count)
        .map(|k| {
            let (row, col) = (k / cols, k % cols);
            (
                area.x_min + (col as f64 + 0.5) * dx,
                area.y_min + (row as f64 + 0.5) * dy,
            )
        })
        .collect()
}

// On-disk layout.

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    area: Area,
    channel: ChannelFile,
    nodes: Vec<NodeSpec>,
    users: UsersFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    density: Option<DensitySpec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UsersFile {
    #[serde(rename = "N")]
    total: u32,
    b: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelFile {
    carrier_freq: f64,
    #[serde(default = "unit_distance")]
    ref_distance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu_los: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu_los_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu_nlos: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu_nlos_db: Option<f64>,
    alpha: f64,
    gamma: f64,
    pathloss_exp: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    noise_psd: Option<f64>,
    /// dBm/Hz
    #[serde(default, skip_serializing_if = "Option::is_none")]
    noise_psd_db: Option<f64>,
}

fn unit_distance() -> f64 {
    1.0
}

fn linear_or_db(name: &str, linear: Option<f64>, db: Option<f64>, convert: fn(f64) -> f64) -> Result<f64> {
    match (linear, db) {
        (Some(v), None) => Ok(v),
        (None, Some(v)) => Ok(convert(v)),
        (Some(_), Some(_)) => Err(Error::invalid(
            "channel",
            format!("give either {name} or {name}_db, not both"),
        )),
        (None, None) => Err(Error::invalid("channel", format!("missing {name} (or {name}_db)"))),
    }
}

impl ChannelFile {
    fn into_params(self) -> Result<ChannelParams> {
        ChannelParams::new(
            self.carrier_freq,
            self.ref_distance,
            linear_or_db("mu_los", self.mu_los, self.mu_los_db, db_to_linear)?,
            linear_or_db("mu_nlos", self.mu_nlos, self.mu_nlos_db, db_to_linear)?,
            self.alpha,
            self.gamma,
            self.pathloss_exp,
            linear_or_db("noise_psd", self.noise_psd, self.noise_psd_db, dbm_to_watts)?,
        )
    }
}

impl ScenarioFile {
    fn into_scenario(self, base_dir: Option<&Path>) -> Result<Scenario> {
        let channel = self.channel.into_params()?;
        let scenario = Scenario::new(self.area, self.nodes, channel, self.users.total, self.users.b)?;
        match self.density {
            None => Ok(scenario),
            Some(DensitySpec::GridFile { path }) if path.is_relative() => {
                let path = base_dir.map(|d| d.join(&path)).unwrap_or(path);
                scenario.with_density(DensitySpec::GridFile { path })
            }
            Some(spec) => scenario.with_density(spec),
        }
    }
}

impl From<&Scenario> for ScenarioFile {
    fn from(s: &Scenario) -> Self {
        let c = &s.channel;
        ScenarioFile {
            area: s.area,
            channel: ChannelFile {
                carrier_freq: c.carrier_freq,
                ref_distance: c.ref_distance,
                mu_los: Some(c.mu_los),
                mu_los_db: None,
                mu_nlos: Some(c.mu_nlos),
                mu_nlos_db: None,
                alpha: c.alpha,
                gamma: c.gamma,
                pathloss_exp: c.pathloss_exp,
                noise_psd: Some(c.noise_psd),
                noise_psd_db: None,
            },
            nodes: s.nodes.clone(),
            users: UsersFile {
                total: s.total_users,
                b: s.payload_bits,
            },
            density: match s.density {
                DensitySpec::Uniform => None,
                ref other => Some(other.clone()),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const REFERENCE: &str = include_str!("../scenarios/urban_hotspot.toml");

    #[test]
    fn reference_file_loads() {
        let s = Scenario::from_toml_str(REFERENCE, None).unwrap();
        assert_eq!(s.nodes().len(), 6);
        assert_eq!(s.total_users(), 300);
        assert_eq!(s.payload_bits(), 1e6);
        let aerial = s.nodes().iter().filter(|n| n.kind == NodeKind::Aerial).count();
        assert_eq!(aerial, 4);
        assert!((s.channel().noise_psd() - 1e-20).abs() < 1e-32);
        assert!((s.channel().mu_los() - 10f64.powf(0.3)).abs() < 1e-12);
        assert!((s.channel().mu_nlos() - 10f64.powf(2.3)).abs() < 1e-9);
    }

    #[test]
    fn reference_file_matches_builtin() {
        let file = Scenario::from_toml_str(REFERENCE, None).unwrap();
        let built = Scenario::urban_hotspot(1000.0).unwrap();
        assert_eq!(file.nodes(), built.nodes());
        assert_eq!(file.area(), built.area());
        assert_eq!(file.density(), built.density());
        let (a, b) = (file.channel(), built.channel());
        assert!((a.k_o() - b.k_o()).abs() < 1e-9);
        assert!((a.noise_psd() - b.noise_psd()).abs() < 1e-32);
    }

    #[test]
    fn zero_bandwidth_rejected() {
        let text = REFERENCE.replacen("bandwidth = 1e6", "bandwidth = 0.0", 1);
        let err = Scenario::from_toml_str(&text, None).unwrap_err();
        assert!(err.to_string().contains("bandwidth"), "{err}");
    }

    #[test]
    fn node_outside_area_rejected() {
        let text = REFERENCE.replacen("x = 1000.0", "x = 4001.0", 1);
        let err = Scenario::from_toml_str(&text, None).unwrap_err();
        assert!(err.to_string().contains("outside"), "{err}");
    }

    #[test]
    fn malformed_file_is_parse_error() {
        let err = Scenario::from_toml_str("[area\nx_min = 0", None).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn both_linear_and_db_rejected() {
        let text = REFERENCE.replacen("mu_los_db = 3.0", "mu_los_db = 3.0\nmu_los = 2.0", 1);
        assert!(Scenario::from_toml_str(&text, None).is_err());
    }

    #[test]
    fn duplicate_ids_rejected() {
        let area = Area::square(100.0).unwrap();
        let node = NodeSpec {
            id: 7,
            kind: NodeKind::Terrestrial,
            x: 50.0,
            y: 50.0,
            height: 10.0,
            tx_power: 1.0,
            bandwidth: 1.0,
        };
        let err = Scenario::new(area, vec![node, node], ChannelParams::dense_urban(), 1, 1.0);
        assert!(err.is_err());
    }

    #[test]
    fn nodes_are_sorted_by_id() {
        let area = Area::square(100.0).unwrap();
        let mk = |id| NodeSpec {
            id,
            kind: NodeKind::Terrestrial,
            x: 50.0,
            y: 50.0,
            height: 10.0,
            tx_power: 1.0,
            bandwidth: 1.0,
        };
        let s = Scenario::new(area, vec![mk(9), mk(2), mk(5)], ChannelParams::dense_urban(), 1, 1.0).unwrap();
        assert_eq!(s.node_ids(), vec![2, 5, 9]);
        assert_eq!(s.node_index(5).unwrap(), 1);
        assert!(matches!(s.node_index(3), Err(Error::UnknownNode(3))));
    }

    #[test]
    fn k_o_at_two_gigahertz() {
        // (4 pi 2e9 / c)^2
        let k = ChannelParams::dense_urban().k_o();
        assert!((k - 7028.106_169_663_433).abs() < 1e-8);
    }

    #[test]
    fn four_uavs_at_quadrant_centers() {
        let area = Area::square(4000.0).unwrap();
        let nodes = grid_deployment(&area, &DeploymentPlan::default()).unwrap();
        let uav: Vec<_> = nodes
            .iter()
            .filter(|n| n.kind == NodeKind::Aerial)
            .map(|n| (n.x, n.y, n.height))
            .collect();
        assert_eq!(
            uav,
            vec![
                (1000.0, 1000.0, 200.0),
                (3000.0, 1000.0, 200.0),
                (1000.0, 3000.0, 200.0),
                (3000.0, 3000.0, 200.0)
            ]
        );
    }

    #[test]
    fn two_bss_at_half_centers() {
        let area = Area::square(4000.0).unwrap();
        let nodes = grid_deployment(&area, &DeploymentPlan::default()).unwrap();
        let bs: Vec<_> = nodes
            .iter()
            .filter(|n| n.kind == NodeKind::Terrestrial)
            .map(|n| (n.id, n.x, n.y, n.height, n.tx_power))
            .collect();
        assert_eq!(
            bs,
            vec![(4, 1000.0, 2000.0, 20.0, 40.0), (5, 3000.0, 2000.0, 20.0, 40.0)]
        );
    }

    #[test]
    fn single_bs_at_center() {
        let area = Area::square(4000.0).unwrap();
        let plan = DeploymentPlan {
            num_uav: 0,
            num_bs: 1,
            ..DeploymentPlan::default()
        };
        let nodes = grid_deployment(&area, &plan).unwrap();
        assert_eq!(nodes.len(), 1);
        assert_eq!((nodes[0].x, nodes[0].y), (2000.0, 2000.0));
    }

    #[test]
    fn empty_deployment_rejected() {
        let area = Area::square(10.0).unwrap();
        let plan = DeploymentPlan {
            num_uav: 0,
            num_bs: 0,
            ..DeploymentPlan::default()
        };
        assert!(grid_deployment(&area, &plan).is_err());
    }

    #[test]
    fn grid_file_path_resolves_against_scenario_dir() {
        let text = format!(
            "{}\n[density]\nkind = \"grid_file\"\npath = \"weights.txt\"\n",
            REFERENCE.split("[density]").next().unwrap()
        );
        let s = Scenario::from_toml_str(&text, Some(Path::new("/data/run"))).unwrap();
        assert_eq!(
            s.density(),
            &DensitySpec::GridFile {
                path: "/data/run/weights.txt".into()
            }
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn grid_deployment_stays_inside(
                w in 10.0f64..1e5,
                h in 10.0f64..1e5,
                x0 in -1e4f64..1e4,
                y0 in -1e4f64..1e4,
                num_uav in 0usize..20,
                num_bs in 0usize..20,
            ) {
                prop_assume!(num_uav + num_bs > 0);
                let area = Area::new(x0, x0 + w, y0, y0 + h).unwrap();
                let plan = DeploymentPlan { num_uav, num_bs, ..DeploymentPlan::default() };
                let a = grid_deployment(&area, &plan).unwrap();
                let b = grid_deployment(&area, &plan).unwrap();
                prop_assert_eq!(&a, &b);
                prop_assert_eq!(a.len(), num_uav + num_bs);
                for n in &a {
                    prop_assert!(area.contains(n.x, n.y));
                }
            }

            #[test]
            fn toml_round_trip(
                n_users in 1u32..10_000,
                bits in 1.0f64..1e9,
                sigma in 1.0f64..5000.0,
                uav_h in 10.0f64..500.0,
                bw in 1e3f64..1e8,
            ) {
                let plan = DeploymentPlan { uav_height: uav_h, bandwidth: bw, ..DeploymentPlan::default() };
                let area = Area::square(4000.0).unwrap();
                let s = Scenario::new(area, grid_deployment(&area, &plan).unwrap(),
                    ChannelParams::dense_urban(), n_users, bits).unwrap()
                    .with_density(DensitySpec::Gaussian { center: [1300.0, 1300.0], sigma }).unwrap();
                let back = Scenario::from_toml_str(&s.to_toml_string(), None).unwrap();
                prop_assert_eq!(back, s);
            }
        }
    }
}
