//! Network-delay objective and summaries.
//!
//! A node with mass `a_k` serves `N a_k` users, each on `W_k / (N a_k)` Hz,
//! so a user at `v` waits `(N a_k / W_k) F(v, s_k)` seconds. The average
//! network delay is that quantity integrated against the density.

use std::io::Write;

use rayon::prelude::*;

use crate::association::{Instance, Partition, SolverConfig};
use crate::channel::LinkTable;
use crate::density::{stable_sum, truncated_gaussian_density, DensitySpec, MassSupport};
use crate::error::{Error, Result};
use crate::scenario::{NodeKind, Scenario};

/// Per-node delay contributions `(N a_k / W_k) sum_{i in D_k} F_ki m_i`.
pub(crate) fn contributions<S: MassSupport + ?Sized>(
    table: &LinkTable,
    support: &S,
    partition: &Partition,
    total_users: u32,
) -> Vec<f64> {
    let k = table.num_nodes();
    let mut weighted: Vec<Vec<f64>> = vec![Vec::new(); k];
    for (i, (&l, &m)) in partition.labels().iter().zip(support.masses()).enumerate() {
        weighted[l].push(table.delay(l, i) * m);
    }
    weighted
        .into_iter()
        .enumerate()
        .map(|(l, terms)| {
            let a = partition.masses()[l];
            f64::from(total_users) * a / table.bandwidth(l) * stable_sum(terms)
        })
        .collect()
}

pub(crate) fn objective<S: MassSupport + ?Sized>(
    table: &LinkTable,
    support: &S,
    partition: &Partition,
    total_users: u32,
) -> f64 {
    stable_sum(contributions(table, support, partition, total_users))
}

/// Average network delay in seconds.
pub fn average_delay<S: MassSupport + ?Sized>(scenario: &Scenario, support: &S, partition: &Partition) -> Result<f64> {
    Ok(Instance::new(scenario, support)?.average_delay(partition))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeStats {
    pub id: u32,
    pub kind: NodeKind,
    pub mass: f64,
    /// Expected number of users, `N a_k`.
    pub load: f64,
    /// This node's share of the average delay, s.
    pub delay_contribution: f64,
    /// Mass-weighted mean linear SNR over the cell; `None` for an empty cell.
    pub mean_snr: Option<f64>,
}

impl<S: MassSupport + ?Sized> Instance<'_, S> {
    pub fn average_delay(&self, partition: &Partition) -> f64 {
        objective(self.table(), self.support(), partition, self.scenario().total_users())
    }

    pub fn node_stats(&self, partition: &Partition) -> Vec<NodeStats> {
        let n = f64::from(self.scenario().total_users());
        let contrib = contributions(self.table(), self.support(), partition, self.scenario().total_users());
        let mut snr_terms: Vec<Vec<f64>> = vec![Vec::new(); self.table().num_nodes()];
        for (i, (&l, &m)) in partition.labels().iter().zip(self.support().masses()).enumerate() {
            snr_terms[l].push(self.table().snr(l, i) * m);
        }
        self.scenario()
            .nodes()
            .iter()
            .zip(snr_terms)
            .enumerate()
            .map(|(k, (node, terms))| {
                let mass = partition.masses()[k];
                NodeStats {
                    id: node.id,
                    kind: node.kind,
                    mass,
                    load: n * mass,
                    delay_contribution: contrib[k],
                    mean_snr: (mass > 0.0).then(|| stable_sum(terms) / mass),
                }
            })
            .collect()
    }
}

pub fn per_cell_stats<S: MassSupport + ?Sized>(
    scenario: &Scenario,
    support: &S,
    partition: &Partition,
) -> Result<Vec<NodeStats>> {
    Ok(Instance::new(scenario, support)?.node_stats(partition))
}

/// Writes `node_id,kind,mass,load,delay_s,mean_snr` rows.
pub fn write_node_stats<W: Write>(stats: &[NodeStats], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["node_id", "kind", "mass", "load", "delay_s", "mean_snr"])?;
    for s in stats {
        let kind = match s.kind {
            NodeKind::Aerial => "aerial",
            NodeKind::Terrestrial => "terrestrial",
        };
        w.write_record([
            s.id.to_string(),
            kind.to_string(),
            s.mass.to_string(),
            s.load.to_string(),
            s.delay_contribution.to_string(),
            s.mean_snr.map(|v| v.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<node stats>", e))?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub sigma: f64,
    pub delay_snr: f64,
    pub delay_ot: f64,
    pub reduction_pct: f64,
    pub converged: bool,
}

/// Grid and solver settings shared by every sweep row.
#[derive(Debug, Clone, Copy)]
pub struct SweepSettings {
    pub nx: usize,
    pub ny: usize,
    pub solver: SolverConfig,
}

impl Default for SweepSettings {
    fn default() -> Self {
        SweepSettings {
            nx: 200,
            ny: 200,
            solver: SolverConfig::default(),
        }
    }
}

/// Hotspot spread values `200, 400, ..., 1200` m.
pub fn default_sigmas() -> Vec<f64> {
    (1..=6).map(|k| 200.0 * k as f64).collect()
}

/// Compares max-SNR and transport association on a Gaussian hotspot for
/// each spread in `sigmas`. The hotspot centre comes from the template's
/// Gaussian density, or the area centre otherwise.
pub fn sweep_sigma(template: &Scenario, sigmas: &[f64], settings: &SweepSettings) -> Result<Vec<SweepRow>> {
    if sigmas.is_empty() {
        return Err(Error::Usage("sigma list is empty".into()));
    }
    if let Some(bad) = sigmas.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
        return Err(Error::invalid("sigma", format!("{bad} is not > 0")));
    }
    settings.solver.validate()?;
    let center = match template.density() {
        DensitySpec::Gaussian { center, .. } => (center[0], center[1]),
        _ => template.area().center(),
    };
    sigmas
        .par_iter()
        .map(|&sigma| {
            let grid = truncated_gaussian_density(*template.area(), center, sigma, settings.nx, settings.ny)?;
            let inst = Instance::new(template, &grid)?;
            let snr = inst.snr_association();
            let (ot, trace) = inst.ot_association(&settings.solver, &snr)?;
            let delay_snr = inst.average_delay(&snr);
            let delay_ot = inst.average_delay(&ot);
            Ok(SweepRow {
                sigma,
                delay_snr,
                delay_ot,
                reduction_pct: 100.0 * (1.0 - delay_ot / delay_snr),
                converged: trace.converged,
            })
        })
        .collect()
}

/// `sigma_o,delay_snr_s,delay_ot_s,reduction_pct,converged`
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["sigma_o", "delay_snr_s", "delay_ot_s", "reduction_pct", "converged"])?;
    for r in rows {
        w.write_record([
            r.sigma.to_string(),
            r.delay_snr.to_string(),
            r.delay_ot.to_string(),
            r.reduction_pct.to_string(),
            r.converged.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<sweep>", e))?;
    Ok(())
}
