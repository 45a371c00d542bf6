//! Cell partitions: max-SNR baseline and the load-aware transport fixed point.
//!
//! A location `v` is served by
//!
//! ```text
//! k = argmin_l (a_l / W_l) F(v, s_l)
//! ```
//!
//! where `a_l` is the user mass already in cell `l`. Because `a_l` depends on
//! the partition, the rule is iterated: relabel every support point under the
//! current (damped) masses, recompute masses, repeat until the labels
//! reproduce themselves.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::channel::{delay_kernel, LinkTable};
use crate::density::{stable_sum, MassSupport};
use crate::error::{Error, Result};
use crate::metrics;
use crate::scenario::Scenario;

/// Largest relative rule violation accepted as an exact fixed point.
pub const CERTIFICATE_TOLERANCE: f64 = 1e-9;

/// One node label per support point plus the induced per-node masses.
///
/// Labels are node indices into `node_ids` (which is sorted, matching the
/// scenario's node order).
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    nx: usize,
    ny: usize,
    node_ids: Vec<u32>,
    labels: Vec<usize>,
    masses: Vec<f64>,
}

impl Partition {
    pub fn from_labels<S: MassSupport + ?Sized>(support: &S, node_ids: Vec<u32>, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != support.len() {
            return Err(Error::invalid(
                "partition",
                format!("{} labels for {} support points", labels.len(), support.len()),
            ));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= node_ids.len()) {
            return Err(Error::invalid("partition", format!("label index {bad} out of range")));
        }
        let masses = masses_of(support, node_ids.len(), &labels);
        let (nx, ny) = support.shape();
        Ok(Partition {
            nx,
            ny,
            node_ids,
            labels,
            masses,
        })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn node_ids(&self) -> &[u32] {
        &self.node_ids
    }

    /// Node index of every support point.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label_id(&self, point: usize) -> u32 {
        self.node_ids[self.labels[point]]
    }

    /// Per-node masses `a_k`, in node-index order.
    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn mass_of(&self, node_id: u32) -> Result<f64> {
        self.node_ids
            .iter()
            .position(|&id| id == node_id)
            .map(|k| self.masses[k])
            .ok_or(Error::UnknownNode(node_id))
    }

    pub fn differing_cells(&self, other: &Partition) -> usize {
        self.labels.iter().zip(&other.labels).filter(|(a, b)| a != b).count()
    }

    /// Row-major node-id grid, one text row per grid row (first row at
    /// `y_min`), comma separated.
    pub fn write_label_grid<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
        for row in self.labels.chunks(self.nx) {
            w.write_record(row.iter().map(|&l| self.node_ids[l].to_string()))?;
        }
        w.flush().map_err(|e| Error::io("<label grid>", e))?;
        Ok(())
    }

    /// `node_id,mass` sidecar.
    pub fn write_masses<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["node_id", "mass"])?;
        for (id, m) in self.node_ids.iter().zip(&self.masses) {
            w.write_record([id.to_string(), m.to_string()])?;
        }
        w.flush().map_err(|e| Error::io("<masses>", e))?;
        Ok(())
    }

    pub fn save(&self, labels_path: impl AsRef<Path>, masses_path: impl AsRef<Path>) -> Result<()> {
        let open = |p: &Path| std::fs::File::create(p).map_err(|e| Error::io(p, e));
        self.write_label_grid(open(labels_path.as_ref())?)?;
        self.write_masses(open(masses_path.as_ref())?)
    }
}

fn masses_of<S: MassSupport + ?Sized>(support: &S, num_nodes: usize, labels: &[usize]) -> Vec<f64> {
    let mut buckets: Vec<Vec<f64>> = vec![Vec::new(); num_nodes];
    for (&l, &m) in labels.iter().zip(support.masses()) {
        buckets[l].push(m);
    }
    buckets.into_iter().map(stable_sum).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepSchedule {
    /// `eta` every iteration.
    Constant,
    /// `eta_t = eta / (1 + eta t)`: running average of past relabelings.
    Diminishing,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Give up once the damped masses move less than this (L-inf) in one
    /// update without the labels certifying as a fixed point.
    pub tol: f64,
    pub max_iter: usize,
    /// Step for the mass update `a <- (1 - eta) a + eta a_new`.
    pub damping: f64,
    pub schedule: StepSchedule,
    /// Masses are floored here before entering the rule.
    pub mass_floor: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-6,
            max_iter: 500,
            damping: 0.5,
            schedule: StepSchedule::Diminishing,
            mass_floor: 1e-12,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::invalid("solver config", "tol must be > 0"));
        }
        if self.max_iter < 1 {
            return Err(Error::invalid("solver config", "max_iter must be >= 1"));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::invalid("solver config", "damping must lie in (0, 1]"));
        }
        if !(self.mass_floor >= 0.0 && self.mass_floor < 1e-3) {
            return Err(Error::invalid("solver config", "mass_floor must lie in [0, 1e-3)"));
        }
        Ok(())
    }

    fn step(&self, iteration: usize) -> f64 {
        match self.schedule {
            StepSchedule::Constant => self.damping,
            StepSchedule::Diminishing => self.damping / (1.0 + self.damping * iteration as f64),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolveTrace {
    /// Average delay (s) of the partition produced by each relabeling.
    pub objective: Vec<f64>,
    /// L-inf change of the recomputed masses at each relabeling.
    pub max_mass_change: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
    /// Objective of the initial partition.
    pub initial_objective: f64,
    /// Certificate of the returned partition, see [`Instance::fixed_point_violation`].
    pub violation: f64,
}

/// A scenario discretised on a support, with every link precomputed.
pub struct Instance<'a, S: MassSupport + ?Sized> {
    scenario: &'a Scenario,
    support: &'a S,
    table: LinkTable,
}

impl<'a, S: MassSupport + ?Sized> Instance<'a, S> {
    pub fn new(scenario: &'a Scenario, support: &'a S) -> Result<Self> {
        let table = LinkTable::build(scenario, support)?;
        Ok(Instance {
            scenario,
            support,
            table,
        })
    }

    pub fn scenario(&self) -> &Scenario {
        self.scenario
    }

    pub fn support(&self) -> &S {
        self.support
    }

    pub fn table(&self) -> &LinkTable {
        &self.table
    }

    pub fn partition(&self, labels: Vec<usize>) -> Result<Partition> {
        Partition::from_labels(self.support, self.scenario.node_ids(), labels)
    }

    fn check(&self, p: &Partition) -> Result<()> {
        if p.labels.len() != self.support.len() || p.node_ids != self.scenario.node_ids() {
            return Err(Error::invalid(
                "partition",
                "does not belong to this scenario and support",
            ));
        }
        Ok(())
    }

    /// Each point goes to its strongest node; ties to the lowest id.
    pub fn snr_association(&self) -> Partition {
        let k = self.table.num_nodes();
        let labels = (0..self.support.len())
            .into_par_iter()
            .map(|i| {
                let mut best = 0;
                for l in 1..k {
                    if self.table.snr(l, i) > self.table.snr(best, i) {
                        best = l;
                    }
                }
                best
            })
            .collect();
        self.partition(labels).expect("labels in range")
    }

    fn rule_weights(&self, masses: &[f64], floor: f64) -> Vec<f64> {
        masses
            .iter()
            .enumerate()
            .map(|(l, &a)| a.max(floor) / self.table.bandwidth(l))
            .collect()
    }

    fn cheapest(&self, weights: &[f64], i: usize) -> (usize, f64) {
        let mut best = (0, weights[0] * self.table.delay(0, i));
        for (l, &w) in weights.iter().enumerate().skip(1) {
            let c = w * self.table.delay(l, i);
            if c < best.1 {
                best = (l, c);
            }
        }
        best
    }

    /// One application of the assignment rule at every support point under
    /// the given masses (floored at `floor`).
    pub fn relabel(&self, masses: &[f64], floor: f64) -> Vec<usize> {
        let weights = self.rule_weights(masses, floor);
        (0..self.support.len())
            .into_par_iter()
            .map(|i| self.cheapest(&weights, i).0)
            .collect()
    }

    /// Largest relative excess of the assigned node's weighted cost over
    /// the cheapest node's, under the partition's own masses. Zero exactly
    /// when the partition is a fixed point of the rule.
    pub fn fixed_point_violation(&self, partition: &Partition, floor: f64) -> Result<f64> {
        self.check(partition)?;
        Ok(self.violation_of(&partition.labels, &partition.masses, floor))
    }

    fn violation_of(&self, labels: &[usize], masses: &[f64], floor: f64) -> f64 {
        let weights = self.rule_weights(masses, floor);
        labels
            .par_iter()
            .enumerate()
            .map(|(i, &l)| {
                let (_, best) = self.cheapest(&weights, i);
                let own = weights[l] * self.table.delay(l, i);
                if own <= best {
                    0.0
                } else {
                    (own - best) / best
                }
            })
            .reduce(|| 0.0, f64::max)
    }

    /// Iterates the assignment rule from `init`.
    ///
    /// Returns the first partition that certifies as a fixed point, or the
    /// lowest-delay partition seen (the initial one included) when the
    /// damped masses stall or `max_iter` runs out.
    pub fn ot_association(&self, cfg: &SolverConfig, init: &Partition) -> Result<(Partition, SolveTrace)> {
        cfg.validate()?;
        self.check(init)?;
        let n_users = self.scenario.total_users();
        let initial_objective = metrics::objective(&self.table, self.support, init, n_users);
        let mut trace = SolveTrace {
            initial_objective,
            ..SolveTrace::default()
        };
        let mut best = (initial_objective, init.clone());
        let mut current = init.clone();
        let mut damped = init.masses.clone();

        for t in 0..cfg.max_iter {
            let labels = self.relabel(&damped, cfg.mass_floor);
            let next = self.partition(labels)?;
            let change = next
                .masses
                .iter()
                .zip(&current.masses)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            let objective = metrics::objective(&self.table, self.support, &next, n_users);
            trace.objective.push(objective);
            trace.max_mass_change.push(change);
            trace.iterations = t + 1;
            if objective < best.0 {
                best = (objective, next.clone());
            }

            let violation = self.violation_of(&next.labels, &next.masses, cfg.mass_floor);
            if violation <= CERTIFICATE_TOLERANCE {
                trace.converged = true;
                trace.violation = violation;
                return Ok((next, trace));
            }

            let eta = cfg.step(t);
            let mut moved = 0.0f64;
            for (d, &a) in damped.iter_mut().zip(&next.masses) {
                let updated = (1.0 - eta) * *d + eta * a;
                moved = moved.max((updated - *d).abs());
                *d = updated;
            }
            current = next;
            if moved < cfg.tol {
                break;
            }
        }

        let (_, partition) = best;
        trace.violation = self.violation_of(&partition.labels, &partition.masses, cfg.mass_floor);
        Ok((partition, trace))
    }
}

pub fn snr_association<S: MassSupport + ?Sized>(scenario: &Scenario, support: &S) -> Result<Partition> {
    Ok(Instance::new(scenario, support)?.snr_association())
}

pub fn ot_association<S: MassSupport + ?Sized>(
    scenario: &Scenario,
    support: &S,
    cfg: &SolverConfig,
    init: &Partition,
) -> Result<(Partition, SolveTrace)> {
    Instance::new(scenario, support)?.ot_association(cfg, init)
}

pub fn fixed_point_violation<S: MassSupport + ?Sized>(
    scenario: &Scenario,
    support: &S,
    partition: &Partition,
) -> Result<f64> {
    Instance::new(scenario, support)?.fixed_point_violation(partition, SolverConfig::default().mass_floor)
}

/// Node id chosen by the rule at a single location, given per-node masses
/// in scenario node order. Masses are used as given (no flooring).
pub fn assignment_rule(scenario: &Scenario, masses: &[f64], point: (f64, f64)) -> Result<u32> {
    let nodes = scenario.nodes();
    if masses.len() != nodes.len() {
        return Err(Error::invalid(
            "masses",
            format!("{} masses for {} nodes", masses.len(), nodes.len()),
        ));
    }
    let mut best: Option<(u32, f64)> = None;
    for (node, &a) in nodes.iter().zip(masses) {
        let cost = a / node.bandwidth * delay_kernel(scenario, node, point)?;
        if best.is_none_or(|(_, c)| cost < c) {
            best = Some((node.id, cost));
        }
    }
    Ok(best.expect("scenario has nodes").0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{truncated_gaussian_density, uniform_density, PointSet};
    use crate::scenario::{Area, ChannelParams, NodeKind, NodeSpec};

    fn node(id: u32, kind: NodeKind, x: f64, y: f64) -> NodeSpec {
        let (height, tx_power) = match kind {
            NodeKind::Aerial => (200.0, 1.0),
            NodeKind::Terrestrial => (20.0, 40.0),
        };
        NodeSpec {
            id,
            kind,
            x,
            y,
            height,
            tx_power,
            bandwidth: 1e6,
        }
    }

    fn scenario(nodes: Vec<NodeSpec>) -> Scenario {
        Scenario::new(
            Area::square(4000.0).unwrap(),
            nodes,
            ChannelParams::dense_urban(),
            300,
            1e6,
        )
        .unwrap()
    }

    #[test]
    fn single_node_owns_everything() {
        let s = scenario(vec![node(3, NodeKind::Aerial, 2000.0, 2000.0)]);
        let g = truncated_gaussian_density(*s.area(), (1300.0, 1300.0), 300.0, 20, 20).unwrap();
        let inst = Instance::new(&s, &g).unwrap();
        let snr = inst.snr_association();
        assert!(snr.labels().iter().all(|&l| l == 0));
        assert!((snr.masses()[0] - 1.0).abs() < 1e-12);
        let (p, trace) = inst.ot_association(&SolverConfig::default(), &snr).unwrap();
        assert!(trace.converged);
        assert_eq!(trace.iterations, 1);
        assert!((p.mass_of(3).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(inst.fixed_point_violation(&p, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn colocated_twins_tie_to_lower_id() {
        let s = scenario(vec![
            node(9, NodeKind::Terrestrial, 2000.0, 2000.0),
            node(4, NodeKind::Terrestrial, 2000.0, 2000.0),
        ]);
        let g = uniform_density(*s.area(), 10, 10).unwrap();
        let p = snr_association(&s, &g).unwrap();
        assert!((0..100).all(|i| p.label_id(i) == 4));
    }

    #[test]
    fn equal_weights_reduce_to_max_snr() {
        let s = Scenario::urban_hotspot(1000.0).unwrap();
        let g = uniform_density(*s.area(), 40, 40).unwrap();
        for (x, y) in [(1300.0, 1300.0), (10.0, 3990.0), (2500.0, 1700.0), (3900.0, 50.0)] {
            let by_rule = assignment_rule(&s, &[1.0 / 6.0; 6], (x, y)).unwrap();
            let by_snr = s
                .nodes()
                .iter()
                .max_by(|a, b| {
                    crate::channel::snr(s.channel(), a, (x, y)).total_cmp(&crate::channel::snr(s.channel(), b, (x, y)))
                })
                .unwrap()
                .id;
            assert_eq!(by_rule, by_snr);
        }
        let inst = Instance::new(&s, &g).unwrap();
        let relabeled = inst.relabel(&[0.2; 6], 1e-12);
        assert_eq!(relabeled, inst.snr_association().labels());
    }

    #[test]
    fn floored_mass_dominates() {
        // Node 0 is far away but almost empty, so it wins unless its kernel
        // is ~1e12 times worse.
        let s = scenario(vec![
            node(0, NodeKind::Terrestrial, 100.0, 100.0),
            node(1, NodeKind::Terrestrial, 3900.0, 3900.0),
        ]);
        assert_eq!(assignment_rule(&s, &[1e-12, 1.0], (3900.0, 3900.0)).unwrap(), 0);
        assert_eq!(assignment_rule(&s, &[1e-12, 1.0], (3800.0, 3800.0)).unwrap(), 0);
    }

    #[test]
    fn lighter_node_wins_at_midpoint() {
        let s = scenario(vec![
            node(0, NodeKind::Terrestrial, 1000.0, 2000.0),
            node(1, NodeKind::Terrestrial, 3000.0, 2000.0),
        ]);
        assert_eq!(assignment_rule(&s, &[0.3, 0.7], (2000.0, 2000.0)).unwrap(), 0);
        assert_eq!(assignment_rule(&s, &[0.7, 0.3], (2000.0, 2000.0)).unwrap(), 1);
    }

    #[test]
    fn mirror_twins_split_evenly() {
        let s = scenario(vec![
            node(0, NodeKind::Aerial, 1000.0, 2000.0),
            node(1, NodeKind::Aerial, 3000.0, 2000.0),
        ]);
        let g = truncated_gaussian_density(*s.area(), (2000.0, 2000.0), 600.0, 40, 40).unwrap();
        let inst = Instance::new(&s, &g).unwrap();
        let (p, trace) = inst
            .ot_association(&SolverConfig::default(), &inst.snr_association())
            .unwrap();
        assert!(trace.converged);
        assert!((p.masses()[0] - 0.5).abs() <= 1e-6);
        assert!((p.masses()[1] - 0.5).abs() <= 1e-6);
    }

    #[test]
    fn hotspot_solution_beats_init() {
        let s = Scenario::urban_hotspot(400.0).unwrap();
        let g = s.density().build(*s.area(), 60, 60).unwrap();
        let inst = Instance::new(&s, &g).unwrap();
        let init = inst.snr_association();
        let (p, trace) = inst.ot_association(&SolverConfig::default(), &init).unwrap();
        let before = metrics::average_delay(&s, &g, &init).unwrap();
        let after = metrics::average_delay(&s, &g, &p).unwrap();
        assert!(after < before, "{after} vs {before}");
        assert_eq!(trace.initial_objective, before);
        assert!(trace.objective.len() <= SolverConfig::default().max_iter);
        assert!(inst.fixed_point_violation(&init, 1e-12).unwrap() > 0.0);
    }

    #[test]
    fn constant_step_is_selectable() {
        let s = Scenario::urban_hotspot(800.0).unwrap();
        let g = s.density().build(*s.area(), 30, 30).unwrap();
        let inst = Instance::new(&s, &g).unwrap();
        let cfg = SolverConfig {
            schedule: StepSchedule::Constant,
            max_iter: 50,
            ..SolverConfig::default()
        };
        let init = inst.snr_association();
        let (p, trace) = inst.ot_association(&cfg, &init).unwrap();
        assert!(trace.iterations <= 50);
        let after = metrics::average_delay(&s, &g, &p).unwrap();
        assert!(after <= trace.initial_objective);
    }

    #[test]
    fn rejects_foreign_init_and_bad_config() {
        let s = Scenario::urban_hotspot(800.0).unwrap();
        let g = uniform_density(*s.area(), 5, 5).unwrap();
        let other = uniform_density(*s.area(), 4, 4).unwrap();
        let inst = Instance::new(&s, &g).unwrap();
        let foreign = Partition::from_labels(&other, s.node_ids(), vec![0; 16]).unwrap();
        assert!(inst.ot_association(&SolverConfig::default(), &foreign).is_err());
        let cfg = SolverConfig {
            damping: 0.0,
            ..SolverConfig::default()
        };
        assert!(inst.ot_association(&cfg, &inst.snr_association()).is_err());
        assert!(Partition::from_labels(&g, s.node_ids(), vec![6; 25]).is_err());
    }

    #[test]
    fn label_grid_export() {
        let pts = PointSet::new(vec![(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)], vec![1.0, 1.0, 2.0]).unwrap();
        let p = Partition::from_labels(&pts, vec![5, 7], vec![1, 0, 1]).unwrap();
        let mut grid = Vec::new();
        p.write_label_grid(&mut grid).unwrap();
        assert_eq!(String::from_utf8(grid).unwrap(), "7,5,7\n");
        let mut masses = Vec::new();
        p.write_masses(&mut masses).unwrap();
        assert_eq!(String::from_utf8(masses).unwrap(), "node_id,mass\n5,0.25\n7,0.75\n");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn sample_points() -> Vec<(f64, f64)> {
            (0..25)
                .map(|i| (160.0 * (i % 5) as f64 * 5.0 + 37.0, 160.0 * (i / 5) as f64 * 5.0 + 11.0))
                .collect()
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn bandwidth_scale_invariance(scale in 1e-3f64..1e3, a0 in 0.01f64..1.0, a1 in 0.01f64..1.0, a2 in 0.01f64..1.0) {
                // W also sets the noise power N0 W; hold that fixed so only
                // the rule's 1/W factor moves.
                let base = vec![
                    node(0, NodeKind::Aerial, 1000.0, 1000.0),
                    node(1, NodeKind::Terrestrial, 3000.0, 2000.0),
                    node(2, NodeKind::Aerial, 2500.0, 3500.0),
                ];
                let scaled: Vec<_> = base.iter().map(|n| NodeSpec { bandwidth: n.bandwidth * scale, ..*n }).collect();
                let c = ChannelParams::dense_urban();
                let quieter = ChannelParams::new(
                    c.carrier_freq(), c.ref_distance(), c.mu_los(), c.mu_nlos(),
                    c.alpha(), c.gamma(), c.pathloss_exp(), c.noise_psd() / scale,
                ).unwrap();
                let s1 = scenario(base);
                let s2 = Scenario::new(*s1.area(), scaled, quieter, 300, 1e6).unwrap();
                for pt in sample_points() {
                    prop_assert_eq!(
                        assignment_rule(&s1, &[a0, a1, a2], pt).unwrap(),
                        assignment_rule(&s2, &[a0, a1, a2], pt).unwrap()
                    );
                }
            }

            #[test]
            fn payload_invariance(bits in 1.0f64..1e9, a0 in 0.01f64..1.0, a1 in 0.01f64..1.0) {
                let s1 = scenario(vec![
                    node(0, NodeKind::Aerial, 1200.0, 1500.0),
                    node(1, NodeKind::Terrestrial, 3000.0, 2000.0),
                ]);
                let s2 = s1.clone().with_payload_bits(bits).unwrap();
                for pt in sample_points() {
                    prop_assert_eq!(
                        assignment_rule(&s1, &[a0, a1], pt).unwrap(),
                        assignment_rule(&s2, &[a0, a1], pt).unwrap()
                    );
                }
            }

            #[test]
            fn partitions_cover_with_unit_mass(sigma in 100.0f64..3000.0, cx in 0.0f64..4000.0, cy in 0.0f64..4000.0) {
                let s = Scenario::urban_hotspot(sigma).unwrap();
                let g = truncated_gaussian_density(*s.area(), (cx, cy), sigma, 24, 24).unwrap();
                let inst = Instance::new(&s, &g).unwrap();
                let init = inst.snr_association();
                let cfg = SolverConfig { max_iter: 40, ..SolverConfig::default() };
                let (p, _) = inst.ot_association(&cfg, &init).unwrap();
                for part in [&init, &p] {
                    prop_assert_eq!(part.labels().len(), 24 * 24);
                    prop_assert!(part.labels().iter().all(|&l| l < 6));
                    prop_assert!((part.masses().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
                }
            }
        }
    }
}
