//! Exhaustive ground truth for toy instances.
//!
//! The objective is evaluated here from scratch, without going through the
//! metrics module, so the oracle stays independent of the code it checks.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::association::{Instance, Partition, SolverConfig, CERTIFICATE_TOLERANCE};
use crate::channel::{delay_kernel, snr};
use crate::density::{MassSupport, PointSet};
use crate::error::{Error, Result};
use crate::scenario::{Area, ChannelParams, NodeKind, NodeSpec, Scenario};

pub const MAX_POINTS: usize = 12;
pub const MAX_NODES: usize = 4;
pub const MAX_ASSIGNMENTS: u64 = 20_000_000;

/// Globally optimal assignment of `points` to the scenario's nodes and its
/// average delay. Ties go to the lexicographically first assignment.
pub fn enumerate_optimal(scenario: &Scenario, points: &PointSet) -> Result<(Partition, f64)> {
    let k = scenario.nodes().len();
    let p = points.len();
    let total = (k as u64).checked_pow(p as u32).unwrap_or(u64::MAX);
    if p > MAX_POINTS || k > MAX_NODES || total > MAX_ASSIGNMENTS {
        return Err(Error::InstanceTooLarge(format!(
            "{k} nodes x {p} points ({total} assignments; limits {MAX_NODES} nodes, {MAX_POINTS} points, {MAX_ASSIGNMENTS} assignments)"
        )));
    }

    // F(v_i, s_l) * m_i and the per-node load factor N / W_l.
    let mut weighted = vec![vec![0.0; p]; k];
    for (l, node) in scenario.nodes().iter().enumerate() {
        for (i, slot) in weighted[l].iter_mut().enumerate() {
            *slot = delay_kernel(scenario, node, points.point(i))? * points.mass(i);
        }
    }
    let load: Vec<f64> = scenario
        .nodes()
        .iter()
        .map(|n| f64::from(scenario.total_users()) / n.bandwidth)
        .collect();

    let mut labels = vec![0usize; p];
    let mut best_labels = labels.clone();
    let mut best = f64::INFINITY;
    let mut mass = vec![0.0; k];
    let mut cost = vec![0.0; k];
    loop {
        mass.iter_mut().for_each(|m| *m = 0.0);
        cost.iter_mut().for_each(|c| *c = 0.0);
        for (i, &l) in labels.iter().enumerate() {
            mass[l] += points.mass(i);
            cost[l] += weighted[l][i];
        }
        let value: f64 = (0..k).map(|l| load[l] * mass[l] * cost[l]).sum();
        if value < best {
            best = value;
            best_labels.copy_from_slice(&labels);
        }
        // odometer, last point fastest: lexicographic order
        let mut pos = p;
        loop {
            if pos == 0 {
                let partition = Partition::from_labels(points, scenario.node_ids(), best_labels)?;
                return Ok((partition, best));
            }
            pos -= 1;
            labels[pos] += 1;
            if labels[pos] < k {
                break;
            }
            labels[pos] = 0;
        }
    }
}

/// A random scenario with a matching weighted point set.
#[derive(Debug, Clone)]
pub struct ToyInstance {
    pub scenario: Scenario,
    pub points: PointSet,
}

/// Nodes and points drawn uniformly over a 2 km x 2 km area. Each node is
/// aerial or terrestrial with equal odds; aerial nodes fly at 100-300 m with
/// 0.5-2 W, terrestrial ones stand 10-40 m tall with 10-40 W. Bandwidths are
/// 1 MHz, N = 300, b = 1 Mb, point weights uniform in [0.1, 1).
pub fn random_toy_instance<R: Rng + ?Sized>(rng: &mut R, num_nodes: usize, num_points: usize) -> Result<ToyInstance> {
    let side = 2000.0;
    let area = Area::square(side)?;
    let nodes = (0..num_nodes)
        .map(|id| {
            let aerial = rng.gen_bool(0.5);
            let (kind, height, tx_power) = if aerial {
                (NodeKind::Aerial, rng.gen_range(100.0..300.0), rng.gen_range(0.5..2.0))
            } else {
                (
                    NodeKind::Terrestrial,
                    rng.gen_range(10.0..40.0),
                    rng.gen_range(10.0..40.0),
                )
            };
            NodeSpec {
                id: id as u32,
                kind,
                x: rng.gen_range(0.0..side),
                y: rng.gen_range(0.0..side),
                height,
                tx_power,
                bandwidth: 1e6,
            }
        })
        .collect();
    let scenario = Scenario::new(area, nodes, ChannelParams::dense_urban(), 300, 1e6)?;
    let pts = (0..num_points)
        .map(|_| (rng.gen_range(0.0..side), rng.gen_range(0.0..side)))
        .collect();
    let weights = (0..num_points).map(|_| rng.gen_range(0.1..1.0)).collect();
    Ok(ToyInstance {
        scenario,
        points: PointSet::new(pts, weights)?,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub trial: usize,
    pub points: usize,
    pub oracle: f64,
    pub solver: f64,
    /// `(solver - oracle) / oracle`; never negative for a correct oracle.
    pub relative_gap: f64,
    pub converged: bool,
    pub violation: f64,
    /// Certificate of the oracle's own optimum under its masses.
    pub oracle_violation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub seed: u64,
    pub trials: Vec<TrialResult>,
}

impl OracleReport {
    pub fn matches(&self, rel_tol: f64) -> usize {
        self.trials.iter().filter(|t| t.relative_gap.abs() <= rel_tol).count()
    }

    pub fn max_gap(&self) -> f64 {
        self.trials.iter().map(|t| t.relative_gap).fold(0.0, f64::max)
    }

    pub fn converged(&self) -> usize {
        self.trials.iter().filter(|t| t.converged).count()
    }

    /// Trials where the solver returned a certified fixed point worse than
    /// the oracle optimum.
    pub fn worse_fixed_points(&self, rel_tol: f64) -> Vec<&TrialResult> {
        self.trials
            .iter()
            .filter(|t| t.converged && t.relative_gap > rel_tol)
            .collect()
    }

    /// Largest certificate among converged solver outputs.
    pub fn max_converged_violation(&self) -> f64 {
        self.trials
            .iter()
            .filter(|t| t.converged)
            .map(|t| t.violation)
            .fold(0.0, f64::max)
    }

    pub fn certificates_hold(&self) -> bool {
        self.max_converged_violation() <= CERTIFICATE_TOLERANCE
    }
}

/// Solves `trials` seeded toy instances (3 nodes, 8-12 points) with the
/// transport iteration from max-SNR and with exhaustive search.
pub fn oracle_check(seed: u64, trials: usize, cfg: &SolverConfig) -> Result<OracleReport> {
    if trials == 0 {
        return Err(Error::Usage("trials must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut results = Vec::with_capacity(trials);
    for trial in 0..trials {
        let num_points = rng.gen_range(8..=MAX_POINTS);
        let toy = random_toy_instance(&mut rng, 3, num_points)?;
        let (best, oracle) = enumerate_optimal(&toy.scenario, &toy.points)?;
        let inst = Instance::new(&toy.scenario, &toy.points)?;
        let (found, trace) = inst.ot_association(cfg, &inst.snr_association())?;
        let solver = inst.average_delay(&found);
        results.push(TrialResult {
            trial,
            points: num_points,
            oracle,
            solver,
            relative_gap: (solver - oracle) / oracle,
            converged: trace.converged,
            violation: trace.violation,
            oracle_violation: inst.fixed_point_violation(&best, cfg.mass_floor)?,
        });
    }
    Ok(OracleReport { seed, trials: results })
}

/// Max-SNR label of a point, computed directly from the channel model.
pub fn strongest_node(scenario: &Scenario, point: (f64, f64)) -> u32 {
    let mut best = &scenario.nodes()[0];
    for node in &scenario.nodes()[1..] {
        if snr(scenario.channel(), node, point) > snr(scenario.channel(), best, point) {
            best = node;
        }
    }
    best.id
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::average_delay;

    #[test]
    fn single_node_only_assignment() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let toy = random_toy_instance(&mut rng, 1, 6).unwrap();
        let (p, value) = enumerate_optimal(&toy.scenario, &toy.points).unwrap();
        assert!(p.labels().iter().all(|&l| l == 0));
        let node = &toy.scenario.nodes()[0];
        let sum: f64 = (0..6)
            .map(|i| delay_kernel(&toy.scenario, node, toy.points.point(i)).unwrap() * toy.points.mass(i))
            .sum();
        let closed = 300.0 / node.bandwidth * sum;
        assert!(((value - closed) / closed).abs() < 1e-14);
    }

    #[test]
    fn symmetric_pair_splits() {
        let area = Area::square(2000.0).unwrap();
        let mk = |id, x| NodeSpec {
            id,
            kind: NodeKind::Terrestrial,
            x,
            y: 1000.0,
            height: 20.0,
            tx_power: 40.0,
            bandwidth: 1e6,
        };
        let s = Scenario::new(
            area,
            vec![mk(0, 500.0), mk(1, 1500.0)],
            ChannelParams::dense_urban(),
            300,
            1e6,
        )
        .unwrap();
        let pts = PointSet::new(vec![(500.0, 1000.0), (1500.0, 1000.0)], vec![1.0, 1.0]).unwrap();
        let (p, _) = enumerate_optimal(&s, &pts).unwrap();
        assert_eq!(p.labels(), &[0, 1]);
    }

    #[test]
    fn oracle_value_matches_metrics_and_beats_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let toy = random_toy_instance(&mut rng, 3, 7).unwrap();
        let (best, value) = enumerate_optimal(&toy.scenario, &toy.points).unwrap();
        let via_metrics = average_delay(&toy.scenario, &toy.points, &best).unwrap();
        assert!(((value - via_metrics) / value).abs() < 1e-12);
        // spot-check against a sample of other assignments
        for code in (0..3usize.pow(7)).step_by(37) {
            let labels: Vec<usize> = (0..7).map(|i| (code / 3usize.pow(6 - i)) % 3).collect();
            let other = Partition::from_labels(&toy.points, toy.scenario.node_ids(), labels).unwrap();
            let d = average_delay(&toy.scenario, &toy.points, &other).unwrap();
            assert!(value <= d * (1.0 + 1e-12));
        }
    }

    #[test]
    fn too_large_is_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let toy = random_toy_instance(&mut rng, 3, 13).unwrap();
        assert!(matches!(
            enumerate_optimal(&toy.scenario, &toy.points),
            Err(Error::InstanceTooLarge(_))
        ));
        let toy = random_toy_instance(&mut rng, 5, 3).unwrap();
        assert!(enumerate_optimal(&toy.scenario, &toy.points).is_err());
    }

    #[test]
    fn report_is_reproducible() {
        let a = oracle_check(11, 3, &SolverConfig::default()).unwrap();
        let b = oracle_check(11, 3, &SolverConfig::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.trials.iter().all(|t| t.relative_gap >= -1e-12));
        assert!(matches!(
            oracle_check(11, 0, &SolverConfig::default()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn strongest_node_agrees_with_snr_association() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let toy = random_toy_instance(&mut rng, 4, 12).unwrap();
        let p = crate::association::snr_association(&toy.scenario, &toy.points).unwrap();
        for i in 0..12 {
            assert_eq!(p.label_id(i), strongest_node(&toy.scenario, toy.points.point(i)));
        }
    }
}
