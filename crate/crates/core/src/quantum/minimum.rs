use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::GroverModel;
use crate::classical::{combine, Phase, Refinement, SearchOutcome};
use crate::error::{Error, Result};
use crate::oracle::{Cost, CostOracle, SpaceOracle, ValueCost};
use crate::space::{MixedRadixSpace, SearchDomain};

/// Prefactor converting √N into an expected query cost for minimum finding.
pub const DEFAULT_EPSILON: f64 = 2.46;
pub const DEFAULT_LAMBDA: f64 = 1.34;

/// round(√N · ε).
pub fn theoretical_cost(n: u64, epsilon: f64) -> u64 {
    ((n as f64).sqrt() * epsilon).round() as u64
}

/// Rotation budget 22.5√N + 1.4·log₂²N of the minimum-finding loop.
pub fn rotation_budget(n: u64) -> f64 {
    let n = n as f64;
    22.5 * n.sqrt() + 1.4 * n.log2().powi(2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumCostReport {
    pub epsilon: f64,
    /// Domain size of each quantum phase.
    pub phase_sizes: Vec<u64>,
    /// Σ round(√N_phase · ε).
    pub theoretical_cost: u64,
    pub simulated_rotations: u64,
    /// Largest single rotation count drawn.
    pub max_draw: u64,
    /// Rotation total before the final draw; always below the budget.
    pub rotations_before_last: u64,
}

impl QuantumCostReport {
    fn new(epsilon: f64, n: u64) -> Self {
        QuantumCostReport {
            epsilon,
            phase_sizes: vec![n],
            theoretical_cost: theoretical_cost(n, epsilon),
            simulated_rotations: 0,
            max_draw: 0,
            rotations_before_last: 0,
        }
    }

    fn merge(mut self, other: &QuantumCostReport) -> Self {
        self.phase_sizes.extend_from_slice(&other.phase_sizes);
        self.theoretical_cost += other.theoretical_cost;
        self.simulated_rotations += other.simulated_rotations;
        self.max_draw = self.max_draw.max(other.max_draw);
        self
    }
}

/// Running totals for a quantum run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Ledger {
    pub rotations: u64,
    /// Oracle calls made by the algorithm (initial draw and verifications).
    pub classical: u64,
    /// Oracle calls made to build the simulator's cost table.
    pub simulator: u64,
}

/// Costs of every state in a domain, sorted so that the marked set for any
/// threshold is a prefix. Building it is simulator work.
#[derive(Debug, Clone)]
pub struct CostTable {
    sorted: Vec<(Cost, u64)>,
}

impl CostTable {
    pub fn build<O, D>(oracle: &O, domain: &D) -> Self
    where
        O: CostOracle + ?Sized,
        D: SearchDomain + ?Sized,
    {
        let mut sorted: Vec<(Cost, u64)> = (0..domain.len())
            .into_par_iter()
            .map(|k| (oracle.cost(domain.state(k)), k))
            .collect();
        sorted.par_sort_unstable();
        CostTable { sorted }
    }

    pub fn len(&self) -> u64 {
        self.sorted.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Number of states with cost strictly below `threshold`.
    pub fn marked_count(&self, threshold: Cost) -> u64 {
        self.sorted.partition_point(|&(c, _)| c < threshold) as u64
    }

    pub fn minimum(&self) -> Option<Cost> {
        self.sorted.first().map(|&(c, _)| c)
    }
}

/// One Grover phase with r rotations against `threshold`, followed by a
/// measurement and a classical check of the measured state. Returns the
/// domain position and its cost.
#[allow(clippy::too_many_arguments)]
pub fn sample_grover<O, D, R>(
    oracle: &O,
    domain: &D,
    table: &CostTable,
    threshold: Cost,
    r: u64,
    rng: &mut R,
    ledger: &mut Ledger,
) -> Result<(u64, Cost)>
where
    O: CostOracle + ?Sized,
    D: SearchDomain + ?Sized,
    R: Rng + ?Sized,
{
    let n = table.len();
    if n == 0 {
        return Err(Error::Domain("cannot search an empty domain".into()));
    }
    let m = table.marked_count(threshold);
    let p = GroverModel::new(n, m)?.success_probability(r);
    let hit = m > 0 && (m == n || rng.gen::<f64>() < p);
    let slot = if hit {
        rng.gen_range(0..m)
    } else {
        m + rng.gen_range(0..n - m)
    };
    let position = table.sorted[slot as usize].1;
    ledger.rotations += r;
    ledger.classical += 1;
    Ok((position, oracle.cost(domain.state(position))))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DurrHoyerConfig {
    /// Growth factor of the rotation range after a failed phase.
    pub lambda: f64,
    pub epsilon: f64,
}

impl Default for DurrHoyerConfig {
    fn default() -> Self {
        DurrHoyerConfig {
            lambda: DEFAULT_LAMBDA,
            epsilon: DEFAULT_EPSILON,
        }
    }
}

/// Adaptive minimum finding over `domain` using a prebuilt cost table.
///
/// Start from a uniformly random state y. While fewer than the budgeted
/// rotations have been spent, draw r uniformly from {0, …, ⌈m − 1⌉}, run a
/// Grover phase marking states cheaper than y and check the measured state
/// x: if it is cheaper, y ← x and m ← 1, otherwise m ← λm.
pub fn durr_hoyer_min<O, D, R>(
    oracle: &O,
    domain: &D,
    table: &CostTable,
    cfg: &DurrHoyerConfig,
    rng: &mut R,
) -> Result<SearchOutcome>
where
    O: CostOracle + ?Sized,
    D: SearchDomain + ?Sized,
    R: Rng + ?Sized,
{
    if !(cfg.lambda > 1.0) {
        return Err(Error::Config(format!("lambda must exceed 1, got {}", cfg.lambda)));
    }
    let n = domain.len();
    if n == 0 || table.len() != n {
        return Err(Error::Domain("cost table does not match the domain".into()));
    }
    let mut ledger = Ledger {
        simulator: n,
        ..Ledger::default()
    };
    let mut report = QuantumCostReport::new(cfg.epsilon, n);
    let mut y = rng.gen_range(0..n);
    let mut cost_y = oracle.cost(domain.state(y));
    ledger.classical += 1;
    let mut infeasible = u64::from(!cost_y.is_feasible());
    let mut trace = Vec::new();
    if let Some(v) = cost_y.value() {
        trace.push((1, v));
    }
    if n > 1 {
        let budget = rotation_budget(n);
        let mut m = 1.0f64;
        while (ledger.rotations as f64) < budget {
            let r_max = (m - 1.0).ceil().min(1e15) as u64;
            let r = rng.gen_range(0..=r_max);
            report.rotations_before_last = ledger.rotations;
            report.max_draw = report.max_draw.max(r);
            let (x, cost_x) = sample_grover(oracle, domain, table, cost_y, r, rng, &mut ledger)?;
            if !cost_x.is_feasible() {
                infeasible += 1;
            }
            if cost_x < cost_y {
                y = x;
                cost_y = cost_x;
                m = 1.0;
                trace.push((ledger.classical, cost_x.value().unwrap_or(f64::INFINITY)));
            } else {
                m *= cfg.lambda;
            }
        }
    }
    report.simulated_rotations = ledger.rotations;
    let index = domain.state(y);
    let phase = Phase {
        label: "durr-hoyer".into(),
        domain_size: n,
        classical_evals: ledger.classical,
        infeasible_evals: infeasible,
        grover_rotations: ledger.rotations,
        best_cost: cost_y,
    };
    Ok(SearchOutcome {
        parameters: oracle.parameters(index),
        classical_evals: ledger.classical,
        infeasible_evals: infeasible,
        grover_rotations: ledger.rotations,
        simulator_evals: ledger.simulator,
        trace,
        phases: vec![phase],
        quantum: Some(report),
        ..SearchOutcome::empty(index, cost_y)
    })
}

/// Minimum finding over the whole space.
pub fn quantum_exhaustive_min<O, R>(
    oracle: &O,
    space: &MixedRadixSpace,
    cfg: &DurrHoyerConfig,
    rng: &mut R,
) -> Result<SearchOutcome>
where
    O: CostOracle + ?Sized,
    R: Rng + ?Sized,
{
    let table = CostTable::build(oracle, space);
    durr_hoyer_min(oracle, space, &table, cfg, rng)
}

/// Minimum finding over `s` states drawn without replacement.
pub fn quantum_random_min<O, R>(
    oracle: &O,
    space: &MixedRadixSpace,
    s: u64,
    cfg: &DurrHoyerConfig,
    rng: &mut R,
) -> Result<SearchOutcome>
where
    O: CostOracle + ?Sized,
    R: Rng + ?Sized,
{
    let subset = space.sample_subset(s, rng)?;
    let table = CostTable::build(oracle, &subset);
    durr_hoyer_min(oracle, &subset, &table, cfg, rng)
}

/// Quantum random phase, then minimum finding over the refined space.
pub fn quantum_hybrid_min<P, R>(
    problem: &P,
    space: &MixedRadixSpace,
    s: u64,
    refinement: &Refinement,
    cfg: &DurrHoyerConfig,
    rng: &mut R,
) -> Result<SearchOutcome>
where
    P: ValueCost + ?Sized,
    R: Rng + ?Sized,
{
    let coarse = quantum_random_min(&SpaceOracle::new(space, problem), space, s, cfg, rng)?;
    let refined_space = refinement.space_around(space, coarse.best_index)?;
    let fine = quantum_exhaustive_min(&SpaceOracle::new(&refined_space, problem), &refined_space, cfg, rng)?;
    let report = match (&coarse.quantum, &fine.quantum) {
        (Some(a), Some(b)) => Some(a.clone().merge(b)),
        _ => None,
    };
    let mut out = combine(coarse, fine, 0);
    out.quantum = report;
    Ok(out)
}
