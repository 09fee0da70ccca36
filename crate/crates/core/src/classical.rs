//! Classical global minimization: exhaustive scan, pure random search and
//! the random-then-refine hybrid.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{Cost, CostOracle, SpaceOracle, ValueCost};
use crate::quantum::QuantumCostReport;
use crate::space::{MixedRadixSpace, RefinementSpec, SearchDomain};

/// Accounting for one phase of a search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Phase {
    pub label: String,
    /// States in the domain searched by this phase.
    pub domain_size: u64,
    pub classical_evals: u64,
    pub infeasible_evals: u64,
    pub grover_rotations: u64,
    pub best_cost: Cost,
}

impl Phase {
    pub fn feasible_evals(&self) -> u64 {
        self.classical_evals - self.infeasible_evals
    }
}

/// Result of any search method.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchOutcome {
    /// Index of the best state in the space it was found in (the refined
    /// space when `from_refined` is set).
    pub best_index: u64,
    pub best_cost: Cost,
    /// Decoded values of the best state.
    pub parameters: Vec<f64>,
    /// Oracle invocations charged to the algorithm.
    pub classical_evals: u64,
    pub infeasible_evals: u64,
    pub grover_rotations: u64,
    /// Oracle invocations made only to simulate the quantum device.
    pub simulator_evals: u64,
    pub seed: Option<u64>,
    /// (evaluations so far, incumbent cost) at each improvement.
    pub trace: Vec<(u64, f64)>,
    pub from_refined: bool,
    pub phases: Vec<Phase>,
    pub quantum: Option<QuantumCostReport>,
}

impl SearchOutcome {
    fn single_phase(label: &str, domain_size: u64, outcome: SearchOutcome) -> SearchOutcome {
        let phase = Phase {
            label: label.to_string(),
            domain_size,
            classical_evals: outcome.classical_evals,
            infeasible_evals: outcome.infeasible_evals,
            grover_rotations: outcome.grover_rotations,
            best_cost: outcome.best_cost,
        };
        SearchOutcome {
            phases: vec![phase],
            ..outcome
        }
    }

    pub(crate) fn empty(best_index: u64, best_cost: Cost) -> SearchOutcome {
        SearchOutcome {
            best_index,
            best_cost,
            parameters: Vec::new(),
            classical_evals: 0,
            infeasible_evals: 0,
            grover_rotations: 0,
            simulator_evals: 0,
            seed: None,
            trace: Vec::new(),
            from_refined: false,
            phases: Vec::new(),
            quantum: None,
        }
    }
}

#[derive(Clone, Copy)]
struct ChunkBest {
    position: u64,
    cost: Cost,
    infeasible: u64,
}

/// Evaluates every state of `domain` and returns the lowest cost, ties going
/// to the lowest position. Runs in parallel; the result does not depend on
/// the number of worker threads.
pub fn exhaustive_min<O, D>(oracle: &O, domain: &D) -> Result<SearchOutcome>
where
    O: CostOracle + ?Sized,
    D: SearchDomain + ?Sized,
{
    let n = domain.len();
    if n == 0 {
        return Err(Error::SubsetSize {
            requested: 0,
            available: 0,
        });
    }
    let chunk = (n / (rayon::current_num_threads() as u64 * 16)).clamp(256, 1 << 16);
    let chunks = n.div_ceil(chunk);
    // Each chunk reports its own running minima so the global trace can be
    // rebuilt in scan order.
    let results: Vec<(ChunkBest, Vec<(u64, Cost)>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * chunk;
            let end = (start + chunk).min(n);
            let mut best = ChunkBest {
                position: start,
                cost: Cost::Infeasible,
                infeasible: 0,
            };
            let mut records = Vec::new();
            for k in start..end {
                let cost = oracle.cost(domain.state(k));
                if !cost.is_feasible() {
                    best.infeasible += 1;
                    continue;
                }
                if cost < best.cost {
                    best.cost = cost;
                    best.position = k;
                    records.push((k, cost));
                }
            }
            (best, records)
        })
        .collect();

    let mut best = ChunkBest {
        position: 0,
        cost: Cost::Infeasible,
        infeasible: 0,
    };
    let mut trace = Vec::new();
    for (chunk_best, records) in &results {
        best.infeasible += chunk_best.infeasible;
        for &(k, cost) in records {
            if cost < best.cost {
                best.cost = cost;
                best.position = k;
                trace.push((k + 1, cost.value().unwrap_or(f64::INFINITY)));
            }
        }
    }
    if !best.cost.is_feasible() {
        return Err(Error::AllInfeasible { evaluated: n });
    }
    let index = domain.state(best.position);
    let outcome = SearchOutcome {
        parameters: oracle.parameters(index),
        classical_evals: n,
        infeasible_evals: best.infeasible,
        trace,
        ..SearchOutcome::empty(index, best.cost)
    };
    Ok(SearchOutcome::single_phase("exhaustive", n, outcome))
}

/// Pure random search: `n` independent uniform draws with replacement,
/// keeping the running minimum. If every draw is infeasible the outcome
/// carries an infeasible cost and the first draw.
pub fn random_min<O, D, R>(oracle: &O, domain: &D, n: u64, rng: &mut R) -> Result<SearchOutcome>
where
    O: CostOracle + ?Sized,
    D: SearchDomain + ?Sized,
    R: Rng + ?Sized,
{
    let size = domain.len();
    if size == 0 || n == 0 {
        return Err(Error::Config("random search needs a nonempty domain and n >= 1".into()));
    }
    let mut best_index = domain.state(rng.gen_range(0..size));
    let mut best_cost = oracle.cost(best_index);
    let mut infeasible = u64::from(!best_cost.is_feasible());
    let mut trace = Vec::new();
    if let Some(v) = best_cost.value() {
        trace.push((1, v));
    }
    for i in 1..n {
        let index = domain.state(rng.gen_range(0..size));
        let cost = oracle.cost(index);
        if !cost.is_feasible() {
            infeasible += 1;
        } else if cost < best_cost {
            best_cost = cost;
            best_index = index;
            trace.push((i + 1, cost.value().unwrap_or(f64::INFINITY)));
        }
    }
    let outcome = SearchOutcome {
        parameters: oracle.parameters(best_index),
        classical_evals: n,
        infeasible_evals: infeasible,
        trace,
        ..SearchOutcome::empty(best_index, best_cost)
    };
    Ok(SearchOutcome::single_phase("random", size, outcome))
}

/// Probability that the best of `n` uniform draws (with replacement) from
/// `total` states ranks within the best `r`: 1 − (1 − r/N)ⁿ.
pub fn rank_success_probability(r: u64, n: u64, total: u64) -> Result<f64> {
    if total == 0 || r == 0 || r > total {
        return Err(Error::Domain(format!("rank {r} outside 1..={total}")));
    }
    if n == 0 {
        return Ok(0.0);
    }
    if r == total {
        return Ok(1.0);
    }
    let q = 1.0 - r as f64 / total as f64;
    let n = i32::try_from(n).map_or_else(|_| q.powf(n as f64), |n| q.powi(n));
    Ok(1.0 - n)
}

/// Where the second phase of a hybrid search looks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Refinement {
    /// A finer lattice around the random-phase incumbent.
    Around(RefinementSpec),
    /// A fixed space, searched regardless of the incumbent.
    Explicit(MixedRadixSpace),
}

impl Refinement {
    pub fn space_around(&self, space: &MixedRadixSpace, center: u64) -> Result<MixedRadixSpace> {
        match self {
            Refinement::Around(spec) => space.refine_around(center, spec),
            Refinement::Explicit(s) => Ok(s.clone()),
        }
    }
}

/// Random search on `space`, then an exhaustive scan of the refined space.
/// The better of the two incumbents is returned; evaluation counts add up.
pub fn hybrid_min<P, R>(
    problem: &P,
    space: &MixedRadixSpace,
    n_random: u64,
    refinement: &Refinement,
    rng: &mut R,
) -> Result<SearchOutcome>
where
    P: ValueCost + ?Sized,
    R: Rng + ?Sized,
{
    let coarse = random_min(&SpaceOracle::new(space, problem), space, n_random, rng)?;
    let refined_space = refinement.space_around(space, coarse.best_index)?;
    let refined_oracle = SpaceOracle::new(&refined_space, problem);
    let fine = match exhaustive_min(&refined_oracle, &refined_space) {
        Ok(o) => o,
        Err(Error::AllInfeasible { evaluated }) => SearchOutcome::single_phase(
            "exhaustive",
            evaluated,
            SearchOutcome {
                classical_evals: evaluated,
                infeasible_evals: evaluated,
                ..SearchOutcome::empty(0, Cost::Infeasible)
            },
        ),
        Err(e) => return Err(e),
    };
    Ok(combine(coarse, fine, n_random))
}

/// Merges a coarse and a refined phase; ties keep the coarse incumbent.
pub(crate) fn combine(coarse: SearchOutcome, fine: SearchOutcome, offset: u64) -> SearchOutcome {
    let from_refined = fine.best_cost < coarse.best_cost;
    let mut trace = coarse.trace.clone();
    let mut running = coarse.best_cost;
    let shift = coarse.classical_evals.max(offset);
    for &(k, v) in &fine.trace {
        if Cost::new(v) < running {
            running = Cost::new(v);
            trace.push((shift + k, v));
        }
    }
    let mut phases = coarse.phases.clone();
    for mut p in fine.phases.clone() {
        p.label = format!("refined {}", p.label);
        phases.push(p);
    }
    let (best_index, best_cost, parameters) = if from_refined {
        (fine.best_index, fine.best_cost, fine.parameters)
    } else {
        (coarse.best_index, coarse.best_cost, coarse.parameters)
    };
    SearchOutcome {
        best_index,
        best_cost,
        parameters,
        classical_evals: coarse.classical_evals + fine.classical_evals,
        infeasible_evals: coarse.infeasible_evals + fine.infeasible_evals,
        grover_rotations: coarse.grover_rotations + fine.grover_rotations,
        simulator_evals: coarse.simulator_evals + fine.simulator_evals,
        seed: coarse.seed,
        trace,
        from_refined,
        phases,
        quantum: None,
    }
}
