//! Costs, infeasibility verdicts and the oracle abstraction that the search
//! methods see.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use serde::{Deserialize, Serialize};

use crate::space::MixedRadixSpace;

/// Cost of a state. `Infeasible` orders above every finite cost, so it is
/// never the minimum of a set that contains a feasible state.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum Cost {
    Finite(f64),
    Infeasible,
}

impl Cost {
    /// Non-finite values collapse to `Infeasible`.
    pub fn new(value: f64) -> Self {
        if value.is_finite() {
            Cost::Finite(value)
        } else {
            Cost::Infeasible
        }
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Cost::Finite(v) => Some(v),
            Cost::Infeasible => None,
        }
    }

    pub fn is_feasible(self) -> bool {
        matches!(self, Cost::Finite(_))
    }
}

impl PartialEq for Cost {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Cost {}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => a.total_cmp(b),
            (Cost::Finite(_), Cost::Infeasible) => Ordering::Less,
            (Cost::Infeasible, Cost::Finite(_)) => Ordering::Greater,
            (Cost::Infeasible, Cost::Infeasible) => Ordering::Equal,
        }
    }
}

impl From<Result<f64, Infeasibility>> for Cost {
    fn from(verdict: Result<f64, Infeasibility>) -> Self {
        match verdict {
            Ok(v) => Cost::new(v),
            Err(_) => Cost::Infeasible,
        }
    }
}

impl std::fmt::Display for Cost {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cost::Finite(v) => write!(f, "{v}"),
            Cost::Infeasible => f.write_str("infeasible"),
        }
    }
}

/// Why a decoded state has no finite cost.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Infeasibility {
    #[error("{constraint} violated at {at}")]
    Constraint { constraint: &'static str, at: f64 },
    #[error("degenerate state: {0}")]
    Degenerate(&'static str),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("no soft landing: {0}")]
    Landing(&'static str),
}

/// Pure map from state index to cost. Implementations must be deterministic
/// and safe to call concurrently.
pub trait CostOracle: Sync {
    fn cost(&self, index: u64) -> Cost;

    /// Decoded parameters of a state, for reporting.
    fn parameters(&self, _index: u64) -> Vec<f64> {
        Vec::new()
    }
}

impl<T: CostOracle + ?Sized> CostOracle for &T {
    fn cost(&self, index: u64) -> Cost {
        (**self).cost(index)
    }

    fn parameters(&self, index: u64) -> Vec<f64> {
        (**self).parameters(index)
    }
}

/// Cost of a decoded value tuple. Every problem implements this; pairing it
/// with a space yields a [`CostOracle`] for that space, which is how hybrid
/// searches evaluate refined grids.
pub trait ValueCost: Sync {
    fn cost_of(&self, values: &[f64]) -> Cost;
}

/// A problem evaluated on a particular space.
pub struct SpaceOracle<'a, P: ValueCost + ?Sized> {
    space: &'a MixedRadixSpace,
    problem: &'a P,
}

impl<'a, P: ValueCost + ?Sized> SpaceOracle<'a, P> {
    pub fn new(space: &'a MixedRadixSpace, problem: &'a P) -> Self {
        SpaceOracle { space, problem }
    }

    pub fn space(&self) -> &MixedRadixSpace {
        self.space
    }
}

impl<P: ValueCost + ?Sized> CostOracle for SpaceOracle<'_, P> {
    fn cost(&self, index: u64) -> Cost {
        match self.space.decode(index) {
            Ok(values) => self.problem.cost_of(&values),
            Err(_) => Cost::Infeasible,
        }
    }

    fn parameters(&self, index: u64) -> Vec<f64> {
        self.space.decode(index).unwrap_or_default()
    }
}

/// Oracle backed by a precomputed cost for every index of a space.
pub struct TabulatedOracle<'a> {
    costs: Vec<Cost>,
    space: &'a MixedRadixSpace,
}

impl<'a> TabulatedOracle<'a> {
    /// Evaluates `oracle` once on every index of `space`, in parallel.
    pub fn build<O: CostOracle + ?Sized>(space: &'a MixedRadixSpace, oracle: &O) -> Self {
        use rayon::prelude::*;
        let costs = (0..space.cardinality())
            .into_par_iter()
            .map(|i| oracle.cost(i))
            .collect();
        TabulatedOracle { costs, space }
    }

    pub fn costs(&self) -> &[Cost] {
        &self.costs
    }
}

impl CostOracle for TabulatedOracle<'_> {
    fn cost(&self, index: u64) -> Cost {
        self.costs
            .get(index as usize)
            .copied()
            .unwrap_or(Cost::Infeasible)
    }

    fn parameters(&self, index: u64) -> Vec<f64> {
        self.space.decode(index).unwrap_or_default()
    }
}

/// Wraps an oracle and counts invocations.
pub struct CountingOracle<O> {
    inner: O,
    calls: AtomicU64,
}

impl<O: CostOracle> CountingOracle<O> {
    pub fn new(inner: O) -> Self {
        CountingOracle {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(AtomicOrdering::Relaxed)
    }
}

impl<O: CostOracle> CostOracle for CountingOracle<O> {
    fn cost(&self, index: u64) -> Cost {
        self.calls.fetch_add(1, AtomicOrdering::Relaxed);
        self.inner.cost(index)
    }

    fn parameters(&self, index: u64) -> Vec<f64> {
        self.inner.parameters(index)
    }
}

/// Oracle over an explicit cost list; handy for tests and toy problems.
impl CostOracle for [Cost] {
    fn cost(&self, index: u64) -> Cost {
        self.get(index as usize).copied().unwrap_or(Cost::Infeasible)
    }
}

impl CostOracle for Vec<Cost> {
    fn cost(&self, index: u64) -> Cost {
        self.as_slice().cost(index)
    }
}
