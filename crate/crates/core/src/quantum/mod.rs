//! Simulated quantum search: Grover rotation geometry, a statevector
//! validator, and Dürr–Høyer minimum finding with separate ledgers for
//! Grover rotations, classical oracle calls and simulator bookkeeping.

mod grover;
mod minimum;
mod statevector;

pub use grover::{grover_success_probability, optimal_rotations, GroverModel};
pub use minimum::{
    durr_hoyer_min, quantum_exhaustive_min, quantum_hybrid_min, quantum_random_min, rotation_budget,
    sample_grover, theoretical_cost, CostTable, DurrHoyerConfig, Ledger, QuantumCostReport, DEFAULT_EPSILON,
    DEFAULT_LAMBDA,
};
pub use statevector::{statevector_grover, Statevector, MAX_QUBITS};
