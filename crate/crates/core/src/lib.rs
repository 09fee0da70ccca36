//! Global trajectory optimization over coarse-grained discrete search spaces.
//!
//! A continuous variational problem is turned into a finite search problem by
//! restricting both the independent and the dependent variables to small
//! level sets. Each point of the resulting mixed-radix space decodes to a
//! trajectory with a cost (or an infeasibility verdict), and the global
//! minimum is found with one of six interchangeable search methods:
//!
//! | method        | module                 |
//! |---------------|------------------------|
//! | exhaustive    | [`classical`]          |
//! | pure random   | [`classical`]          |
//! | hybrid        | [`classical`]          |
//! | q-exhaustive  | [`quantum`]            |
//! | q-random      | [`quantum`]            |
//! | q-hybrid      | [`quantum`]            |
//!
//! The quantum methods are classical simulations of Grover amplitude
//! amplification and Dürr–Høyer minimum finding with separate ledgers for
//! Grover rotations, classical oracle calls, and simulator bookkeeping.
//!
//! The concrete problems live in [`problems`]: the brachistochrone (physical
//! and coefficient-space parameterizations), the isoperimetric problem and a
//! vertical lunar soft landing. [`bench`] drives seeded runs and regenerates
//! the method-comparison tables.
//!
//! See the crate's `examples/` directory for one runnable program per
//! capability.

pub mod bench;
pub mod classical;
pub mod error;
pub mod numerics;
pub mod oracle;
pub mod problems;
pub mod quantum;
pub mod space;

pub use error::{Error, Result};
pub use oracle::{Cost, CostOracle, Infeasibility, SpaceOracle, ValueCost};
pub use space::{LevelSet, MixedRadixSpace, RefinementSpec, SearchDomain, SubsetSpace};
