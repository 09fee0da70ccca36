//! The concrete variational problems. Each one owns its search space and
//! evaluates decoded value tuples through [`ValueCost`].

pub mod brachistochrone;
pub mod curves;
pub mod isoperimetric;
pub mod moon;

pub use brachistochrone::{
    example_f_space, path_rmse, BrachCoeffConfig, BrachConfig, BrachPhysics, Brachistochrone,
    CoefficientBrachistochrone, EnergyConvention, TravelTime,
};
pub use curves::{Cycloid, Line, Semicircle};
pub use isoperimetric::{IsoConfig, Isoperimetric, NormalizedArea};
pub use moon::{MoonConfig, MoonLanding, MoonSolution, MoonState};

use crate::oracle::{Infeasibility, ValueCost};
use crate::space::MixedRadixSpace;

/// A problem with a search space. Costs are minimized; `objective` maps a
/// cost back to the quantity reported to users.
pub trait Problem: ValueCost {
    fn name(&self) -> &str;

    fn space(&self) -> &MixedRadixSpace;

    /// Cost of a decoded tuple, or the reason it has none.
    fn evaluate(&self, values: &[f64]) -> Result<f64, Infeasibility>;

    fn objective(&self, cost: f64) -> f64 {
        cost
    }

    /// Analytic optimum of the continuous problem, in objective units.
    fn reference_optimum(&self) -> Option<f64>;

    /// Percentage distance of an objective value from the analytic optimum.
    fn error_pct(&self, objective: f64) -> Option<f64> {
        self.reference_optimum()
            .map(|r| 100.0 * (objective - r).abs() / r.abs())
    }
}
