//! Searching polynomial coefficients instead of node heights.
//!
//! The free coefficients are rescaled so that Chebyshev bounds apply; with
//! zeta = 4 there are two of them on a 40 x 40 grid.

use trajsearch::classical::exhaustive_min;
use trajsearch::numerics::{coefficient_bounds, ChebyshevTable};
use trajsearch::problems::{BrachCoeffConfig, CoefficientBrachistochrone, Problem};
use trajsearch::SpaceOracle;

fn main() -> trajsearch::Result<()> {
    let table = ChebyshevTable::new(5);
    for zeta in [4, 6] {
        println!("zeta = {zeta}: bounds B1.. = {:?}", coefficient_bounds(&table, zeta)?);
    }

    let problem = CoefficientBrachistochrone::new(BrachCoeffConfig::cubic())?;
    let space = problem.space();
    let outcome = exhaustive_min(&SpaceOracle::new(space, &problem), space)?;
    let best = outcome.best_cost.value().expect("feasible state");
    println!(
        "N = {}, {} infeasible, best b = {:?}",
        space.cardinality(),
        outcome.infeasible_evals,
        outcome.parameters
    );
    println!("time {best:.8} s, error {:.2}%", problem.error_pct(best).unwrap());
    println!("path coefficients {:?}", problem.path(&outcome.parameters)?.coeffs());
    Ok(())
}
