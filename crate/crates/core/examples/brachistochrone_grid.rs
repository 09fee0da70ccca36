//! Exhaustive search over node heights for the brachistochrone.
//!
//! cargo run --release --example brachistochrone_grid -- 40
//!
//! The argument is L, the number of height steps per node (default 10).
//! L = 40 is the 2 825 761-state grid and takes about a minute on one core.

use trajsearch::classical::exhaustive_min;
use trajsearch::problems::{path_rmse, BrachConfig, Brachistochrone, Cycloid, Problem};
use trajsearch::SpaceOracle;

fn main() -> trajsearch::Result<()> {
    let levels: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let problem = Brachistochrone::new(BrachConfig {
        levels,
        ..BrachConfig::default()
    })?;
    let space = problem.space();
    println!("zeta = {}, L = {levels}, N = {}", problem.zeta(), space.cardinality());

    let outcome = exhaustive_min(&SpaceOracle::new(space, &problem), space)?;
    let best = outcome.best_cost.value().expect("feasible state");
    println!("best interior heights {:?}", outcome.parameters);
    println!("time {best:.10} s, {} infeasible of {}", outcome.infeasible_evals, outcome.classical_evals);

    let optimum = problem.reference_optimum().unwrap();
    println!("cycloid {optimum:.10} s, error {:.3}%", problem.error_pct(best).unwrap());

    let path = problem.path(&outcome.parameters)?;
    let rmse = path_rmse(&path, &Cycloid::new(1.0, 2.0), (0.0, std::f64::consts::PI));
    println!("rms distance to the cycloid {rmse:.4}");
    println!("coefficients {:?}", path.coeffs());
    Ok(())
}
