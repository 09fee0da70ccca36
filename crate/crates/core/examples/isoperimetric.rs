//! Largest area under a curve of fixed length, in polar form.

use trajsearch::classical::exhaustive_min;
use trajsearch::problems::{IsoConfig, Isoperimetric, Problem, Semicircle};
use trajsearch::SpaceOracle;

fn main() -> trajsearch::Result<()> {
    let exact = Isoperimetric::new(IsoConfig::example_g())?;
    let semi = exact.area_of(&Semicircle { diameter: 2.0 / 3.0 }).unwrap();
    println!("semicircle area {:.12}, pi/18 = {:.12}", semi.area, exact.analytic_optimum());

    // A coarse version of the three-node grid: radii in steps of 1/25.
    let problem = Isoperimetric::new(IsoConfig {
        levels: 25,
        ..IsoConfig::example_g()
    })?;
    let space = problem.space();
    let outcome = exhaustive_min(&SpaceOracle::new(space, &problem), space)?;
    let area = problem.objective(outcome.best_cost.value().unwrap());
    println!(
        "N = {}: best radii {:?}, area {area:.9}, error {:.3}%",
        space.cardinality(),
        outcome.parameters,
        problem.error_pct(area).unwrap()
    );
    let detail = problem.area_of_radii(&outcome.parameters).unwrap();
    println!("raw length {:.6}, scaled by {:.6}", detail.raw_length, detail.scale);
    Ok(())
}
