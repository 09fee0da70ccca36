//! Pure random search on the coarse brachistochrone grid, then the hybrid
//! search that rescans a finer grid around the random incumbent.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trajsearch::classical::{hybrid_min, random_min, rank_success_probability, Refinement};
use trajsearch::problems::{example_f_space, BrachConfig, Brachistochrone, Problem};
use trajsearch::{RefinementSpec, SpaceOracle};

fn main() -> trajsearch::Result<()> {
    let problem = Brachistochrone::new(BrachConfig::default())?;
    let space = problem.space();
    let n = space.cardinality();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let random = random_min(&SpaceOracle::new(space, &problem), space, 5000, &mut rng)?;
    println!(
        "random: best {} at {:?} after {} draws",
        random.best_cost, random.parameters, random.classical_evals
    );
    for (evals, cost) in &random.trace {
        println!("  improved to {cost:.6} after {evals}");
    }
    // Chance that 5000 draws land in the best 0.1% of the grid.
    let top = n / 1000;
    println!("P(rank <= {top}) = {:.4}", rank_success_probability(top, 5000, n)?);

    let fixed = Refinement::Explicit(example_f_space());
    let hybrid = hybrid_min(&problem, space, 5000, &fixed, &mut rng)?;
    report("hybrid, fixed refined grid", &problem, &hybrid);

    let around = Refinement::Around(RefinementSpec::uniform(4, 0.1, 0.01));
    let hybrid = hybrid_min(&problem, space, 5000, &around, &mut rng)?;
    report("hybrid, +/-0.1 around the incumbent", &problem, &hybrid);
    Ok(())
}

fn report(label: &str, problem: &Brachistochrone, o: &trajsearch::classical::SearchOutcome) {
    let t = o.best_cost.value().unwrap();
    println!("{label}: {t:.8} s at {:?}, error {:.3}%", o.parameters, problem.error_pct(t).unwrap());
    for p in &o.phases {
        println!("  {:<22} {:>6} states, {:>6} feasible", p.label, p.domain_size, p.feasible_evals());
    }
}
