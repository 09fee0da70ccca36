//! Vertical soft landing with piecewise-constant mass flow.

use trajsearch::classical::exhaustive_min;
use trajsearch::problems::{MoonConfig, MoonLanding, Problem};
use trajsearch::SpaceOracle;

fn main() -> trajsearch::Result<()> {
    let problem = MoonLanding::new(MoonConfig::default())?;
    let space = problem.space();
    let outcome = exhaustive_min(&SpaceOracle::new(space, &problem), space)?;
    println!(
        "{} control triples, {} without a soft landing",
        space.cardinality(),
        outcome.infeasible_evals
    );
    let [a2, a3, a4] = outcome.parameters[..] else {
        unreachable!()
    };
    let sol = problem.solve_soft_landing(a2, a3, a4).expect("best state lands");
    println!("controls {:?}", sol.controls);
    println!("tau = {:.3} s, final mass {:.3} kg", sol.tau, sol.m_final);

    println!("{:>8} {:>12} {:>10} {:>10}", "t", "h", "v", "m");
    for (t, s) in sol.trajectory(11)? {
        println!("{t:>8.2} {:>12.3} {:>10.4} {:>10.3}", s.h, s.v, s.m);
    }
    Ok(())
}
