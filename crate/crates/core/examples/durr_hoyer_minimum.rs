//! Quantum minimum finding on a table of random costs, with the rotation
//! ledger.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trajsearch::quantum::{durr_hoyer_min, rotation_budget, theoretical_cost, CostTable, DurrHoyerConfig};
use trajsearch::{Cost, MixedRadixSpace};

fn main() -> trajsearch::Result<()> {
    let n = 4096u64;
    let space = MixedRadixSpace::equidistant(&[(0.0, (n - 1) as f64, n as usize)])?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let costs: Vec<Cost> = (0..n).map(|_| Cost::Finite(rng.gen())).collect();
    let table = CostTable::build(&costs, &space);
    let truth = table.minimum().unwrap();
    let cfg = DurrHoyerConfig::default();

    let trials = 100;
    let (mut hits, mut rotations, mut calls) = (0, 0, 0);
    for _ in 0..trials {
        let o = durr_hoyer_min(&costs, &space, &table, &cfg, &mut rng)?;
        hits += u32::from(o.best_cost == truth);
        rotations += o.grover_rotations;
        calls += o.classical_evals;
    }
    println!("N = {n}: minimum found in {hits}/{trials} runs");
    println!(
        "mean rotations {:.0}, mean oracle calls {:.1}, budget {:.0}",
        rotations as f64 / trials as f64,
        calls as f64 / trials as f64,
        rotation_budget(n)
    );
    println!("tabulated cost sqrt(N)*eps = {}", theoretical_cost(n, cfg.epsilon));
    Ok(())
}
