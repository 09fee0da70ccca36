//! Grover search on a simulated register, checked against the two-level
//! rotation picture.

use trajsearch::quantum::{optimal_rotations, statevector_grover, GroverModel, Statevector};

fn main() -> trajsearch::Result<()> {
    let qubits = 8;
    let n = 1u64 << qubits;
    let marked = [3usize, 77, 200];
    let model = GroverModel::new(n, marked.len() as u64)?;

    let mut sv = Statevector::zero(qubits)?;
    sv.hadamard_all();
    println!("{:>3} {:>14} {:>14}", "r", "statevector", "sin^2");
    for r in 0..=12 {
        if r > 0 {
            sv.grover_iteration(&marked);
        }
        println!("{r:>3} {:>14.10} {:>14.10}", sv.probability_of(&marked), model.success_probability(r));
    }

    let best = optimal_rotations(n, marked.len() as u64)?;
    let amps = statevector_grover(qubits, &marked, best)?;
    let hit: f64 = marked.iter().map(|&k| amps[k] * amps[k]).sum();
    println!("optimal r = {best}, success {hit:.6}");
    println!("N = 2^20, M = 1: r = {}", optimal_rotations(1 << 20, 1)?);
    Ok(())
}
