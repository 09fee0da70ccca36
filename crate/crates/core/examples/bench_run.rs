//! Seeded trials through the bench layer, as the command-line tool runs
//! them, plus a probe and a sampled path.

use trajsearch::bench::{self, emit_path, probe, write_path, write_records, Format, Method, ProblemKind, RunConfig, StateSelector};

fn main() -> trajsearch::Result<()> {
    let cfg = RunConfig {
        problem: ProblemKind::Moon,
        method: Method::QExhaustive,
        trials: 4,
        seed: 5,
        no_timing: true,
        ..RunConfig::default()
    };
    println!("{}", cfg.to_json()?.lines().take(4).collect::<Vec<_>>().join("\n"));

    let (rows, best) = bench::run(&cfg)?;
    write_records(&rows, Format::Csv, false, std::io::stdout())?;

    let report = probe(&cfg, &StateSelector::Values(best.parameters.clone()))?;
    println!("probe: cost {:?}, final mass {:?}", report.cost, report.objective);

    let path = emit_path(&cfg, &best.parameters, 5)?;
    write_path(&path, Format::Csv, std::io::stdout())?;
    Ok(())
}
