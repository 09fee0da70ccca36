//! Seeded benchmark runs, comparison tables, path export and single-state
//! probes. The `trajsearch` binary is a thin wrapper over this module.

mod path;
mod table;

pub use path::{emit_path, probe, selected_values, write_path, PathRow, ProbeReport, StateSelector};
pub use table::{table, write_table, ComparisonTable, TableName, TableOptions, TableRow};

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::{exhaustive_min, hybrid_min, random_min, Refinement, SearchOutcome};
use crate::error::{Error, Result};
use crate::oracle::SpaceOracle;
use crate::problems::{
    example_f_space, BrachCoeffConfig, BrachConfig, Brachistochrone, CoefficientBrachistochrone, IsoConfig,
    Isoperimetric, MoonConfig, MoonLanding, Problem,
};
use crate::quantum::{
    durr_hoyer_min, quantum_hybrid_min, quantum_random_min, CostTable, DurrHoyerConfig, DEFAULT_EPSILON,
    DEFAULT_LAMBDA,
};
use crate::space::{MixedRadixSpace, RefinementSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    BrachPhysical,
    BrachCoeff,
    Isoperimetric,
    Moon,
}

impl ProblemKind {
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::BrachPhysical => "brach-physical",
            ProblemKind::BrachCoeff => "brach-coeff",
            ProblemKind::Isoperimetric => "isoperimetric",
            ProblemKind::Moon => "moon",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    Random,
    Hybrid,
    QExhaustive,
    QRandom,
    QHybrid,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::Random => "random",
            Method::Hybrid => "hybrid",
            Method::QExhaustive => "q-exhaustive",
            Method::QRandom => "q-random",
            Method::QHybrid => "q-hybrid",
        }
    }

    pub fn is_quantum(self) -> bool {
        matches!(self, Method::QExhaustive | Method::QRandom | Method::QHybrid)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Everything needed to reproduce a run. Unset fields take the defaults
/// below; the JSON form round-trips.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub problem: ProblemKind,
    pub method: Method,
    pub brach: BrachConfig,
    pub brach_coeff: BrachCoeffConfig,
    pub iso: IsoConfig,
    pub moon: MoonConfig,
    /// Draws for random and hybrid search. Default 5000.
    pub n_random: u64,
    /// Subset size for the quantum random phase. Default min(5000, N).
    pub subset: Option<u64>,
    /// Second-phase space for the hybrid methods. Default: the Example F
    /// grid for brach-physical, otherwise ±2 coarse steps at a quarter of
    /// the coarse step.
    pub refinement: Option<Refinement>,
    pub epsilon: f64,
    pub lambda: f64,
    pub seed: u64,
    pub trials: u32,
    pub out: Option<PathBuf>,
    pub emit_path: Option<PathBuf>,
    pub path_samples: usize,
    pub format: Format,
    /// Omit the timestamp comment line from CSV output.
    pub no_header: bool,
    /// Report wall_ms as 0 so outputs are byte-identical across runs.
    pub no_timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            problem: ProblemKind::BrachPhysical,
            method: Method::Exhaustive,
            brach: BrachConfig::default(),
            brach_coeff: BrachCoeffConfig::default(),
            iso: IsoConfig::default(),
            moon: MoonConfig::default(),
            n_random: 5000,
            subset: None,
            refinement: None,
            epsilon: DEFAULT_EPSILON,
            lambda: DEFAULT_LAMBDA,
            seed: 0,
            trials: 1,
            out: None,
            emit_path: None,
            path_samples: 200,
            format: Format::Csv,
            no_header: false,
            no_timing: false,
        }
    }
}

impl RunConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.n_random == 0 {
            return Err(Error::Config("n_random must be at least 1".into()));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::Config("epsilon must be positive".into()));
        }
        if !(self.lambda > 1.0) {
            return Err(Error::Config("lambda must exceed 1".into()));
        }
        Ok(())
    }

    pub fn build_problem(&self) -> Result<Box<dyn Problem>> {
        Ok(match self.problem {
            ProblemKind::BrachPhysical => Box::new(Brachistochrone::new(self.brach.clone())?),
            ProblemKind::BrachCoeff => Box::new(CoefficientBrachistochrone::new(self.brach_coeff.clone())?),
            ProblemKind::Isoperimetric => Box::new(Isoperimetric::new(self.iso.clone())?),
            ProblemKind::Moon => Box::new(MoonLanding::new(self.moon.clone())?),
        })
    }

    pub fn refinement_for(&self, space: &MixedRadixSpace) -> Refinement {
        if let Some(r) = &self.refinement {
            return r.clone();
        }
        if self.problem == ProblemKind::BrachPhysical && self.brach == BrachConfig::default() {
            return Refinement::Explicit(example_f_space());
        }
        default_refinement(space)
    }

    fn dh_config(&self) -> DurrHoyerConfig {
        DurrHoyerConfig {
            lambda: self.lambda,
            epsilon: self.epsilon,
        }
    }
}

/// ±2 coarse steps around the incumbent at a quarter of the coarse step.
pub fn default_refinement(space: &MixedRadixSpace) -> Refinement {
    let (mut w, mut s) = (Vec::new(), Vec::new());
    for d in space.dims() {
        let v = d.values();
        if v.len() > 1 {
            let step = (v[v.len() - 1] - v[0]) / (v.len() - 1) as f64;
            w.push(2.0 * step);
            s.push(step / 4.0);
        } else {
            w.push(0.0);
            s.push(1.0);
        }
    }
    Refinement::Around(RefinementSpec { half_width: w, step: s })
}

/// Per-trial seed: splitmix64 of seed + trial.
pub fn trial_seed(seed: u64, trial: u32) -> u64 {
    let mut z = seed.wrapping_add(u64::from(trial)).wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One line of benchmark output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub problem: String,
    pub method: String,
    pub trial: u32,
    pub seed: u64,
    /// Size of the coarse search space.
    pub n: u64,
    /// Classical evaluations, or the theoretical quantum cost for the
    /// quantum methods.
    pub cost_metric: u64,
    pub classical_evals: u64,
    pub infeasible_evals: u64,
    pub grover_rotations: u64,
    pub simulator_evals: u64,
    pub theoretical_cost: Option<u64>,
    pub best_cost: Option<f64>,
    /// Best cost in the problem's own units (area, final mass, ...).
    pub objective: Option<f64>,
    pub error_pct: Option<f64>,
    /// Decoded parameters of the best state, separated by ';'.
    pub parameters: String,
    pub wall_ms: f64,
}

fn run_method(
    problem: &dyn Problem,
    cfg: &RunConfig,
    table: Option<&CostTable>,
    rng: &mut ChaCha8Rng,
) -> Result<SearchOutcome> {
    let space = problem.space();
    let oracle = SpaceOracle::new(space, problem);
    let n = space.cardinality();
    let dh = cfg.dh_config();
    match cfg.method {
        Method::Exhaustive => exhaustive_min(&oracle, space),
        Method::Random => random_min(&oracle, space, cfg.n_random, rng),
        Method::Hybrid => hybrid_min(problem, space, cfg.n_random, &cfg.refinement_for(space), rng),
        Method::QExhaustive => {
            let owned;
            let table = match table {
                Some(t) => t,
                None => {
                    owned = CostTable::build(&oracle, space);
                    &owned
                }
            };
            durr_hoyer_min(&oracle, space, table, &dh, rng)
        }
        Method::QRandom => quantum_random_min(&oracle, space, cfg.subset.unwrap_or(n.min(5000)), &dh, rng),
        Method::QHybrid => quantum_hybrid_min(
            problem,
            space,
            cfg.subset.unwrap_or(n.min(5000)),
            &cfg.refinement_for(space),
            &dh,
            rng,
        ),
    }
}

pub fn row_from_outcome(
    problem: &dyn Problem,
    cfg: &RunConfig,
    trial: u32,
    seed: u64,
    outcome: &SearchOutcome,
    wall_ms: f64,
) -> ResultRow {
    let best = outcome.best_cost.value();
    let objective = best.map(|c| problem.objective(c));
    let theoretical = outcome.quantum.as_ref().map(|q| q.theoretical_cost);
    ResultRow {
        problem: cfg.problem.name().to_string(),
        method: cfg.method.name().to_string(),
        trial,
        seed,
        n: problem.space().cardinality(),
        cost_metric: theoretical.unwrap_or(outcome.classical_evals),
        classical_evals: outcome.classical_evals,
        infeasible_evals: outcome.infeasible_evals,
        grover_rotations: outcome.grover_rotations,
        simulator_evals: outcome.simulator_evals,
        theoretical_cost: theoretical,
        best_cost: best,
        objective,
        error_pct: objective.and_then(|o| problem.error_pct(o)),
        parameters: join(&outcome.parameters),
        wall_ms: if cfg.no_timing { 0.0 } else { wall_ms },
    }
}

pub(crate) fn join(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";")
}

/// Runs `cfg.trials` seeded trials in parallel; rows come back in trial
/// order. Returns the rows and the best outcome across trials.
pub fn run(cfg: &RunConfig) -> Result<(Vec<ResultRow>, SearchOutcome)> {
    cfg.validate()?;
    let problem = cfg.build_problem()?;
    let problem: &dyn Problem = problem.as_ref();
    // Every trial of a quantum exhaustive run simulates the same table.
    let table = (cfg.method == Method::QExhaustive && cfg.trials > 1)
        .then(|| CostTable::build(&SpaceOracle::new(problem.space(), problem), problem.space()));
    let results: Vec<Result<(ResultRow, SearchOutcome)>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = trial_seed(cfg.seed, trial);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let start = Instant::now();
            let mut outcome = run_method(problem, cfg, table.as_ref(), &mut rng)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            outcome.seed = Some(seed);
            Ok((row_from_outcome(problem, cfg, trial, seed, &outcome, ms), outcome))
        })
        .collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut best: Option<SearchOutcome> = None;
    for r in results {
        let (row, outcome) = r?;
        rows.push(row);
        if best.as_ref().is_none_or(|b| outcome.best_cost < b.best_cost) {
            best = Some(outcome);
        }
    }
    if let Some(b) = &best {
        if !b.best_cost.is_feasible() {
            return Err(Error::AllInfeasible {
                evaluated: b.classical_evals,
            });
        }
    }
    Ok((rows, best.expect("at least one trial")))
}

fn header_line() -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("# trajsearch {} generated at unix time {secs}\n", env!("CARGO_PKG_VERSION"))
}

/// Writes serializable rows as CSV (optionally preceded by a timestamp
/// comment) or as a JSON array.
pub fn write_records<T: Serialize, W: Write>(rows: &[T], format: Format, header: bool, mut out: W) -> Result<()> {
    match format {
        Format::Csv => {
            if header {
                out.write_all(header_line().as_bytes())
                    .map_err(|e| Error::io("<output>", e))?;
            }
            let mut w = csv::Writer::from_writer(out);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush().map_err(|e| Error::io("<output>", e))?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, rows)?;
            out.write_all(b"\n").map_err(|e| Error::io("<output>", e))?;
        }
    }
    Ok(())
}

/// Writes to `path`, or to stdout when `path` is `None` or "-".
pub fn write_to<F>(path: Option<&Path>, f: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match path {
        Some(p) if p != Path::new("-") => {
            let file = std::fs::File::create(p).map_err(|e| Error::io(p, e))?;
            let mut buf = std::io::BufWriter::new(file);
            f(&mut buf)?;
            buf.flush().map_err(|e| Error::io(p, e))
        }
        _ => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock)
        }
    }
}
