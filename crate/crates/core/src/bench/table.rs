//! The two method-comparison suites.

use std::fmt::Write as _;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{trial_seed, write_records, Format};
use crate::classical::{exhaustive_min, hybrid_min, random_min, Refinement, SearchOutcome};
use crate::error::Result;
use crate::oracle::{SpaceOracle, TabulatedOracle};
use crate::problems::{
    example_f_space, BrachCoeffConfig, BrachConfig, Brachistochrone, CoefficientBrachistochrone, IsoConfig,
    Isoperimetric, Problem,
};
use crate::quantum::{
    durr_hoyer_min, quantum_hybrid_min, quantum_random_min, theoretical_cost, CostTable, DurrHoyerConfig,
    DEFAULT_EPSILON, DEFAULT_LAMBDA,
};
use crate::space::MixedRadixSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TableName {
    BrachComparison,
    IsoComparison,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TableOptions {
    /// Also run the long configurations: the 85 562 001-state coefficient
    /// grid and the five- and seven-node isoperimetric grids.
    pub full: bool,
    pub seed: u64,
    pub epsilon: f64,
    pub lambda: f64,
    pub n_random: u64,
    pub subset: u64,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            full: false,
            seed: 0,
            epsilon: DEFAULT_EPSILON,
            lambda: DEFAULT_LAMBDA,
            n_random: 5000,
            subset: 5000,
        }
    }
}

/// One method of a comparison table. `reference_*` columns hold the
/// reference protocol; `cost`, `n` and `best` are what this run measured.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub method: String,
    pub description: String,
    /// Cost as usually written, e.g. "2825761" or "101^2 eps".
    pub reference_cost: String,
    pub reference_cost_value: u64,
    /// Classical evaluations, or the theoretical quantum cost, as run.
    pub cost: Option<u64>,
    pub n: Option<u64>,
    pub grover_rotations: Option<u64>,
    pub best: Option<f64>,
    pub reference_best: f64,
    pub error_pct: Option<f64>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub name: TableName,
    pub rows: Vec<TableRow>,
}

impl ComparisonTable {
    /// Fixed-width text rendering.
    pub fn render(&self) -> String {
        let fmt_opt = |v: Option<f64>, p: usize| v.map(|v| format!("{v:.p$}")).unwrap_or_else(|| "-".into());
        let head = ["", "method", "ref cost", "cost", "N", "best", "ref best", "err %", "note"];
        let body: Vec<[String; 9]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.method.clone(),
                    r.description.clone(),
                    r.reference_cost.clone(),
                    r.cost.map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
                    r.n.map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
                    fmt_opt(r.best, 10),
                    r.reference_best.to_string(),
                    fmt_opt(r.error_pct, 3),
                    r.note.clone(),
                ]
            })
            .collect();
        let mut width = head.map(str::len);
        for row in &body {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let mut line = |cells: &[&str]| {
            let mut s = String::new();
            for (i, (c, w)) in cells.iter().zip(width).enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(c);
                } else {
                    let _ = write!(s, "{c:<w$}  ");
                }
            }
            out.push_str(s.trim_end());
            out.push('\n');
        };
        line(&head);
        for row in &body {
            line(&row.iter().map(String::as_str).collect::<Vec<_>>());
        }
        out
    }

    pub fn row(&self, method: &str, description_prefix: &str) -> Option<&TableRow> {
        self.rows
            .iter()
            .find(|r| r.method == method && r.description.starts_with(description_prefix))
    }
}

pub fn write_table<W: Write>(table: &ComparisonTable, format: Format, header: bool, out: W) -> Result<()> {
    write_records(&table.rows, format, header, out)
}

pub fn table(name: TableName, opts: &TableOptions) -> Result<ComparisonTable> {
    let rows = match name {
        TableName::BrachComparison => brach_comparison(opts)?,
        TableName::IsoComparison => iso_comparison(opts)?,
    };
    Ok(ComparisonTable { name, rows })
}

struct Measured {
    cost: u64,
    n: u64,
    outcome: SearchOutcome,
}

fn row(
    method: &str,
    description: &str,
    reference: (String, u64, f64),
    measured: Option<Measured>,
    problem: &dyn Problem,
    note: String,
) -> TableRow {
    let best = measured
        .as_ref()
        .and_then(|m| m.outcome.best_cost.value())
        .map(|c| problem.objective(c));
    TableRow {
        method: method.to_string(),
        description: description.to_string(),
        reference_cost: reference.0,
        reference_cost_value: reference.1,
        cost: measured.as_ref().map(|m| m.cost),
        n: measured.as_ref().map(|m| m.n),
        grover_rotations: measured
            .as_ref()
            .filter(|m| m.outcome.quantum.is_some())
            .map(|m| m.outcome.grover_rotations),
        best,
        reference_best: reference.2,
        error_pct: best.and_then(|b| problem.error_pct(b)),
        note,
    }
}

fn refined_feasible(outcome: &SearchOutcome) -> u64 {
    outcome
        .phases
        .iter()
        .filter(|p| p.label.starts_with("refined"))
        .map(|p| p.feasible_evals())
        .sum()
}

fn brach_comparison(opts: &TableOptions) -> Result<Vec<TableRow>> {
    let dh = DurrHoyerConfig {
        lambda: opts.lambda,
        epsilon: opts.epsilon,
    };
    let eps = opts.epsilon;
    let rng = |k: u32| ChaCha8Rng::seed_from_u64(trial_seed(opts.seed, k));

    let problem = Brachistochrone::new(BrachConfig::default())?;
    let space = problem.space();
    let n = space.cardinality();
    // Every state of the coarse grid is evaluated once and shared by the
    // methods that scan it.
    let tab = TabulatedOracle::build(space, &SpaceOracle::new(space, &problem));
    let fine_space = example_f_space();
    let refinement = Refinement::Explicit(fine_space.clone());
    let fine_n = fine_space.cardinality();
    const REFERENCE_REFINED: u64 = 3249;

    let mut rows = Vec::new();

    let ex = exhaustive_min(&tab, space)?;
    rows.push(row(
        "I",
        "classical exhaustive, physical space",
        (n.to_string(), n, 1.0095),
        Some(Measured {
            cost: ex.classical_evals,
            n,
            outcome: ex,
        }),
        &problem,
        String::new(),
    ));

    let coeff = CoefficientBrachistochrone::new(BrachCoeffConfig::quintic())?;
    let d_n = coeff.space().cardinality();
    let d = if opts.full {
        let o = exhaustive_min(&SpaceOracle::new(coeff.space(), &coeff), coeff.space())?;
        Some(Measured {
            cost: o.classical_evals,
            n: d_n,
            outcome: o,
        })
    } else {
        None
    };
    let d_note = if d.is_none() { "not run; pass --full" } else { "" };
    rows.push(row(
        "I",
        "classical exhaustive, coefficient space",
        (d_n.to_string(), d_n, 1.0107),
        d,
        &coeff,
        d_note.into(),
    ));

    let rnd = random_min(&tab, space, opts.n_random, &mut rng(2))?;
    rows.push(row(
        "II",
        "classical random",
        ("5000".into(), 5000, 1.0099),
        Some(Measured {
            cost: rnd.classical_evals,
            n,
            outcome: rnd,
        }),
        &problem,
        String::new(),
    ));

    let hyb = hybrid_min(&problem, space, opts.n_random, &refinement, &mut rng(3))?;
    let feasible = refined_feasible(&hyb);
    let reference = 5000 + REFERENCE_REFINED;
    rows.push(row(
        "III",
        "classical hybrid",
        (reference.to_string(), reference, 1.0085),
        Some(Measured {
            cost: hyb.phases[0].classical_evals + feasible,
            n,
            outcome: hyb,
        }),
        &problem,
        format!("reference counts {REFERENCE_REFINED} refined paths; the refined grid has {fine_n} states, {feasible} feasible"),
    ));

    let table = CostTable::build(&tab, space);
    let qex = durr_hoyer_min(&tab, space, &table, &dh, &mut rng(4))?;
    let c = theoretical_cost(n, eps);
    rows.push(quantum_row("IV", "quantum exhaustive", format!("sqrt({n}) eps"), c, 1.0095, qex, n, &problem, String::new()));

    let s = opts.subset.min(n);
    let qr = quantum_random_min(&tab, space, s, &dh, &mut rng(5))?;
    let c = theoretical_cost(5000, eps);
    rows.push(quantum_row("V", "quantum random", "sqrt(5000) eps".into(), c, 1.0099, qr, n, &problem, String::new()));

    let qh = quantum_hybrid_min(&problem, space, s, &refinement, &dh, &mut rng(6))?;
    let c = theoretical_cost(5000, eps) + theoretical_cost(REFERENCE_REFINED, eps);
    let note = format!("reference uses {REFERENCE_REFINED} refined states; the refined grid has {fine_n}");
    rows.push(quantum_row(
        "VI",
        "quantum hybrid",
        format!("(sqrt(5000) + sqrt({REFERENCE_REFINED})) eps"),
        c,
        1.0085,
        qh,
        n,
        &problem,
        note,
    ));
    Ok(rows)
}

#[allow(clippy::too_many_arguments)]
fn quantum_row(
    method: &str,
    description: &str,
    symbolic: String,
    reference: u64,
    reference_best: f64,
    outcome: SearchOutcome,
    n: u64,
    problem: &dyn Problem,
    note: String,
) -> TableRow {
    let cost = outcome.quantum.as_ref().map_or(0, |q| q.theoretical_cost);
    row(
        method,
        description,
        (format!("{symbolic} = {reference}"), reference, reference_best),
        Some(Measured { cost, n, outcome }),
        problem,
        note,
    )
}

/// Largest space whose costs are held in memory for the quantum simulation.
const TABULATE_LIMIT: u64 = 1 << 26;

fn iso_comparison(opts: &TableOptions) -> Result<Vec<TableRow>> {
    let dh = DurrHoyerConfig {
        lambda: opts.lambda,
        epsilon: opts.epsilon,
    };
    let examples = [
        ("G", IsoConfig::example_g(), 4u32, 0.174442279371647, true),
        ("H", IsoConfig::example_h(), 6, 0.174481616034558, opts.full),
        ("I", IsoConfig::example_i(), 8, 0.174531915079274, opts.full),
    ];
    let mut classical = Vec::new();
    let mut quantum = Vec::new();
    for (k, (label, cfg, power, reference_best, run)) in examples.into_iter().enumerate() {
        let problem = Isoperimetric::new(cfg)?;
        let space: &MixedRadixSpace = problem.space();
        let n = space.cardinality();
        let listed = 101u64.pow(power);
        let note = format!("{} free nodes give {n} states", space.rank());
        let (ex, qex) = if !run {
            (None, None)
        } else if n <= TABULATE_LIMIT {
            let tab = TabulatedOracle::build(space, &SpaceOracle::new(space, &problem));
            let ex = exhaustive_min(&tab, space)?;
            let table = CostTable::build(&tab, space);
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(opts.seed, k as u32));
            let qex = durr_hoyer_min(&tab, space, &table, &dh, &mut rng)?;
            (Some(ex), Some(qex))
        } else {
            // Too large to hold every cost, so there is nothing to simulate
            // the quantum search on.
            (Some(exhaustive_min(&SpaceOracle::new(space, &problem), space)?), None)
        };
        let skipped = if run { String::new() } else { "; not run, pass --full".into() };
        classical.push(row(
            "I",
            &format!("classical exhaustive, example {label}"),
            (format!("101^{power}"), listed, reference_best),
            ex.map(|o| Measured {
                cost: o.classical_evals,
                n,
                outcome: o,
            }),
            &problem,
            format!("{note}{skipped}"),
        ));
        let q_reference = theoretical_cost(listed, opts.epsilon);
        let simulated = qex.is_some();
        let mut q = row(
            "IV",
            &format!("quantum exhaustive, example {label}"),
            (format!("101^{} eps = {q_reference}", power / 2), q_reference, reference_best),
            qex.map(|o| Measured {
                cost: o.quantum.as_ref().map_or(0, |q| q.theoretical_cost),
                n,
                outcome: o,
            }),
            &problem,
            format!("{note}{}", if simulated { "" } else { "; not simulated" }),
        );
        q.cost = Some(theoretical_cost(n, opts.epsilon));
        q.n = Some(n);
        quantum.push(q);
    }
    classical.extend(quantum);
    Ok(classical)
}

