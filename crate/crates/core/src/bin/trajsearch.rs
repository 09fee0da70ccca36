use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use trajsearch::bench::{
    self, emit_path, probe, selected_values, table, write_path, write_records, write_table, write_to, Format,
    Method, ProblemKind, RunConfig, StateSelector, TableName, TableOptions,
};
use trajsearch::Result;

#[derive(Parser)]
#[command(name = "trajsearch", version, about = "Discrete global search for trajectory problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded trials of one method on one problem.
    Run {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        trials: Option<u32>,
        /// Also write the best trajectory here ("-" for stdout).
        #[arg(long)]
        emit_path: Option<PathBuf>,
        #[arg(long)]
        path_samples: Option<usize>,
        /// Report wall_ms as 0.
        #[arg(long)]
        no_timing: bool,
        /// Print the effective configuration as JSON and exit.
        #[arg(long)]
        dump_config: bool,
    },
    /// Regenerate a method-comparison table.
    Table {
        name: TableName,
        /// Include the long-running configurations.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        n_random: Option<u64>,
        #[arg(long)]
        subset: Option<u64>,
        /// Write rows as CSV/JSON here ("-" for stdout instead of the text table).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        no_header: bool,
    },
    /// Sample the trajectory of one state.
    Path {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        state: State,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Evaluate the cost of one state.
    Probe {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        state: State,
    },
}

#[derive(Args)]
struct Common {
    /// JSON configuration file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    problem: Option<ProblemKind>,
    #[arg(long, value_enum)]
    method: Option<Method>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    n_random: Option<u64>,
    #[arg(long)]
    subset: Option<u64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Omit the timestamp comment line.
    #[arg(long)]
    no_header: bool,
}

#[derive(Args)]
struct State {
    /// State index in the problem's space.
    #[arg(long, conflicts_with = "values")]
    index: Option<u64>,
    /// Decoded values, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    values: Option<Vec<f64>>,
}

impl State {
    fn selector(&self) -> Option<StateSelector> {
        match (&self.index, &self.values) {
            (Some(i), _) => Some(StateSelector::Index(*i)),
            (None, Some(v)) => Some(StateSelector::Values(v.clone())),
            (None, None) => None,
        }
    }
}

impl Common {
    fn config(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::from_json_file(p)?,
            None => RunConfig::default(),
        };
        if let Some(v) = self.problem {
            cfg.problem = v;
        }
        if let Some(v) = self.method {
            cfg.method = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.n_random {
            cfg.n_random = v;
        }
        if self.subset.is_some() {
            cfg.subset = self.subset;
        }
        if let Some(v) = self.epsilon {
            cfg.epsilon = v;
        }
        if let Some(v) = self.lambda {
            cfg.lambda = v;
        }
        if self.out.is_some() {
            cfg.out = self.out.clone();
        }
        if let Some(v) = self.format {
            cfg.format = v;
        }
        cfg.no_header |= self.no_header;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run {
            common,
            trials,
            emit_path: path_out,
            path_samples,
            no_timing,
            dump_config,
        } => {
            let mut cfg = common.config()?;
            if let Some(t) = trials {
                cfg.trials = t;
            }
            if path_out.is_some() {
                cfg.emit_path = path_out;
            }
            if let Some(s) = path_samples {
                cfg.path_samples = s;
            }
            cfg.no_timing |= no_timing;
            cfg.validate()?;
            if dump_config {
                println!("{}", cfg.to_json()?);
                return Ok(());
            }
            let (rows, best) = bench::run(&cfg)?;
            write_to(cfg.out.as_deref(), |w| write_records(&rows, cfg.format, !cfg.no_header, w))?;
            if let Some(p) = &cfg.emit_path {
                // The hybrid methods may report a state of the refined grid.
                let path = emit_path(&cfg, &best.parameters, cfg.path_samples)?;
                write_to(Some(p), |w| write_path(&path, cfg.format, w))?;
            }
            Ok(())
        }
        Command::Table {
            name,
            full,
            seed,
            epsilon,
            n_random,
            subset,
            out,
            format,
            no_header,
        } => {
            let defaults = TableOptions::default();
            let opts = TableOptions {
                full,
                seed,
                epsilon: epsilon.unwrap_or(defaults.epsilon),
                n_random: n_random.unwrap_or(defaults.n_random),
                subset: subset.unwrap_or(defaults.subset),
                ..defaults
            };
            let t = table(name, &opts)?;
            let to_stdout = out.as_deref().is_some_and(|p| p == std::path::Path::new("-"));
            if !to_stdout {
                print!("{}", t.render());
            }
            if let Some(p) = out {
                write_to(Some(&p), |w| write_table(&t, format, !no_header, w))?;
            }
            Ok(())
        }
        Command::Path { common, state, samples } => {
            let cfg = common.config()?;
            let values = match state.selector() {
                Some(sel) => selected_values(&cfg, &sel)?,
                None => bench::run(&cfg)?.1.parameters,
            };
            let path = emit_path(&cfg, &values, samples)?;
            write_to(cfg.out.as_deref(), |w| write_path(&path, cfg.format, w))
        }
        Command::Probe { common, state } => {
            let cfg = common.config()?;
            let sel = state.selector().ok_or_else(|| {
                trajsearch::Error::Config("probe needs --index or --values".into())
            })?;
            let report = probe(&cfg, &sel)?;
            write_to(cfg.out.as_deref(), |w| {
                serde_json::to_writer_pretty(&mut *w, &report)?;
                writeln!(w).map_err(|e| trajsearch::Error::Io {
                    path: "<output>".into(),
                    source: e,
                })
            })
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
