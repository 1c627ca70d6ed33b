//! Command-line driver: simulations, exact CDF tables, Tracy-Widom tables,
//! the identity suite and the edge-fluctuation experiments.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod svg;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{ConfigMap, ExperimentConfig};
pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "growthlab", version, about = "Random growth, determinantal ensembles and Tracy-Widom laws")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample lpp, png or hammersley values.
    Simulate(Settings),
    /// Exact CDF tables: meixner, bessel or toeplitz.
    Exact(Settings),
    /// Tracy-Widom F2 table by fredholm, painleve or both.
    TwTable(Settings),
    /// Run the identity and invariant suite.
    Verify(Settings),
    /// thm32 (lpp_edge), thm33 (poisson_edge), gue_edge or transversal.
    Experiment(Settings),
}

/// Flags shared by every subcommand; each may also come from `--config`.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct Settings {
    /// Flat key = value file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub samples: Option<String>,
    /// Output directory (default growthlab-out).
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long = "M")]
    pub rows: Option<String>,
    #[arg(long = "N")]
    pub cols: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub gamma: Option<String>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long = "n")]
    pub order: Option<String>,
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub xi_min: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub xi_max: Option<String>,
    #[arg(long)]
    pub step: Option<String>,
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub experiment: Option<String>,
    /// KS threshold for experiments.
    #[arg(long)]
    pub threshold: Option<String>,
    /// Discrepancy tolerance for tw-table with method both.
    #[arg(long)]
    pub tolerance: Option<String>,
    /// Comma-separated grid sizes for the transversal experiment.
    #[arg(long)]
    pub sizes: Option<String>,
    /// Worker threads; outputs do not depend on it.
    #[arg(long)]
    pub threads: Option<String>,
    /// Testing hook for verify: `kernel-sign` flips off-diagonal kernel signs.
    #[arg(long)]
    pub inject_fault: Option<String>,
}

impl Settings {
    /// Config file first, then flags.
    pub fn resolve(&self) -> CliResult<ExperimentConfig> {
        let mut map = match &self.config {
            Some(p) => ConfigMap::from_file(p)?,
            None => ConfigMap::default(),
        };
        let flags = [
            ("seed", &self.seed),
            ("samples", &self.samples),
            ("out", &self.out),
            ("M", &self.rows),
            ("N", &self.cols),
            ("q", &self.q),
            ("gamma", &self.gamma),
            ("alpha", &self.alpha),
            ("n", &self.order),
            ("k", &self.k),
            ("xi_min", &self.xi_min),
            ("xi_max", &self.xi_max),
            ("step", &self.step),
            ("method", &self.method),
            ("model", &self.model),
            ("experiment", &self.experiment),
            ("threshold", &self.threshold),
            ("tolerance", &self.tolerance),
            ("sizes", &self.sizes),
            ("threads", &self.threads),
            ("inject_fault", &self.inject_fault),
        ];
        let mut overrides = ConfigMap::default();
        for (key, value) in flags {
            if let Some(v) = value {
                overrides.set(key, v)?;
            }
        }
        map.merge(&overrides);
        Ok(ExperimentConfig::new(map))
    }
}

/// Result of a command that ran to completion: exit code 0, 1 (identity
/// failure) or 4 (statistical threshold missed), plus lines for stdout.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub lines: Vec<String>,
    pub files: Vec<PathBuf>,
}

impl Outcome {
    pub fn ok(lines: Vec<String>, files: Vec<PathBuf>) -> Self {
        Self { exit_code: 0, lines, files }
    }
}

/// Runs one parsed command, on a dedicated pool when `threads` is set.
pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let settings = match &cli.command {
        Command::Simulate(s) | Command::Exact(s) | Command::TwTable(s) | Command::Verify(s) | Command::Experiment(s) => s,
    };
    let cfg = settings.resolve()?;
    let dispatch = || match &cli.command {
        Command::Simulate(_) => commands::simulate(&cfg),
        Command::Exact(_) => commands::exact(&cfg),
        Command::TwTable(_) => commands::tw_table(&cfg),
        Command::Verify(_) => commands::verify(&cfg),
        Command::Experiment(_) => commands::experiment(&cfg),
    };
    match cfg.get::<usize>("threads")? {
        Some(0) => Err(CliError::Usage("threads must be positive".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {t} workers: {e}")))?
            .install(dispatch),
        None => dispatch(),
    }
}

/// Parses `args` (including the program name) and runs without printing.
pub fn run_args<I, T>(args: I) -> CliResult<Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    run(&cli)
}

/// Parses `args` (including the program name) and runs; returns the exit code
/// and writes messages to stdout/stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            for line in &outcome.lines {
                println!("{line}");
            }
            outcome.exit_code
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
