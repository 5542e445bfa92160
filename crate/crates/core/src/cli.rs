//! Command-line front end.
//!
//! Exit codes: `0` success, `1` configuration or usage error, `2` the
//! quadrature and Monte Carlo engines disagree (`validate`), `3` a result
//! was non-finite without being flagged.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{load_config, parse_config, ConfigError, ExperimentConfig};
use crate::experiment::{run_eval, run_region, run_sweep, run_validate, RowStatus};
use crate::output::{write_region, write_rows, write_validation, OutputError, OutputFormat};
use crate::secrecy::Engine;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_DISCORDANT: i32 = 2;
pub const EXIT_NON_FINITE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "swipt-secrecy", version, about = "Ergodic secrecy capacity of power-splitting SWIPT links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the configured scenario with one or more engines.
    Eval(CommonArgs),
    /// Run the [sweep] block of the configuration.
    Sweep(CommonArgs),
    /// Trace the secrecy-energy tradeoff over the power-splitting ratio.
    Region(CommonArgs),
    /// Compare all engines on the configured scenario.
    Validate(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// TOML experiment file; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Engine(s), comma separated: quadrature, montecarlo, closed_form.
    #[arg(long, value_delimiter = ',')]
    engine: Vec<Engine>,
    #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
    output: String,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Monte Carlo trial count (overrides the configuration).
    #[arg(long)]
    trials: Option<usize>,
    /// Monte Carlo seed (overrides the configuration).
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug)]
enum Failure {
    Config(String),
    Output(OutputError),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<OutputError> for Failure {
    fn from(e: OutputError) -> Self {
        Failure::Output(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Output(e.into())
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            EXIT_CONFIG
        }
        Err(Failure::Output(e)) => {
            eprintln!("error: cannot write output: {e}");
            EXIT_CONFIG
        }
    }
}

fn load(args: &CommonArgs) -> Result<ExperimentConfig, Failure> {
    let mut cfg = match &args.config {
        Some(path) => load_config(path)?,
        None => parse_config("")?,
    };
    if let Some(trials) = args.trials {
        if trials < 1000 {
            return Err(Failure::Config(format!("--trials: need at least 1000, got {trials}")));
        }
        cfg.settings.trials = trials;
    }
    if let Some(seed) = args.seed {
        cfg.settings.seed = seed;
    }
    Ok(cfg)
}

fn sink(args: &CommonArgs) -> Result<Box<dyn Write>, Failure> {
    Ok(match &args.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            Failure::Config(format!("--out {}: {e}", path.display()))
        })?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn execute(command: Command) -> Result<i32, Failure> {
    let (args, kind) = match &command {
        Command::Eval(a) => (a, "eval"),
        Command::Sweep(a) => (a, "sweep"),
        Command::Region(a) => (a, "region"),
        Command::Validate(a) => (a, "validate"),
    };
    let format: OutputFormat = args.output.parse().map_err(Failure::Config)?;
    let cfg = load(args)?;

    match kind {
        "eval" => {
            let engines = if args.engine.is_empty() { vec![Engine::Quadrature] } else { args.engine.clone() };
            let rows = run_eval(&cfg.scenario, &engines, &cfg.settings);
            let mut out = sink(args)?;
            write_rows(&rows, format, &mut out)?;
            out.flush()?;
            Ok(if rows.iter().any(|r| r.is_unflagged_non_finite()) { EXIT_NON_FINITE } else { EXIT_OK })
        }
        "sweep" => {
            let mut sweep = cfg.sweep_config()?;
            if !args.engine.is_empty() {
                sweep.engines = args.engine.clone();
            }
            let rows = run_sweep(&sweep)?;
            let mut out = sink(args)?;
            write_rows(&rows, format, &mut out)?;
            out.flush()?;
            Ok(if rows.iter().any(|r| r.is_unflagged_non_finite()) { EXIT_NON_FINITE } else { EXIT_OK })
        }
        "region" => {
            let mut region = cfg.region_config_or_default()?;
            match args.engine.as_slice() {
                [] => {}
                [engine] => region.engine = *engine,
                _ => return Err(Failure::Config("--engine: region takes a single engine".into())),
            }
            let points = run_region(&region)?;
            let mut out = sink(args)?;
            write_region(&points, format, &mut out)?;
            out.flush()?;
            let bad = points
                .iter()
                .any(|p| p.status == RowStatus::Ok && p.capacity_bits.is_none());
            Ok(if bad { EXIT_NON_FINITE } else { EXIT_OK })
        }
        _ => {
            let report = run_validate(&cfg.scenario, &cfg.settings);
            let mut out = sink(args)?;
            write_validation(&report, format, &mut out)?;
            out.flush()?;
            let bad = report
                .engines
                .iter()
                .any(|e| e.status == RowStatus::Ok && e.capacity_bits.is_none());
            Ok(if bad {
                EXIT_NON_FINITE
            } else if !report.passed() {
                EXIT_DISCORDANT
            } else {
                EXIT_OK
            })
        }
    }
}
