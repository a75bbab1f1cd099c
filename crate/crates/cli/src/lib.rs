//! Command-line front end for the `dirac-msy` solver.
//!
//! Exit codes: 0 success, 1 physics failure (unsolved state or failed
//! check), 2 usage, configuration or I/O error.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use dirac_msy::{BranchPolicy, PotentialChoice, SymmetryLimit};

use commands::SweepParam;
use config::{ConfigError, RunConfig};
use verify::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PHYSICS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Physics(dirac_msy::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// Parameter-validation failures from the library are configuration errors.
    pub fn config(e: dirac_msy::Error) -> Self {
        Self::Config(ConfigError::Invalid(e.to_string()))
    }

    pub fn physics(e: dirac_msy::Error) -> Self {
        Self::Physics(e)
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Physics(_) => EXIT_PHYSICS,
            _ => EXIT_USAGE,
        }
    }
}

/// Text produced by a command and the number of failed rows or checks.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub failures: usize,
}

#[derive(Debug, Parser)]
#[command(name = "dirac-msy", version, about = "Dirac bound states for Mobius-square plus Yukawa potentials")]
pub struct Cli {
    /// `key = value` configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub limit: Option<SymmetryLimit>,
    #[arg(long, global = true)]
    pub choice: Option<PotentialChoice>,
    #[arg(long, global = true)]
    pub branch: Option<BranchPolicy>,
    /// Leave the generation time out of the metadata header.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form energies for every configured (n, kappa, H).
    Energies,
    /// Energies while one parameter is scanned.
    Sweep {
        #[arg(long, value_enum)]
        param: SweepParam,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Normalized radial components F and G of one state.
    Wavefunction {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        kappa: i32,
        #[arg(long, allow_hyphen_values = true)]
        tensor: Option<f64>,
    },
    /// Run a self-check suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Exact 1/r^2 against its exponential approximation.
    Centrifugal,
}

fn load_config(cli: &Cli) -> Result<(RunConfig, bool), CliError> {
    let mut explicit = false;
    let mut cfg = match &cli.config {
        Some(path) => {
            explicit = true;
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            RunConfig::parse(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(l) = cli.limit {
        cfg.limit = l;
        explicit = true;
    }
    if let Some(c) = cli.choice {
        cfg.choice = c;
        explicit = true;
    }
    if let Some(b) = cli.branch {
        cfg.branch = b;
        explicit = true;
    }
    cfg.validate()?;
    Ok((cfg, explicit))
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let (cfg, explicit) = load_config(cli)?;
    let ts = !cli.no_timestamp;
    let outcome = match &cli.command {
        Command::Energies => commands::energies(&cfg, ts)?,
        Command::Sweep { param, from, to, steps } => commands::sweep(&cfg, *param, *from, *to, *steps, ts)?,
        Command::Wavefunction { n, kappa, tensor } => commands::wavefunction(&cfg, *n, *kappa, *tensor, ts)?,
        Command::Verify { suite } => {
            let checks = verify::run(*suite, explicit.then_some(&cfg))?;
            verify::report(*suite, &checks)
        }
        Command::Centrifugal => commands::centrifugal(&cfg, ts)?,
    };
    let target = cli.out.clone().or(cfg.output.clone());
    match target {
        Some(path) => std::fs::write(&path, &outcome.text).map_err(|source| CliError::Io { path, source })?,
        None => {
            let _ = std::io::stdout().write_all(outcome.text.as_bytes());
        }
    }
    Ok(outcome)
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_entry<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(o) if o.failures == 0 => EXIT_OK,
        Ok(o) => {
            eprintln!("dirac-msy: {} failed row(s) or check(s)", o.failures);
            EXIT_PHYSICS
        }
        Err(e) => {
            eprintln!("dirac-msy: {e}");
            e.exit_code()
        }
    }
}
