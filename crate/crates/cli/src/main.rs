//! `sieved`: tables and verification suites for sieved Jacobi polynomials.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 for usage
//! errors and 3 when the parameters give an invalid Verblunsky sequence or a
//! computation cannot be carried out.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use output::Format;
use sieved_jacobi::realline::UFamily;
use sieved_jacobi::{emit_table, Error, Execution, JacobiParams, Suite, SuiteConfig, TableKind};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DATA: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "sieved", version, about = "Sieved Jacobi polynomials: tables and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one or more verification suites (`all` runs every suite).
    Check {
        #[arg(required = true, value_name = "SUITE")]
        suites: Vec<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print a table of closed-form values indexed by n.
    Table {
        kind: TableArg,
        /// Recurrence family for `recurrence-u`.
        #[arg(long, env = "SIEVED_FAMILY", default_value = "generalized_ultra")]
        family: String,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableArg {
    Verblunsky,
    Psi,
    RecurrenceU,
    Eigenvalues,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, env = "SIEVED_ALPHA", default_value_t = 0.5, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, env = "SIEVED_BETA", default_value_t = 1.5, allow_negative_numbers = true)]
    beta: f64,
    /// Sieving order.
    #[arg(long = "N", env = "SIEVED_N", default_value_t = 2)]
    order: usize,
    #[arg(long, env = "SIEVED_NMAX", default_value_t = 12)]
    nmax: usize,
    /// Sample count per identity (default: 2·span + 17).
    #[arg(long, env = "SIEVED_SAMPLES")]
    samples: Option<usize>,
    #[arg(long, env = "SIEVED_TOL", default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, env = "SIEVED_SEED", default_value_t = 42)]
    seed: u64,
    #[arg(long, env = "SIEVED_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, env = "SIEVED_OUT")]
    out: Option<PathBuf>,
    /// Worker threads (1 runs sequentially; default: all cores).
    #[arg(long, env = "SIEVED_WORKERS")]
    workers: Option<usize>,
}

impl RunArgs {
    fn execution(&self) -> Execution {
        match self.workers {
            Some(1) => Execution::Sequential,
            _ => Execution::default(),
        }
    }

    fn config(&self) -> SuiteConfig {
        let mut cfg = SuiteConfig::new(self.alpha, self.beta, self.order, self.nmax)
            .with_tolerance(self.tol)
            .with_seed(self.seed)
            .with_execution(self.execution());
        cfg.samples = self.samples;
        cfg
    }
}

/// A failure with its exit status.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::Constraint(_) => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        Failure(code, e.to_string())
    }
}

fn setup_workers(workers: Option<usize>) -> Result<(), Failure> {
    match workers {
        Some(0) => Err(Failure(EXIT_USAGE, "--workers must be at least 1".into())),
        #[cfg(feature = "parallel")]
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure(EXIT_DATA, format!("cannot start worker pool: {e}"))),
        _ => Ok(()),
    }
}

fn parse_suites(names: &[String]) -> Result<Vec<Suite>, Failure> {
    let mut suites = Vec::new();
    for name in names {
        if name == "all" {
            suites.extend(Suite::ALL);
        } else {
            suites.push(name.parse::<Suite>()?);
        }
    }
    Ok(suites)
}

fn run(cli: Cli) -> Result<(Vec<u8>, Option<PathBuf>, bool), Failure> {
    match cli.command {
        Command::Check { suites, run } => {
            let suites = parse_suites(&suites)?;
            setup_workers(run.workers)?;
            let cfg = run.config();
            // suites run one after another; each fans out internally, and
            // reports come back in the order requested
            let reports = suites.iter().map(|s| s.run(&cfg)).collect::<Result<Vec<_>, _>>()?;
            let pass = reports.iter().all(|r| r.pass);
            Ok((output::reports(&reports, run.format)?, run.out, pass))
        }
        Command::Table { kind, family, run } => {
            setup_workers(run.workers)?;
            let kind = match kind {
                TableArg::Verblunsky => TableKind::Verblunsky,
                TableArg::Psi => TableKind::Psi,
                TableArg::RecurrenceU => TableKind::RecurrenceU(family.parse::<UFamily>()?),
                TableArg::Eigenvalues => TableKind::Eigenvalues,
            };
            let p = JacobiParams::new(run.alpha, run.beta);
            let table = emit_table(kind, &p, run.order, run.nmax)?;
            Ok((output::table(&table, run.format)?, run.out, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli).and_then(|(bytes, out, pass)| {
        match out {
            Some(path) => std::fs::write(&path, &bytes)
                .map_err(|e| Failure(EXIT_DATA, format!("cannot write {}: {e}", path.display())))?,
            None => std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| Failure(EXIT_DATA, format!("cannot write output: {e}")))?,
        }
        Ok(pass)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
