//! Batch front end: runs the verification suites and degree calculators
//! and emits reports as JSON, CSV, LaTeX or plain text.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{parse_cells, parse_pairs, Format, RunConfig};

/// Failure modes with their process exit codes: usage errors exit 2,
/// resource-guard refusals exit 3, everything else (including failed
/// verifications) exits 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Guard(String),
    Io(String),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Guard(_) => 3,
            CliError::Io(_) | CliError::Internal(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Guard(m) | CliError::Io(m) | CliError::Internal(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(name = "betacalc", version, about = "verification suites and degree calculators for 2-local loop-space splittings")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON config file; command-line flags override its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker thread count (defaults to all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verification suites
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// Moore-space summand tables
    Moore {
        #[command(subcommand)]
        what: MooreWhat,
    },
    /// Minimal stabilization range for a target stable degree
    StableRange {
        /// Target stable degree j
        #[arg(long)]
        j: Option<i64>,
        /// Factor degree pairs, e.g. "1,2" or "1,2;2,3"
        #[arg(long)]
        cells: Option<String>,
    },
}

#[derive(Subcommand)]
enum VerifyWhat {
    /// Group-ring identities: quasi-idempotency, bracket property,
    /// orthogonal idempotents, factorization, rank law
    Dsw {
        #[arg(long = "max-n")]
        max_n: Option<usize>,
    },
    /// Homology splitting identities: the phi/varphi composite and the
    /// smash-product retraction
    Splitting {
        #[arg(long = "k-max")]
        k_max: Option<i64>,
        /// Degree pairs, e.g. "1,2" or "1,2;2,3;3,5"
        #[arg(long)]
        degrees: Option<String>,
        /// Maximum number of smash factors for the retraction check
        #[arg(long)]
        factors: Option<usize>,
    },
}

#[derive(Subcommand)]
enum MooreWhat {
    /// Z/8Z-summand table for P^m(2)
    Table {
        /// Moore space dimension m
        #[arg(long)]
        dim: Option<i64>,
        #[arg(long = "k-max")]
        k_max: Option<i64>,
    },
}

fn run(cli: Cli) -> Result<report::RunReport, CliError> {
    let base = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };

    let mut flags = RunConfig {
        format: cli.format,
        out: cli.out.clone(),
        threads: cli.threads,
        ..RunConfig::default()
    };
    match &cli.command {
        Command::Verify { what } => match what {
            VerifyWhat::Dsw { max_n } => flags.max_n = *max_n,
            VerifyWhat::Splitting {
                k_max,
                degrees,
                factors,
            } => {
                flags.k_max = *k_max;
                flags.factors = *factors;
                flags.degrees = degrees.as_deref().map(parse_pairs).transpose()?;
            }
        },
        Command::Moore {
            what: MooreWhat::Table { dim, k_max },
        } => {
            flags.dim = *dim;
            flags.k_max = *k_max;
        }
        Command::StableRange { j, cells } => {
            flags.j = *j;
            flags.cells = cells.as_deref().map(parse_cells).transpose()?;
        }
    }
    let resolved = flags.over(base);

    if let Some(threads) = resolved.threads {
        // identical results under any hint; this only bounds the pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }

    match &cli.command {
        Command::Verify {
            what: VerifyWhat::Dsw { .. },
        } => commands::cmd_verify_dsw(resolved),
        Command::Verify {
            what: VerifyWhat::Splitting { .. },
        } => commands::cmd_verify_splitting(resolved),
        Command::Moore { .. } => commands::cmd_moore(resolved),
        Command::StableRange { .. } => commands::cmd_stable_range(resolved),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            let format = report.config.format.unwrap_or(Format::Text);
            let out = report.config.out.clone();
            if let Err(e) = report.emit(format, out.as_deref()) {
                eprintln!("error: {}", e.message());
                return ExitCode::from(e.exit_code());
            }
            if report.aggregate_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
