//! Command-line front end for the oscillator library.
//!
//! Verbs:
//! - `eigenbasis`      construct the canonical Fourier eigenbasis, write it to a file
//! - `transform`       apply `dft`, `mellin`, `dot`, or `fot` to a signal file
//! - `verify`          run the invariant suites over a range of primes
//! - `bench`           time the fast transform against the quadratic baseline
//! - `multiplicities`  print the eigenvalue multiplicity tables, cross-checked three ways
//!
//! Exit codes: `0` success, `1` invariant failure (or an internal numerical
//! error), `2` unsupported mode (the fast path at `p = 3 (mod 4)`), `64`
//! usage error (bad arguments, unreadable or malformed input).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use oscillator_cli::{commands, CliError, Mode, TorusArg};

#[derive(Parser)]
#[command(
    name = "oscillator",
    version,
    about = "Canonical Fourier eigenbases and oscillator transforms over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the canonical Fourier eigenbasis and write it to a basis file.
    Eigenbasis {
        /// Prime modulus, at least 5.
        #[arg(short = 'p', long = "prime")]
        prime: u64,
        /// Output path for the basis file.
        #[arg(long)]
        out: PathBuf,
        /// Print the run report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Apply a transform to a signal file and write the result.
    Transform {
        /// Input signal file (`p=<prime> kind=signal` header).
        input: PathBuf,
        /// Which transform to apply.
        #[arg(long, value_enum)]
        mode: Mode,
        /// Torus for `dot`/`fot` (ignored by `dft`/`mellin`).
        #[arg(long, value_enum, default_value = "Tw")]
        torus: TorusArg,
        /// Output path for the result file.
        #[arg(long)]
        out: PathBuf,
        /// Print the run report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run the invariant suites for every prime in a range.
    Verify {
        /// Inclusive range `lo..hi`, or a single prime. Composites inside a
        /// range are skipped; an empty range yields an empty passing report.
        range: Option<String>,
        /// Single prime (alternative to the range argument).
        #[arg(short = 'p', long = "prime")]
        prime: Option<u64>,
        /// Largest modulus the dense spectral oracle will attempt.
        #[arg(long)]
        oracle_budget: Option<u64>,
        /// Print the run report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Time the fast transform against the quadratic baseline.
    Bench {
        /// Comma-separated primes, e.g. `101,1009,10009`. Entries with
        /// `p = 3 (mod 4)` are skipped with a note.
        primes: String,
        /// Print the run report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Print eigenvalue multiplicity tables with three-route cross-checks.
    Multiplicities {
        /// Inclusive range `lo..hi`, or a single prime.
        range: Option<String>,
        /// Single prime (alternative to the range argument).
        #[arg(short = 'p', long = "prime")]
        prime: Option<u64>,
        /// Largest modulus the dense spectral oracle will attempt.
        #[arg(long)]
        oracle_budget: Option<u64>,
        /// Print the run report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let result = match cli.command {
        Command::Eigenbasis { prime, out, json } => commands::cmd_eigenbasis(prime, &out, json),
        Command::Transform { input, mode, torus, out, json } => {
            commands::cmd_transform(&input, mode, torus, &out, json)
        }
        Command::Verify { range, prime, oracle_budget, json } => {
            commands::cmd_verify(range.as_deref(), prime, oracle_budget, json)
        }
        Command::Bench { primes, json } => commands::cmd_bench(&primes, json),
        Command::Multiplicities { range, prime, oracle_budget, json } => {
            commands::cmd_multiplicities(range.as_deref(), prime, oracle_budget, json)
        }
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(64)
        }
        Err(CliError::Unsupported(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
