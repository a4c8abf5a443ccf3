//! Support library for the `oscillator` binary: file formats, run reports,
//! invariant suites, benchmarks, and the verb implementations. The binary in
//! `main.rs` only parses arguments and maps [`CliError`] to exit codes; the
//! integration and acceptance tests drive these modules directly.

pub mod bench;
pub mod commands;
pub mod format;
pub mod report;
pub mod verify;

use clap::ValueEnum;

/// Process-level error classes, one per nonzero exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad invocation: arguments, input files, or parameter domains. Exit 64.
    Usage(String),
    /// The request names a mode with no implementation on this input class
    /// (fast transform at `p = 3 (mod 4)`). Exit 2.
    Unsupported(String),
    /// An invariant check failed or an internal computation broke. Exit 1.
    Failure(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl From<oscillator::Error> for CliError {
    fn from(e: oscillator::Error) -> CliError {
        use oscillator::Error as E;
        match e {
            E::NotPrime(_) | E::PrimeTooSmall(_) | E::PrimeTooLarge(_) => {
                CliError::Usage(e.to_string())
            }
            E::FastPathUnavailable(_) => CliError::Unsupported(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

/// Transform selected by `--mode`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Expansion in the canonical torus eigenbasis (one coefficient per basis vector).
    Dot,
    /// Fast character-pairing transform, `O(p log p)`, split torus only.
    Fot,
    /// Unitary discrete Fourier transform.
    Dft,
    /// Multiplicative character transform on the nonzero points.
    Mellin,
}

/// Torus family selected by `--torus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TorusArg {
    /// Centralizer of the Weyl element (the Fourier symmetry torus).
    #[value(name = "Tw")]
    Tw,
    /// Diagonal torus.
    #[value(name = "A")]
    A,
    /// Norm-one torus of the quadratic extension.
    #[value(name = "ns")]
    Ns,
}
