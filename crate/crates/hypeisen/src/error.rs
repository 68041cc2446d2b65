//! Error type shared across the crate.
//!
//! Three failure classes are distinguished because the command-line driver
//! maps them to different exit codes:
//!
//! * domain / configuration errors (bad inputs, malformed config) — exit 2,
//! * numerical non-convergence (a truncated sum or iteration that did not
//!   meet its tolerance within its budget) — exit 1,
//! * I/O errors from reading configs or writing outputs — exit 2.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid mathematical input: point not in the upper half-plane,
    /// non-unimodular matrix, parameter outside the convergence half-plane,
    /// evaluation at a singular configuration, and similar.
    #[error("domain error: {0}")]
    Domain(String),

    /// A truncated series or iterative scheme failed to meet its tolerance
    /// within the configured budget. Carries the best tail estimate so the
    /// caller can report how far off the computation stopped.
    #[error("did not converge: {context} (tail estimate {tail_estimate:.3e})")]
    NonConvergence {
        /// What was being summed or iterated.
        context: String,
        /// Magnitude estimate of the neglected tail when the budget ran out.
        tail_estimate: f64,
    },

    /// Malformed or inconsistent job configuration.
    #[error("config error: {0}")]
    Config(String),

    /// Underlying I/O failure (reading a config, writing an output file).
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code for the command-line driver: 1 for numerical
    /// non-convergence, 2 for everything else (domain, config, I/O).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonConvergence { .. } => 1,
            _ => 2,
        }
    }

    /// Shorthand constructor for domain errors.
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Shorthand constructor for config errors.
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
