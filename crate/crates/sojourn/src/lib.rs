//! Arithmetic of scattering geodesics on the modular surface.
//!
//! Scattering geodesics on `SL(2,Z) \ H` run from the cusp back to the cusp.
//! They are indexed by pairs of rational boundary points, and the geodesics
//! with a given sojourn time (the length of the excursion through the compact
//! part) are counted by elementary arithmetic: for a denominator `q` there are
//! `n_q = (phi(q) + s_q) / 2` of them, where `phi` is Euler's totient and
//! `s_q` counts square roots of `-1` modulo `q`.
//!
//! This crate computes those quantities at scale and runs the statistical
//! experiments built on top of them:
//!
//! * [`sieve`] — a smallest-prime-factor table with `phi`, `s_q`, `n_q`, and
//!   the distinct-prime-factor count `omega` derived from it;
//! * [`geodesics`] — enumeration of the geodesic families themselves via
//!   pairing of numerators `p <-> -p^{-1} (mod q)`;
//! * [`stats`] — the normalized `omega` statistic, its empirical distribution
//!   against the standard normal, and the density/exceptional-set counts
//!   `A(x)` and `E(x)`;
//! * [`parallel`] — a deterministic block runner so multi-worker output is
//!   byte-identical to single-worker output;
//! * [`svg`] / [`cli`] — rendering and the command-line front end.

pub mod cli;
pub mod geodesics;
pub mod parallel;
pub mod sieve;
pub mod stats;
pub mod svg;

pub use sieve::{ArithmeticRecord, FactorTable};

/// Errors reported by this crate.
///
/// The variants map onto the process exit codes used by the CLI: invalid
/// arguments are usage errors (exit 2), I/O failures exit 3, and invariant
/// violations — which always indicate a bug, never bad input — exit 4.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller-supplied value is out of range or malformed.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The host refused a resource request (typically a table allocation).
    #[error("resource limit: {0}")]
    Resource(String),

    /// An internal mathematical invariant failed. This signals a bug.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    /// An underlying I/O operation failed.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    fn invalid(msg: impl Into<String>) -> Error {
        Error::InvalidArgument(msg.into())
    }
}
