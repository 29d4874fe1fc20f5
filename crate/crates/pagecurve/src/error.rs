//! Error type shared by every module of the crate.

use std::path::PathBuf;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes surfaced by the library.
///
/// The CLI maps these onto process exit codes: domain and not-found
/// errors exit with 3, convergence failures with 4, and I/O problems
/// with 2 (they are almost always a mistyped path).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A search completed without finding a qualifying value.
    #[error("not found: {0}")]
    NotFound(String),

    /// Quadrature estimates failed to stabilize under rule-order doubling.
    /// Both of the last two estimates are attached so the caller can judge
    /// how far apart they ended up.
    #[error(
        "quadrature did not converge: successive estimates {previous:e} and {latest:e} \
         still differ after doubling the rule order twice"
    )]
    QuadratureNotConverged { previous: f64, latest: f64 },

    /// An eigenvalue iteration exceeded its sweep budget.
    #[error("eigensolver did not converge: {0}")]
    EigenNotConverged(String),

    /// A numeric sanity check failed (e.g. an eigenvalue far below zero
    /// where a positive semidefinite spectrum was expected).
    #[error("numeric check failed: {0}")]
    Numeric(String),

    /// File I/O failed; the offending path is attached.
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code the CLI uses for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 2,
            Error::Domain(_) | Error::NotFound(_) => 3,
            Error::QuadratureNotConverged { .. }
            | Error::EigenNotConverged(_)
            | Error::Numeric(_) => 4,
        }
    }
}
