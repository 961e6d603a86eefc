//! Error taxonomy shared across the workspace.
//!
//! Variants map one-to-one onto the CLI exit codes: usage errors (1),
//! domain/data/configuration errors (2), convergence errors (3) and
//! infeasibility (4).

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed request: unknown unit tag, missing suffix, bad flag combination.
    #[error("usage error: {0}")]
    Usage(String),

    /// Input value outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed input data (CSV rows, preset files).
    #[error("data error: {0}")]
    Data(String),

    /// Incomplete or inconsistent model configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// An iteration failed to converge or a numeric scheme broke down.
    #[error("convergence error: {0}")]
    Convergence(String),

    /// The request is physically impossible under the given conditions.
    #[error("infeasible: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
