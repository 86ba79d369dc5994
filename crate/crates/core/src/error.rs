use thiserror::Error;

use crate::mcp::McpSolution;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    #[error("eigenvalue solver did not converge")]
    NonConvergence,

    #[error("vector has no entry with modulus above {tau:e}")]
    ZeroVector { tau: f64 },

    #[error(
        "state matrix has repeated eigenvalues (min gap {min_gap:e} <= gap tolerance {gap_tol:e})"
    )]
    RepeatedEigenvalues { min_gap: f64, gap_tol: f64 },

    #[error("instance too large for exact search: n = {n} > {limit}")]
    TooLarge { n: usize, limit: usize },

    /// Some eigenvector support misses the candidate index set; `witness` is 0-based.
    #[error("support condition fails at eigenvector {}", witness + 1)]
    Infeasible { witness: usize },

    #[error("repair step made no progress (|Z| {before} -> {after}, tau_pbh {tau_pbh:e})")]
    NoProgress {
        before: usize,
        after: usize,
        tau_pbh: f64,
    },

    #[error("no admissible step value on the candidate grid")]
    NoCandidate,

    /// Input pair fails the eigenvector test at eigenvector `witness` (0-based).
    #[error("input matrix is not controllable (eigenvector {} is orthogonal to it)", witness + 1)]
    NotControllable { witness: usize },

    #[error("system generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error("greedy budget exhausted before reaching full rank")]
    BudgetExhausted(Box<McpSolution>),

    #[error("controllability oracles disagree: {0}")]
    OracleDisagreement(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
