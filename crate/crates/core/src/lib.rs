//! Sparse actuator and sensor selection for linear time-invariant systems
//! `ẋ = Ax + Bu` whose state matrix has distinct eigenvalues.
//!
//! - [`numlin`]: canonical left eigenvectors, numerical rank.
//! - [`sparsity`]: eigenvector supports and minimum hitting sets.
//! - [`pbh`]: eigenvector (PBH) and Kalman rank controllability verdicts.
//! - [`construct`]: repair construction of a controllable vector inside a
//!   prescribed support, optionally under magnitude constraints.
//! - [`equiv`]: conversions between vector, diagonal and full inputs that
//!   never increase the number of nonzeros.
//! - [`mcp`]: minimal controllability / observability solvers.
//! - [`gensys`]: systems with prescribed eigenvector supports.
//! - [`cli`]: the `sparsectl` command-line front end.
//!
//! Index sets are 0-based in the API and 1-based in files and reports.

pub mod cli;
pub mod construct;
pub mod equiv;
pub mod error;
pub mod gensys;
pub mod mcp;
pub mod numlin;
pub mod pbh;
pub mod sparsity;

pub use construct::{construct_vector, construct_with, ConstraintSpec, RepairTrace};
pub use error::{Error, Result};
pub use mcp::{
    greedy_rank, solve_mcp_diagonal, solve_mcp_full, solve_mcp_vector, solve_min_observability,
    McpSolution,
};
pub use numlin::{eig_left, EigenStructure, SystemMatrix};
pub use pbh::{kalman_controllable, observable, pbh_controllable, SparseInput, Verdict};
pub use sparsity::{support_family, IndexSet, SupportFamily};
