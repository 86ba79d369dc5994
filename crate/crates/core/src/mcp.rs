//! Minimal controllability and observability.
//!
//! The exact solvers never search real-valued entries: for distinct
//! eigenvalues a support admits a controllable vector iff it hits every
//! eigenvector support, so the optimum is a minimum hitting set, realized by
//! the repair construction. The diagonal and full variants reshape the vector
//! optimum, which is optimal for them as well.

use nalgebra::DMatrix;

use crate::construct::{construct_with, ConstraintSpec, RepairTrace};
use crate::equiv::{vector_to_diagonal, vector_to_full};
use crate::error::{Error, Result};
use crate::numlin::{eig_left, EigenStructure, SystemMatrix};
use crate::pbh::{kalman_controllable, pbh_controllable, InputKind, SparseInput, Verdict};
use crate::sparsity::{min_hitting_set_exact, support_family, IndexSet, SupportFamily};

/// Candidate values for a newly added greedy coordinate, in trial order.
const GREEDY_VALUES: [f64; 8] = [1.0, -1.0, 2.0, -2.0, 3.0, -3.0, 4.0, -4.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    Exact,
    Greedy,
}

impl SolveMethod {
    pub fn name(self) -> &'static str {
        match self {
            SolveMethod::Exact => "exact",
            SolveMethod::Greedy => "greedy",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificates {
    /// Absent when the eigenvalues are repeated (greedy only).
    pub pbh: Option<Verdict>,
    pub kalman: Verdict,
}

impl Certificates {
    pub fn all_pass(&self) -> bool {
        self.kalman.controllable && self.pbh.as_ref().is_none_or(|v| v.controllable)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct McpSolution {
    pub variant: InputKind,
    pub k_star: usize,
    pub realization: SparseInput,
    pub support: IndexSet,
    pub certificates: Certificates,
    pub method: SolveMethod,
    /// Sensor problem: `realization` holds `Cᵀ` and certificates refer to `(Aᵀ, Cᵀ)`.
    pub dual: bool,
    pub trace: Option<RepairTrace>,
}

impl McpSolution {
    /// The output matrix `C` (1 × n) of an observability solution.
    pub fn output_matrix(&self) -> Option<DMatrix<f64>> {
        self.dual.then(|| self.realization.entries().transpose())
    }
}

fn certify(a: &SystemMatrix, e: &EigenStructure, b: &SparseInput) -> Result<Certificates> {
    let pbh = pbh_controllable(e, b)?;
    let kalman = kalman_controllable(a, b)?;
    if !(pbh.controllable && kalman.controllable) {
        return Err(Error::OracleDisagreement(format!(
            "realization failed certification (pbh {}, kalman rank {:?} of {})",
            pbh.controllable,
            kalman.rank,
            a.n()
        )));
    }
    Ok(Certificates {
        pbh: Some(pbh),
        kalman,
    })
}

/// Minimum-nonzero single input vector.
pub fn solve_mcp_vector(a: &SystemMatrix, constraint: &ConstraintSpec) -> Result<McpSolution> {
    let e = eig_left(a)?;
    let f = support_family(&e)?;
    solve_vector_with(a, &e, &f, constraint)
}

pub fn solve_vector_with(
    a: &SystemMatrix,
    e: &EigenStructure,
    f: &SupportFamily,
    constraint: &ConstraintSpec,
) -> Result<McpSolution> {
    let support = min_hitting_set_exact(f)?;
    let (b, trace) = construct_with(e, f, &support, constraint, 0)?;
    let realization = SparseInput::vector(&b)?;
    let certificates = certify(a, e, &realization)?;
    Ok(McpSolution {
        variant: InputKind::Vector,
        k_star: support.len(),
        realization,
        support,
        certificates,
        method: SolveMethod::Exact,
        dual: false,
        trace: Some(trace),
    })
}

pub fn solve_mcp_diagonal(a: &SystemMatrix, constraint: &ConstraintSpec) -> Result<McpSolution> {
    let e = eig_left(a)?;
    let f = support_family(&e)?;
    let base = solve_vector_with(a, &e, &f, constraint)?;
    let (realization, _) = vector_to_diagonal(&base.realization)?;
    let certificates = certify(a, &e, &realization)?;
    Ok(McpSolution {
        variant: InputKind::Diagonal,
        realization,
        certificates,
        ..base
    })
}

pub fn solve_mcp_full(
    a: &SystemMatrix,
    p: usize,
    constraint: &ConstraintSpec,
) -> Result<McpSolution> {
    if p == 0 {
        return Err(Error::InvalidInput("p must be at least 1".into()));
    }
    let e = eig_left(a)?;
    let f = support_family(&e)?;
    let base = solve_vector_with(a, &e, &f, constraint)?;
    if p == 1 {
        return Ok(base);
    }
    let (realization, _) = vector_to_full(&base.realization, p)?;
    let certificates = certify(a, &e, &realization)?;
    Ok(McpSolution {
        variant: InputKind::Full,
        realization,
        certificates,
        ..base
    })
}

/// Sparsest single output row `C` making `(A, C)` observable.
pub fn solve_min_observability(
    a: &SystemMatrix,
    constraint: &ConstraintSpec,
) -> Result<McpSolution> {
    let sol = solve_mcp_vector(&a.transpose(), constraint)?;
    Ok(McpSolution { dual: true, ..sol })
}

/// Greedy coordinate selection: each round adds the coordinate `e_j` (with
/// the first of [`GREEDY_VALUES`] reaching the round's best rank) that
/// maximizes the Kalman rank, smallest `j` on ties. Stops at full rank or
/// after `budget` rounds. Works for repeated eigenvalues too.
pub fn greedy_rank(a: &SystemMatrix, budget: usize) -> Result<McpSolution> {
    let n = a.n();
    let mut b = vec![0.0; n];
    let mut chosen: Vec<usize> = Vec::new();
    let mut rank = 0;

    while rank < n && chosen.len() < budget {
        let mut best: Option<(usize, f64, usize)> = None;
        for j in (0..n).filter(|j| !chosen.contains(j)) {
            for &v in &GREEDY_VALUES {
                let mut trial = b.clone();
                trial[j] = v;
                let r = kalman_controllable(a, &SparseInput::vector(&trial)?)?
                    .rank
                    .unwrap_or(0);
                if best.is_none_or(|(_, _, br)| r > br) {
                    best = Some((j, v, r));
                }
                if r == n {
                    break;
                }
            }
            if best.is_some_and(|(_, _, br)| br == n) {
                break;
            }
        }
        let Some((j, v, r)) = best else { break };
        b[j] = v;
        chosen.push(j);
        rank = r;
    }

    let realization = SparseInput::vector(&b)?;
    let kalman = kalman_controllable(a, &realization)?;
    let pbh = match eig_left(a) {
        Ok(e) if e.distinct() => Some(pbh_controllable(&e, &realization)?),
        _ => None,
    };
    let solution = McpSolution {
        variant: InputKind::Vector,
        k_star: chosen.len(),
        support: IndexSet::new(n, chosen)?,
        realization,
        certificates: Certificates { pbh, kalman },
        method: SolveMethod::Greedy,
        dual: false,
        trace: None,
    };
    if solution.certificates.kalman.controllable {
        Ok(solution)
    } else {
        Err(Error::BudgetExhausted(Box::new(solution)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri() -> SystemMatrix {
        SystemMatrix::from_row_slice(2, &[1.0, 1.0, 0.0, 2.0]).unwrap()
    }

    fn set(n: usize, m: &[usize]) -> IndexSet {
        IndexSet::from_one_based(n, m).unwrap()
    }

    const FREE: ConstraintSpec = ConstraintSpec::Unconstrained;

    #[test]
    fn vector_examples() {
        let s = solve_mcp_vector(&tri(), &FREE).unwrap();
        assert_eq!(s.k_star, 1);
        assert_eq!(s.support, set(2, &[2]));
        assert_eq!(s.realization.nnz(), 1);
        assert!(s.certificates.all_pass());

        let s =
            solve_mcp_vector(&SystemMatrix::diagonal(&[1.0, 2.0, 3.0]).unwrap(), &FREE).unwrap();
        assert_eq!(s.k_star, 3);
        assert_eq!(s.support, IndexSet::full(3));

        let a = SystemMatrix::from_row_slice(2, &[1.0, -1.0, 0.0, 2.0]).unwrap();
        let s = solve_mcp_vector(&a, &FREE).unwrap();
        assert_eq!((s.k_star, s.support), (1, set(2, &[2])));
    }

    #[test]
    fn diagonal_and_full_examples() {
        let s = solve_mcp_diagonal(&tri(), &FREE).unwrap();
        assert_eq!(s.variant, InputKind::Diagonal);
        assert_eq!(s.k_star, 1);
        let d = s.realization.diagonal_values();
        assert_eq!(d[0], 0.0);
        assert_ne!(d[1], 0.0);

        let s = solve_mcp_diagonal(&SystemMatrix::diagonal(&[1.0, 2.0]).unwrap(), &FREE).unwrap();
        assert_eq!(s.k_star, 2);

        let s = solve_mcp_full(&tri(), 4, &FREE).unwrap();
        assert_eq!((s.realization.n(), s.realization.p()), (2, 4));
        assert_eq!(s.realization.nnz(), 1);
        assert_ne!(s.realization.entries()[(1, 3)], 0.0);

        let v = solve_mcp_vector(&tri(), &FREE).unwrap();
        assert_eq!(solve_mcp_full(&tri(), 1, &FREE).unwrap(), v);

        let s = solve_mcp_full(&SystemMatrix::diagonal(&[1.0, 2.0]).unwrap(), 2, &FREE).unwrap();
        assert_eq!(s.k_star, 2);
        assert!(solve_mcp_full(&tri(), 0, &FREE).is_err());
    }

    #[test]
    fn observability_examples() {
        let a = SystemMatrix::from_row_slice(2, &[1.0, 0.0, 1.0, 2.0]).unwrap();
        let s = solve_min_observability(&a, &FREE).unwrap();
        assert_eq!(s.k_star, 1);
        let c = s.output_matrix().unwrap();
        assert_eq!(c.nrows(), 1);
        assert_eq!(c[(0, 0)], 0.0);
        assert_ne!(c[(0, 1)], 0.0);
        assert!(crate::pbh::observable(&a, &c).unwrap().controllable);

        let s =
            solve_min_observability(&SystemMatrix::diagonal(&[1.0, 2.0]).unwrap(), &FREE).unwrap();
        assert_eq!(s.k_star, 2);

        let sym = SystemMatrix::from_row_slice(3, &[2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 5.0])
            .unwrap();
        assert_eq!(
            solve_min_observability(&sym, &FREE).unwrap().k_star,
            solve_mcp_vector(&sym, &FREE).unwrap().k_star
        );
    }

    #[test]
    fn exact_needs_distinct_eigenvalues() {
        let a = SystemMatrix::diagonal(&[1.0, 1.0, 2.0]).unwrap();
        assert!(matches!(
            solve_mcp_vector(&a, &FREE),
            Err(Error::RepeatedEigenvalues { .. })
        ));
    }

    #[test]
    fn greedy_examples() {
        let s = greedy_rank(&SystemMatrix::diagonal(&[1.0, 2.0, 3.0]).unwrap(), 3).unwrap();
        assert_eq!(s.support, IndexSet::full(3));
        assert_eq!(s.certificates.kalman.rank, Some(3));
        assert_eq!(s.method, SolveMethod::Greedy);

        let s = greedy_rank(&tri(), 2).unwrap();
        assert_eq!(s.support, set(2, &[2]));
        assert_eq!(s.k_star, 1);

        match greedy_rank(&tri(), 0) {
            Err(Error::BudgetExhausted(partial)) => {
                assert_eq!(partial.k_star, 0);
                assert!(!partial.certificates.kalman.controllable);
            }
            other => panic!("expected BudgetExhausted, got {other:?}"),
        }
    }

    #[test]
    fn greedy_handles_repeated_eigenvalues() {
        // Jordan-like block plus a repeated diagonal entry: never controllable by one input.
        let a = SystemMatrix::diagonal(&[1.0, 1.0]).unwrap();
        match greedy_rank(&a, 2) {
            Err(Error::BudgetExhausted(partial)) => {
                assert_eq!(partial.certificates.kalman.rank, Some(1));
                assert!(partial.certificates.pbh.is_none());
            }
            other => panic!("expected BudgetExhausted, got {other:?}"),
        }
        let jordan = SystemMatrix::from_row_slice(2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        let s = greedy_rank(&jordan, 2).unwrap();
        assert_eq!(s.support, set(2, &[2]));
    }
}
