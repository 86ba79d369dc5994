//! Controllability and observability verdicts.
//!
//! Two independent routes: the eigenvector (PBH) test, which needs distinct
//! eigenvalues so that the `n` canonical left eigenvectors cover every left
//! eigenvector up to scale, and the Kalman rank test on the controllability
//! matrix, which works for any `A` and serves as the oracle.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::numlin::{eig_left, numerical_rank, EigenStructure, SystemMatrix, C64, TAU_SUPP};
use crate::sparsity::{support_real, IndexSet};

/// `τ_pbh = PBH_REL_TOL · max(1, ‖B‖_F)`.
pub const PBH_REL_TOL: f64 = 1e-9;

pub fn pbh_tolerance(b_frobenius: f64) -> f64 {
    PBH_REL_TOL * b_frobenius.max(1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InputKind {
    /// `n × 1` single actuator.
    Vector,
    /// `n × n` diagonal, one actuator per state.
    Diagonal,
    /// General `n × p`.
    Full,
}

impl InputKind {
    pub fn name(self) -> &'static str {
        match self {
            InputKind::Vector => "vector",
            InputKind::Diagonal => "diagonal",
            InputKind::Full => "full",
        }
    }
}

/// Real input matrix in one of the three shapes.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseInput {
    kind: InputKind,
    entries: DMatrix<f64>,
}

impl SparseInput {
    pub fn vector(values: &[f64]) -> Result<Self> {
        Self::checked(
            InputKind::Vector,
            DMatrix::from_column_slice(values.len(), 1, values),
        )
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        Self::checked(
            InputKind::Diagonal,
            DMatrix::from_diagonal(&DVector::from_column_slice(values)),
        )
    }

    pub fn full(entries: DMatrix<f64>) -> Result<Self> {
        Self::checked(InputKind::Full, entries)
    }

    /// Picks the narrowest shape that fits: a single column is a vector, a
    /// square matrix with zero off-diagonal part is diagonal, anything else is full.
    pub fn infer(entries: DMatrix<f64>) -> Result<Self> {
        let kind = if entries.ncols() == 1 {
            InputKind::Vector
        } else if entries.is_square()
            && (0..entries.nrows())
                .all(|i| (0..entries.ncols()).all(|j| i == j || entries[(i, j)] == 0.0))
        {
            InputKind::Diagonal
        } else {
            InputKind::Full
        };
        Self::checked(kind, entries)
    }

    fn checked(kind: InputKind, entries: DMatrix<f64>) -> Result<Self> {
        if entries.nrows() == 0 || entries.ncols() == 0 {
            return Err(Error::Dimension("input matrix must be nonempty".into()));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("input matrix"));
        }
        Ok(Self { kind, entries })
    }

    pub fn kind(&self) -> InputKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn p(&self) -> usize {
        self.entries.ncols()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.entries.column(j).iter().copied().collect()
    }

    /// Diagonal entries (only meaningful for the diagonal shape).
    pub fn diagonal_values(&self) -> Vec<f64> {
        self.entries.diagonal().iter().copied().collect()
    }

    pub fn nnz(&self) -> usize {
        self.nnz_with(TAU_SUPP)
    }

    pub fn nnz_with(&self, tau: f64) -> usize {
        self.entries.iter().filter(|v| v.abs() > tau).count()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.norm()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Support of the vector shape (rows with a nonzero entry in general).
    pub fn row_support(&self) -> IndexSet {
        let rowmax: Vec<f64> = (0..self.n())
            .map(|i| {
                self.entries
                    .row(i)
                    .iter()
                    .fold(0.0f64, |m, v| m.max(v.abs()))
            })
            .collect();
        support_real(&rowmax, TAU_SUPP)
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n())
            .map(|i| self.entries.row(i).iter().copied().collect())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Pbh,
    Kalman,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Pbh => "pbh",
            Method::Kalman => "kalman",
        }
    }
}

/// Eigenvector orthogonal (within tolerance) to every input column.
#[derive(Clone, Debug, PartialEq)]
pub struct PbhWitness {
    pub index: usize,
    pub eigenvalue: C64,
    /// `xᵢᴴB`.
    pub product: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub controllable: bool,
    pub method: Method,
    /// `τ_pbh` for the PBH route, the rank threshold factor for Kalman.
    pub tolerance: f64,
    pub witness: Option<PbhWitness>,
    pub rank: Option<usize>,
}

/// PBH test over the `n` canonical left eigenvectors: controllable iff every
/// `‖xᵢᴴB‖∞ > τ_pbh`. The witness is the smallest failing index.
pub fn pbh_controllable(e: &EigenStructure, b: &SparseInput) -> Result<Verdict> {
    e.require_distinct()?;
    if b.n() != e.n() {
        return Err(Error::Dimension(format!(
            "input has {} rows, state dimension is {}",
            b.n(),
            e.n()
        )));
    }
    let tau = pbh_tolerance(b.frobenius_norm());
    let cols: Vec<Vec<f64>> = (0..b.p()).map(|j| b.column(j)).collect();
    for i in 0..e.n() {
        let product: Vec<C64> = cols.iter().map(|c| e.inner_real(i, c)).collect();
        let peak = product.iter().fold(0.0, |m: f64, z| m.max(z.norm()));
        if peak <= tau {
            return Ok(Verdict {
                controllable: false,
                method: Method::Pbh,
                tolerance: tau,
                witness: Some(PbhWitness {
                    index: i,
                    eigenvalue: e.eigenvalues()[i],
                    product,
                }),
                rank: None,
            });
        }
    }
    Ok(Verdict {
        controllable: true,
        method: Method::Pbh,
        tolerance: tau,
        witness: None,
        rank: None,
    })
}

/// Controllability matrix `[B, AB, …, A^{n−1}B]` with each power block
/// scaled to unit Frobenius norm.
pub fn controllability_matrix(a: &SystemMatrix, b: &SparseInput) -> DMatrix<f64> {
    let n = a.n();
    let p = b.p();
    let mut k = DMatrix::zeros(n, n * p);
    let mut block = b.entries().clone();
    for power in 0..n {
        let norm = block.norm();
        if norm > 0.0 {
            block /= norm;
        }
        k.columns_mut(power * p, p).copy_from(&block);
        block = a.matrix() * &block;
    }
    k
}

pub fn kalman_controllable(a: &SystemMatrix, b: &SparseInput) -> Result<Verdict> {
    if b.n() != a.n() {
        return Err(Error::Dimension(format!(
            "input has {} rows, state dimension is {}",
            b.n(),
            a.n()
        )));
    }
    let k = controllability_matrix(a, b);
    let rank = numerical_rank(&k)?;
    Ok(Verdict {
        controllable: rank == a.n(),
        method: Method::Kalman,
        tolerance: k.nrows().max(k.ncols()) as f64 * f64::EPSILON,
        witness: None,
        rank: Some(rank),
    })
}

/// Both routes; errors with [`Error::OracleDisagreement`] when they differ.
pub fn controllable_both(
    a: &SystemMatrix,
    e: &EigenStructure,
    b: &SparseInput,
) -> Result<(Verdict, Verdict)> {
    let p = pbh_controllable(e, b)?;
    let k = kalman_controllable(a, b)?;
    if p.controllable != k.controllable {
        return Err(Error::OracleDisagreement(format!(
            "pbh says {}, kalman rank {} of {}",
            p.controllable,
            k.rank.unwrap_or(0),
            a.n()
        )));
    }
    Ok((p, k))
}

/// Observability of `(A, C)` as the PBH controllability of `(Aᵀ, Cᵀ)`.
pub fn observable(a: &SystemMatrix, c: &DMatrix<f64>) -> Result<Verdict> {
    let (at, ct) = dual_pair(a, c)?;
    pbh_controllable(&eig_left(&at)?, &ct)
}

pub fn observable_kalman(a: &SystemMatrix, c: &DMatrix<f64>) -> Result<Verdict> {
    let (at, ct) = dual_pair(a, c)?;
    kalman_controllable(&at, &ct)
}

fn dual_pair(a: &SystemMatrix, c: &DMatrix<f64>) -> Result<(SystemMatrix, SparseInput)> {
    if c.ncols() != a.n() {
        return Err(Error::Dimension(format!(
            "output matrix has {} columns, state dimension is {}",
            c.ncols(),
            a.n()
        )));
    }
    Ok((a.transpose(), SparseInput::full(c.transpose())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: usize, v: &[f64]) -> SystemMatrix {
        SystemMatrix::from_row_slice(n, v).unwrap()
    }

    fn pbh(a: &SystemMatrix, b: &[f64]) -> Verdict {
        pbh_controllable(&eig_left(a).unwrap(), &SparseInput::vector(b).unwrap()).unwrap()
    }

    fn kalman(a: &SystemMatrix, b: &[f64]) -> Verdict {
        kalman_controllable(a, &SparseInput::vector(b).unwrap()).unwrap()
    }

    #[test]
    fn pbh_examples() {
        let a = SystemMatrix::diagonal(&[1.0, 2.0]).unwrap();
        assert!(pbh(&a, &[1.0, 1.0]).controllable);
        let v = pbh(&a, &[1.0, 0.0]);
        assert!(!v.controllable);
        assert_eq!(v.witness.unwrap().index, 1);

        let a = sys(2, &[1.0, 1.0, 0.0, 2.0]);
        assert!(pbh(&a, &[0.0, 1.0]).controllable);
    }

    #[test]
    fn pbh_refuses_repeated() {
        let a = SystemMatrix::diagonal(&[1.0, 1.0]).unwrap();
        let r = pbh_controllable(
            &eig_left(&a).unwrap(),
            &SparseInput::vector(&[1.0, 1.0]).unwrap(),
        );
        assert!(matches!(r, Err(Error::RepeatedEigenvalues { .. })));
    }

    #[test]
    fn kalman_examples() {
        let a = SystemMatrix::diagonal(&[1.0, 1.0]).unwrap();
        let v = kalman(&a, &[1.0, 1.0]);
        assert!(!v.controllable);
        assert_eq!(v.rank, Some(1));

        let a = sys(2, &[1.0, 1.0, 0.0, 2.0]);
        let v = kalman(&a, &[0.0, 1.0]);
        assert!(v.controllable);
        assert_eq!(v.rank, Some(2));

        let a = SystemMatrix::diagonal(&[1.0, 2.0, 3.0]).unwrap();
        let v = kalman(&a, &[1.0, 1.0, 1.0]);
        assert_eq!(v.rank, Some(3));
    }

    #[test]
    fn observability_examples() {
        let a = SystemMatrix::diagonal(&[1.0, 2.0]).unwrap();
        let c = DMatrix::from_row_slice(1, 2, &[1.0, 1.0]);
        assert!(observable(&a, &c).unwrap().controllable);
        let c = DMatrix::from_row_slice(1, 2, &[0.0, 1.0]);
        let v = observable(&a, &c).unwrap();
        assert!(!v.controllable);
        assert_eq!(v.witness.unwrap().index, 0);

        let a = sys(2, &[1.0, 0.0, 1.0, 2.0]);
        let c = DMatrix::from_row_slice(1, 2, &[0.0, 1.0]);
        assert!(observable(&a, &c).unwrap().controllable);
        assert!(observable_kalman(&a, &c).unwrap().controllable);
    }

    #[test]
    fn scaling_does_not_change_verdict() {
        let a = sys(3, &[1.0, 2.0, 0.0, 0.0, 3.0, 1.0, 1.0, 0.0, -2.0]);
        for b in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] {
            let base = pbh(&a, &b).controllable;
            for s in [1e-6, -3.0, 1e6] {
                let scaled: Vec<f64> = b.iter().map(|v| v * s).collect();
                assert_eq!(pbh(&a, &scaled).controllable, base);
                assert_eq!(kalman(&a, &scaled).controllable, base);
            }
        }
    }

    #[test]
    fn infer_shapes() {
        let v = SparseInput::infer(DMatrix::from_row_slice(2, 1, &[1.0, 0.0])).unwrap();
        assert_eq!(v.kind(), InputKind::Vector);
        let d = SparseInput::infer(DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 3.0])).unwrap();
        assert_eq!(d.kind(), InputKind::Diagonal);
        let f = SparseInput::infer(DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 3.0])).unwrap();
        assert_eq!(f.kind(), InputKind::Full);
        assert_eq!(f.nnz(), 3);
    }
}
