//! Dense linear algebra for the left-eigenvector view of a state matrix.
//!
//! Left eigenvectors are obtained from right eigenvectors of the transpose:
//! `xᴴA = λxᴴ` holds exactly when `Aᵀ x̄ = λ x̄`. Eigenvalues come from a real
//! Schur decomposition; each eigenvector is the null direction of `Aᵀ − λI`
//! read off the smallest singular triplet. Every eigenvector is returned in
//! canonical form (unit norm, first nonzero entry real positive), which makes
//! it unique when the eigenvalues are distinct.

use nalgebra::{ComplexField, DMatrix, DVector, Schur, SVD};

pub use nalgebra::Complex;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Absolute zero threshold for entries of unit-norm vectors.
pub const TAU_SUPP: f64 = 1e-9;
/// Relative eigen-residual bound: `‖xᴴA − λxᴴ‖ ≤ EIG_RESIDUAL_TOL · ‖A‖_F`.
pub const EIG_RESIDUAL_TOL: f64 = 1e-8;
/// Eigenvalues closer than `GAP_TOL_REL · max(1, ρ(A))` count as repeated.
pub const GAP_TOL_REL: f64 = 1e-8;
/// Largest imaginary part tolerated on the leading entry of a canonical vector.
pub const CANON_IMAG_TOL: f64 = 1e-10;

const SCHUR_MAX_ITER_PER_DIM: usize = 1000;
/// Diagonal shifts (relative to `max(1, ‖A‖_F)`) retried when the QR
/// iteration stalls, which happens on some symmetric matrices with zero diagonal.
const SCHUR_RETRY_SHIFTS: [f64; 3] = [0.1234, -0.3071, 0.5779];

/// Real square state matrix `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemMatrix {
    entries: DMatrix<f64>,
    provenance: Option<String>,
}

impl SystemMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::Dimension(format!(
                "state matrix must be square, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.nrows() == 0 {
            return Err(Error::Dimension("state matrix must be at least 1x1".into()));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("state matrix"));
        }
        Ok(Self {
            entries,
            provenance: None,
        })
    }

    /// Builds from row-major nested rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(
                "state matrix rows must all have length n".into(),
            ));
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn from_row_slice(n: usize, data: &[f64]) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(n, n, data))
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&DVector::from_column_slice(values)))
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = Some(provenance.into());
        self
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn transpose(&self) -> SystemMatrix {
        SystemMatrix {
            entries: self.entries.transpose(),
            provenance: self.provenance.as_ref().map(|p| format!("transpose({p})")),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.norm()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n())
            .map(|i| self.entries.row(i).iter().copied().collect())
            .collect()
    }
}

/// Eigenvalues of `A` with their canonical left eigenvectors.
#[derive(Clone, Debug)]
pub struct EigenStructure {
    eigenvalues: Vec<C64>,
    left: Vec<DVector<C64>>,
    distinct: bool,
    min_gap: f64,
    gap_tol: f64,
    conj_pairs: Vec<(usize, usize)>,
    tau_supp: f64,
}

impl EigenStructure {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[C64] {
        &self.eigenvalues
    }

    pub fn left_eigenvectors(&self) -> &[DVector<C64>] {
        &self.left
    }

    pub fn eigenvector(&self, i: usize) -> &DVector<C64> {
        &self.left[i]
    }

    pub fn distinct(&self) -> bool {
        self.distinct
    }

    /// Smallest pairwise eigenvalue distance (`+inf` when n = 1).
    pub fn min_gap(&self) -> f64 {
        self.min_gap
    }

    pub fn gap_tol(&self) -> f64 {
        self.gap_tol
    }

    /// Index pairs `(i, j)`, `i < j`, whose eigenvalues are a complex-conjugate pair.
    pub fn conj_pairs(&self) -> &[(usize, usize)] {
        &self.conj_pairs
    }

    pub fn tau_supp(&self) -> f64 {
        self.tau_supp
    }

    pub fn require_distinct(&self) -> Result<()> {
        if self.distinct {
            Ok(())
        } else {
            Err(Error::RepeatedEigenvalues {
                min_gap: self.min_gap,
                gap_tol: self.gap_tol,
            })
        }
    }

    /// `xᵢᴴ v` for a real vector `v`.
    pub fn inner_real(&self, i: usize, v: &[f64]) -> C64 {
        self.left[i].iter().zip(v).map(|(x, &b)| x.conj() * b).sum()
    }
}

/// `‖xᴴA − λxᴴ‖₂` for a left eigenpair candidate.
pub fn left_residual(a: &SystemMatrix, lambda: C64, x: &DVector<C64>) -> f64 {
    let ac = a.matrix().map(|v| C64::new(v, 0.0));
    let lhs = x.adjoint() * &ac;
    let rhs = x.adjoint() * lambda;
    (lhs - rhs).norm()
}

pub fn eig_left(a: &SystemMatrix) -> Result<EigenStructure> {
    eig_left_with(a, TAU_SUPP)
}

fn schur_eigenvalues(a: &DMatrix<f64>) -> Result<Vec<C64>> {
    let n = a.nrows();
    let scale = a.norm().max(1.0);
    for shift in std::iter::once(0.0).chain(SCHUR_RETRY_SHIFTS.iter().map(|c| c * scale)) {
        let shifted = a - DMatrix::identity(n, n) * shift;
        if let Some(schur) = Schur::try_new(shifted, f64::EPSILON, SCHUR_MAX_ITER_PER_DIM * n) {
            return Ok(schur
                .complex_eigenvalues()
                .iter()
                .map(|l| l + shift)
                .collect());
        }
    }
    Err(Error::NonConvergence)
}

pub fn eig_left_with(a: &SystemMatrix, tau_supp: f64) -> Result<EigenStructure> {
    let n = a.n();
    let eigenvalues = schur_eigenvalues(a.matrix())?;
    if eigenvalues
        .iter()
        .any(|l| !l.re.is_finite() || !l.im.is_finite())
    {
        return Err(Error::NonConvergence);
    }

    let at = a.matrix().transpose();
    let mut left = Vec::with_capacity(n);
    for &lambda in &eigenvalues {
        let raw = if lambda.im == 0.0 {
            let shifted = &at - DMatrix::identity(n, n) * lambda.re;
            null_direction(shifted)?.map(|v| C64::new(v, 0.0))
        } else {
            // Conjugate pairs share one computation so their supports agree exactly.
            let upper = if lambda.im > 0.0 {
                lambda
            } else {
                lambda.conj()
            };
            let shifted = at.map(|v| C64::new(v, 0.0)) - DMatrix::<C64>::identity(n, n) * upper;
            let w = null_direction(shifted)?;
            if lambda.im > 0.0 {
                w.map(|z| z.conj())
            } else {
                w
            }
        };
        left.push(canonicalize(&raw, tau_supp)?);
    }

    let rho = eigenvalues.iter().map(|l| l.norm()).fold(0.0, f64::max);
    let gap_tol = GAP_TOL_REL * rho.max(1.0);
    let mut min_gap = f64::INFINITY;
    let mut conj_pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            min_gap = min_gap.min((eigenvalues[i] - eigenvalues[j]).norm());
            if eigenvalues[i].im != 0.0
                && (eigenvalues[i] - eigenvalues[j].conj()).norm() <= gap_tol
            {
                conj_pairs.push((i, j));
            }
        }
    }

    Ok(EigenStructure {
        eigenvalues,
        left,
        distinct: min_gap > gap_tol,
        min_gap,
        gap_tol,
        conj_pairs,
        tau_supp,
    })
}

/// Unit vector spanning the (numerical) null space of `m`, from the
/// right singular vector of the smallest singular value.
fn null_direction<T>(m: DMatrix<T>) -> Result<DVector<T>>
where
    T: ComplexField<RealField = f64>,
{
    let svd = SVD::try_new(m, false, true, f64::EPSILON, 0).ok_or(Error::NonConvergence)?;
    let vt = svd.v_t.ok_or(Error::NonConvergence)?;
    let last = vt.nrows() - 1;
    Ok(vt.row(last).adjoint())
}

/// Scales `v` to unit Euclidean norm with its first entry above `tau_supp`
/// (after normalization) real and positive.
pub fn canonicalize(v: &DVector<C64>, tau_supp: f64) -> Result<DVector<C64>> {
    if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("vector"));
    }
    if v.iter().all(|z| z.norm() <= tau_supp) {
        return Err(Error::ZeroVector { tau: tau_supp });
    }
    let norm = v.norm();
    let unit = v.map(|z| z / norm);
    let lead = unit
        .iter()
        .position(|z| z.norm() > tau_supp)
        .expect("unit vector has an entry above tau");
    let pivot = unit[lead];
    let phase = pivot.conj() / pivot.norm();
    let mut out = unit.map(|z| z * phase);
    out[lead] = C64::new(out[lead].norm(), 0.0);
    Ok(out)
}

/// Number of singular values above `max(rows, cols) · ε · σ_max`.
pub fn numerical_rank<T>(m: &DMatrix<T>) -> Result<usize>
where
    T: ComplexField<RealField = f64>,
{
    if m.iter().any(|v| !v.clone().is_finite()) {
        return Err(Error::NonFinite("matrix"));
    }
    if m.is_empty() {
        return Ok(0);
    }
    let sv = SVD::try_new(m.clone(), false, false, f64::EPSILON, 0)
        .ok_or(Error::NonConvergence)?
        .singular_values;
    let smax = sv.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 {
        return Ok(0);
    }
    let tol = m.nrows().max(m.ncols()) as f64 * f64::EPSILON * smax;
    Ok(sv.iter().filter(|&&s| s > tol).count())
}
