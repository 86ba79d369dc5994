//! Test-instance generation.
//!
//! A matrix with prescribed left-eigenvector supports is built by choosing
//! the eigenvectors first: rows of `X` carry random entries on the wanted
//! supports, and `A = X⁻¹ Λ X` satisfies `X A = Λ X`, so row `i` of `X` is a
//! left eigenvector for `λᵢ`. Each draw is checked by recomputing the
//! eigenstructure and comparing supports; failed draws are retried.

use nalgebra::{DMatrix, SVD};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numlin::{eig_left, SystemMatrix, GAP_TOL_REL};
use crate::sparsity::{support_family, IndexSet};

/// Draws with `cond(X)` above this are rejected.
pub const MAX_CONDITION: f64 = 1e8;
pub const DEFAULT_RETRIES: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub n: usize,
    /// Target support of each left eigenvector, in eigenvalue order.
    pub family: Vec<IndexSet>,
    /// Distinct real eigenvalues; `1..=n` when absent.
    pub eigenvalues: Option<Vec<f64>>,
    pub seed: u64,
    pub max_retries: usize,
}

impl GeneratorSpec {
    pub fn new(family: Vec<IndexSet>) -> Self {
        Self {
            n: family.len(),
            family,
            eigenvalues: None,
            seed: 0,
            max_retries: DEFAULT_RETRIES,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_eigenvalues(mut self, eigenvalues: Vec<f64>) -> Self {
        self.eigenvalues = Some(eigenvalues);
        self
    }

    fn eigenvalues(&self) -> Vec<f64> {
        self.eigenvalues
            .clone()
            .unwrap_or_else(|| (1..=self.n).map(|v| v as f64).collect())
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        if self.family.len() != self.n {
            return Err(Error::Dimension(format!(
                "family has {} sets, n = {}",
                self.family.len(),
                self.n
            )));
        }
        if let Some(i) = self.family.iter().position(|s| s.is_empty()) {
            return Err(Error::InvalidInput(format!(
                "support set {} is empty",
                i + 1
            )));
        }
        if self.family.iter().any(|s| s.n() != self.n) {
            return Err(Error::Dimension(
                "support set dimension differs from n".into(),
            ));
        }
        let lams = self.eigenvalues();
        if lams.len() != self.n || lams.iter().any(|l| !l.is_finite()) {
            return Err(Error::InvalidInput("need n finite eigenvalues".into()));
        }
        let rho = lams.iter().fold(1.0f64, |m, l| m.max(l.abs()));
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if (lams[i] - lams[j]).abs() <= GAP_TOL_REL * rho {
                    return Err(Error::InvalidInput("eigenvalues must be distinct".into()));
                }
            }
        }
        Ok(())
    }
}

/// `A = X⁻¹ diag(λ) X` for an invertible `X`.
pub fn system_from_eigvecs(x: &DMatrix<f64>, eigenvalues: &[f64]) -> Result<SystemMatrix> {
    let n = x.nrows();
    if !x.is_square() || eigenvalues.len() != n {
        return Err(Error::Dimension(
            "X must be n x n with n eigenvalues".into(),
        ));
    }
    let mut lam_x = x.clone();
    for (i, &l) in eigenvalues.iter().enumerate() {
        lam_x.row_mut(i).scale_mut(l);
    }
    let a = x
        .clone()
        .lu()
        .solve(&lam_x)
        .ok_or_else(|| Error::InvalidInput("eigenvector matrix is singular".into()))?;
    SystemMatrix::new(a)
}

fn condition_number(x: &DMatrix<f64>) -> f64 {
    let sv = SVD::new(x.clone(), false, false).singular_values;
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let smin = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if smin == 0.0 {
        f64::INFINITY
    } else {
        smax / smin
    }
}

/// Whether the left-eigenvector supports of `a` reproduce `family`, matching
/// each target eigenvalue to the nearest computed one.
pub fn supports_match(a: &SystemMatrix, eigenvalues: &[f64], family: &[IndexSet]) -> bool {
    let Ok(e) = eig_left(a) else { return false };
    let Ok(f) = support_family(&e) else {
        return false;
    };
    eigenvalues.iter().zip(family).all(|(&lam, target)| {
        let nearest = (0..e.n())
            .min_by(|&p, &q| {
                let dp = (e.eigenvalues()[p].re - lam).hypot(e.eigenvalues()[p].im);
                let dq = (e.eigenvalues()[q].re - lam).hypot(e.eigenvalues()[q].im);
                dp.total_cmp(&dq)
            })
            .expect("n >= 1");
        f.support(nearest) == target
    })
}

pub fn system_from_family(spec: &GeneratorSpec) -> Result<SystemMatrix> {
    spec.validate()?;
    let n = spec.n;
    let lams = spec.eigenvalues();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..spec.max_retries.max(1) {
        let mut x = DMatrix::zeros(n, n);
        for (i, s) in spec.family.iter().enumerate() {
            for &j in s.members() {
                let mag: f64 = rng.random_range(0.5..=1.5);
                x[(i, j)] = if rng.random_bool(0.5) { mag } else { -mag };
            }
        }
        if condition_number(&x) > MAX_CONDITION {
            continue;
        }
        let Ok(a) = system_from_eigvecs(&x, &lams) else {
            continue;
        };
        if supports_match(&a, &lams, &spec.family) {
            return Ok(a.with_provenance(format!("family seed {}", spec.seed)));
        }
    }
    Err(Error::GenerationFailed {
        attempts: spec.max_retries.max(1),
    })
}

/// Random support family: set `i` always contains `π(i)` for a random
/// permutation `π` (so some draw of `X` is invertible) plus each other
/// index with probability `density`.
pub fn random_family(n: usize, density: f64, rng: &mut impl Rng) -> Vec<IndexSet> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    (0..n)
        .map(|i| {
            let members = (0..n).filter(|&j| j == perm[i] || rng.random_bool(density));
            IndexSet::new(n, members).expect("indices in range")
        })
        .collect()
}

/// Random distinct-eigenvalue system: eigenvalues `1..=n` jittered by less
/// than 0.1, supports from [`random_family`].
pub fn random_system(n: usize, density: f64, seed: u64) -> Result<SystemMatrix> {
    random_instance(n, density, seed).map(|(a, _)| a)
}

/// [`random_system`] together with the support family it was built from.
pub fn random_instance(n: usize, density: f64, seed: u64) -> Result<(SystemMatrix, GeneratorSpec)> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::InvalidInput("density must lie in (0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family = random_family(n, density, &mut rng);
    let eigenvalues = (1..=n)
        .map(|v| v as f64 + rng.random_range(-0.09..0.09))
        .collect();
    let spec = GeneratorSpec {
        n,
        family,
        eigenvalues: Some(eigenvalues),
        seed: rng.random(),
        max_retries: DEFAULT_RETRIES,
    };
    let a = system_from_family(&spec)?
        .with_provenance(format!("random n={n} density={density} seed={seed}"));
    Ok((a, spec))
}
