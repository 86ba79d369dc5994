//! Deterministic construction of a controllable input vector inside a
//! prescribed support.
//!
//! Starting from any real `b` with `Supp(b) = S`, let `Z_b` be the set of
//! eigenvector indices with `xᵢᴴb = 0`. One repair step picks `i ∈ Z_b` and a
//! coordinate `k ∈ S ∩ Supp(xᵢ)` and moves `b_k` by a real `δ`. Only the
//! inner products of eigenvectors whose support contains `k` change:
//!
//! ```text
//! x_mᴴ(b + δ e_k) = γ_m + conj(x_{m,k}) δ,    γ_m = x_mᴴ b
//! ```
//!
//! so `δ` must avoid `0` and every real `β_m = −γ_m / conj(x_{m,k})`. Then
//! `xᵢᴴb` becomes nonzero and no nonzero product is destroyed, hence `|Z_b|`
//! drops by at least one per step and at most `n` steps are needed.
//!
//! In floating point "avoid" becomes "keep a margin": `δ` is taken from a
//! fixed candidate grid, scored by the smallest resulting `|x_mᴴb̂|` over the
//! affected eigenvectors (relative to `max(1, ‖b̂‖)`, the same scale as the
//! PBH threshold), and the first grid point scoring at least half of the best
//! one is used.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numlin::{eig_left, EigenStructure, SystemMatrix, C64};
use crate::pbh::pbh_tolerance;
use crate::sparsity::{hits_all, support_family, IndexSet, SupportFamily};

/// A grid point is accepted once its margin reaches this fraction of the best.
const SATISFICE_FRACTION: f64 = 0.5;
/// `β` counts as real when `|Im β| ≤ REAL_BETA_TOL · (1 + |β|)`.
const REAL_BETA_TOL: f64 = 1e-9;

const UNBOUNDED_GRID: [f64; 13] = [
    1.0, 2.0, 3.0, 4.0, 0.5, 0.25, 0.75, 1.5, 2.5, 0.125, 0.375, 0.625, 0.875,
];

/// Multiples of the per-element bound `h`.
const BOUNDED_GRID: [f64; 14] = [
    0.25, 0.5, 0.75, 0.125, 0.375, 0.625, 0.875, 1.125, 1.25, 1.375, 1.5, 1.625, 1.75, 1.875,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConstraintSpec {
    Unconstrained,
    /// Every entry strictly inside `(−h, h)`.
    ElementBound(f64),
    /// `‖b‖₂ ≤ r`.
    FrobeniusBound(f64),
}

impl ConstraintSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ConstraintSpec::Unconstrained => Ok(()),
            ConstraintSpec::ElementBound(h) if h.is_finite() && h > 0.0 => Ok(()),
            ConstraintSpec::FrobeniusBound(r) if r.is_finite() && r > 0.0 => Ok(()),
            other => Err(Error::InvalidInput(format!(
                "constraint bound must be positive and finite: {other:?}"
            ))),
        }
    }

    /// Whether `b` satisfies the constraint.
    pub fn admits(&self, b: &[f64]) -> bool {
        match *self {
            ConstraintSpec::Unconstrained => true,
            ConstraintSpec::ElementBound(h) => b.iter().all(|v| v.abs() < h),
            ConstraintSpec::FrobeniusBound(r) => norm(b) <= r,
        }
    }
}

/// Current vector with its eigen inner products and zero set.
#[derive(Clone, Debug, PartialEq)]
pub struct RepairState {
    b: Vec<f64>,
    inner: Vec<C64>,
    zero_set: IndexSet,
    tau_pbh: f64,
}

impl RepairState {
    pub fn new(e: &EigenStructure, b: Vec<f64>) -> Result<Self> {
        if b.len() != e.n() {
            return Err(Error::Dimension(format!(
                "vector has length {}, state dimension is {}",
                b.len(),
                e.n()
            )));
        }
        let inner: Vec<C64> = (0..e.n()).map(|i| e.inner_real(i, &b)).collect();
        let tau_pbh = pbh_tolerance(norm(&b));
        let zero_set = IndexSet::new(
            e.n(),
            inner
                .iter()
                .enumerate()
                .filter(|(_, z)| z.norm() <= tau_pbh)
                .map(|(i, _)| i),
        )?;
        Ok(Self {
            b,
            inner,
            zero_set,
            tau_pbh,
        })
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn into_vector(self) -> Vec<f64> {
        self.b
    }

    pub fn inner_products(&self) -> &[C64] {
        &self.inner
    }

    pub fn zero_set(&self) -> &IndexSet {
        &self.zero_set
    }

    pub fn tau_pbh(&self) -> f64 {
        self.tau_pbh
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepairStep {
    /// Eigenvector index that was orthogonal to `b`.
    pub i: usize,
    /// Coordinate that was moved.
    pub k: usize,
    /// `(m, x_mᴴb)` for the other eigenvectors whose support contains `k`.
    pub gammas: Vec<(usize, C64)>,
    /// `0` followed by the real `β_m`.
    pub exclusions: Vec<f64>,
    pub delta: f64,
    pub zb_before: usize,
    pub zb_after: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepairTrace {
    pub initial: Vec<f64>,
    pub initial_zero_set: IndexSet,
    pub steps: Vec<RepairStep>,
    /// For each eigenvector, the smallest index of `S ∩ Supp(xᵢ)`.
    pub feasibility_witness: Vec<usize>,
}

impl RepairTrace {
    pub fn iterations(&self) -> usize {
        self.steps.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// Smallest `i` with `Supp(xᵢ) ∩ S = ∅`.
    pub witness: Option<usize>,
    /// Per eigenvector, the smallest member of `Supp(xᵢ) ∩ S` if any.
    pub hits: Vec<Option<usize>>,
}

pub fn feasible_support(
    e: &EigenStructure,
    f: &SupportFamily,
    s_v: &IndexSet,
) -> Result<FeasibilityReport> {
    e.require_distinct()?;
    if s_v.n() != f.n() {
        return Err(Error::Dimension(format!(
            "support set lives in 1..={}, state dimension is {}",
            s_v.n(),
            f.n()
        )));
    }
    let report = hits_all(f, s_v);
    let hits = f
        .supports()
        .iter()
        .map(|sup| sup.intersection(s_v).members().first().copied())
        .collect();
    Ok(FeasibilityReport {
        feasible: report.hits,
        witness: report.witness,
        hits,
    })
}

fn exclusion_radius(exclusions: &[f64]) -> f64 {
    1e-6 * (1.0 + exclusions.iter().fold(0.0, |m: f64, v| m.max(v.abs())))
}

/// Picks the step `δ` for coordinate `k`.
///
/// `bound` is the strict limit on `|b_k + δ|` (none when unconstrained).
/// Admissible candidates keep a distance above `1e−6·(1 + max|exclusion|)`
/// from every exclusion, from `0`, and from `−b_k` (so the coordinate stays
/// in the support). `margin` scores a candidate; the first admissible grid
/// point within [`SATISFICE_FRACTION`] of the best score is returned.
pub fn choose_delta(
    exclusions: &[f64],
    bound: Option<f64>,
    current_b_k: f64,
    margin: impl Fn(f64) -> f64,
) -> Result<f64> {
    let eps = exclusion_radius(exclusions);
    let (grid, unit): (&[f64], f64) = match bound {
        None => (&UNBOUNDED_GRID, 1.0),
        Some(h) => (&BOUNDED_GRID, h),
    };
    let candidates: Vec<(f64, f64)> = grid
        .iter()
        .flat_map(|&g| [g * unit, -g * unit])
        .filter(|&d| {
            let target = current_b_k + d;
            bound.is_none_or(|h| target.abs() < h)
                && d.abs() > eps
                && target.abs() > eps
                && exclusions.iter().all(|&x| (d - x).abs() > eps)
        })
        .map(|d| (d, margin(d)))
        .collect();
    let best = candidates
        .iter()
        .map(|&(_, m)| m)
        .fold(f64::NEG_INFINITY, f64::max);
    candidates
        .iter()
        .find(|&&(_, m)| m >= SATISFICE_FRACTION * best)
        .map(|&(d, _)| d)
        .ok_or(Error::NoCandidate)
}

/// One repair step on the smallest index of `Z_b`, moving the smallest
/// coordinate of `S ∩ Supp(xᵢ)`.
pub fn repair_step(
    e: &EigenStructure,
    f: &SupportFamily,
    s_v: &IndexSet,
    state: &RepairState,
    constraint: &ConstraintSpec,
) -> Result<(RepairState, RepairStep)> {
    let i = *state
        .zero_set
        .members()
        .first()
        .ok_or_else(|| Error::InvalidInput("zero set is empty; nothing to repair".into()))?;
    let k = *f
        .support(i)
        .intersection(s_v)
        .members()
        .first()
        .ok_or(Error::Infeasible { witness: i })?;

    let b = &state.b;
    let b_k = b[k];
    // Eigenvectors touched by moving b_k, with their coefficient conj(x_{m,k}).
    let affected: Vec<(usize, C64)> = (0..e.n())
        .filter(|&m| f.support(m).contains(k))
        .map(|m| (m, e.eigenvector(m)[k].conj()))
        .collect();

    let mut gammas = Vec::new();
    let mut exclusions = vec![0.0];
    for &(m, coef) in &affected {
        if m == i {
            continue;
        }
        let gamma = state.inner[m];
        gammas.push((m, gamma));
        let beta = -gamma / coef;
        if beta.im.abs() <= REAL_BETA_TOL * (1.0 + beta.norm()) {
            exclusions.push(beta.re);
        }
    }

    let sq_rest = b.iter().map(|v| v * v).sum::<f64>() - b_k * b_k;
    let bound = match *constraint {
        ConstraintSpec::Unconstrained => None,
        ConstraintSpec::ElementBound(h) => Some(h),
        ConstraintSpec::FrobeniusBound(r) => Some((r * r - sq_rest).max(0.0).sqrt()),
    };
    let margin = |d: f64| {
        let target = b_k + d;
        let scale = (sq_rest + target * target).sqrt().max(1.0);
        affected
            .iter()
            .map(|&(m, coef)| (state.inner[m] + coef * d).norm())
            .fold(f64::INFINITY, f64::min)
            / scale
    };
    let delta = choose_delta(&exclusions, bound, b_k, margin)?;

    let mut next_b = b.clone();
    next_b[k] += delta;
    let next = RepairState::new(e, next_b)?;
    let before = state.zero_set.len();
    let after = next.zero_set.len();
    if after >= before {
        return Err(Error::NoProgress {
            before,
            after,
            tau_pbh: next.tau_pbh,
        });
    }
    let step = RepairStep {
        i,
        k,
        gammas,
        exclusions,
        delta,
        zb_before: before,
        zb_after: after,
    };
    Ok((next, step))
}

/// Initial vector on `S`: ones for seed 0, entries in `(0, 1]` otherwise,
/// then scaled to the constraint (`h/2` per entry, or total norm `r/2`).
pub fn initial_vector(s_v: &IndexSet, constraint: &ConstraintSpec, seed: u64) -> Vec<f64> {
    let n = s_v.n();
    let mut b = vec![0.0; n];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &j in s_v.members() {
        b[j] = if seed == 0 {
            1.0
        } else {
            1.0 - rng.random::<f64>()
        };
    }
    match *constraint {
        ConstraintSpec::Unconstrained => {}
        ConstraintSpec::ElementBound(h) => b.iter_mut().for_each(|v| *v *= h / 2.0),
        ConstraintSpec::FrobeniusBound(r) => {
            let nb = norm(&b);
            if nb > 0.0 {
                b.iter_mut().for_each(|v| *v *= r / (2.0 * nb));
            }
        }
    }
    b
}

pub fn construct_vector(
    a: &SystemMatrix,
    s_v: &IndexSet,
    constraint: &ConstraintSpec,
    seed: u64,
) -> Result<(Vec<f64>, RepairTrace)> {
    let e = eig_left(a)?;
    let f = support_family(&e)?;
    construct_with(&e, &f, s_v, constraint, seed)
}

/// [`construct_vector`] on a precomputed eigenstructure.
pub fn construct_with(
    e: &EigenStructure,
    f: &SupportFamily,
    s_v: &IndexSet,
    constraint: &ConstraintSpec,
    seed: u64,
) -> Result<(Vec<f64>, RepairTrace)> {
    constraint.validate()?;
    let report = feasible_support(e, f, s_v)?;
    if let Some(witness) = report.witness {
        return Err(Error::Infeasible { witness });
    }
    let initial = initial_vector(s_v, constraint, seed);
    let mut state = RepairState::new(e, initial.clone())?;
    let mut trace = RepairTrace {
        initial,
        initial_zero_set: state.zero_set.clone(),
        steps: Vec::new(),
        feasibility_witness: report
            .hits
            .into_iter()
            .map(|h| h.expect("feasible"))
            .collect(),
    };
    while !state.zero_set.is_empty() {
        if trace.steps.len() >= e.n() {
            return Err(Error::NoProgress {
                before: state.zero_set.len(),
                after: state.zero_set.len(),
                tau_pbh: state.tau_pbh,
            });
        }
        let (next, step) = repair_step(e, f, s_v, &state, constraint)?;
        trace.steps.push(step);
        state = next;
    }
    Ok((state.into_vector(), trace))
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
