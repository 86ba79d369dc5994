//! Sparsity-preserving conversions between the single-vector, diagonal and
//! full input formulations.
//!
//! Going up (vector to diagonal or full) is a pure reshaping. Going down
//! collects the coordinates that witness controllability of the richer input
//! and realizes a single vector on them with [`construct_with`], so the
//! output never has more nonzeros than the input.

use nalgebra::DMatrix;

use crate::construct::{construct_with, ConstraintSpec, RepairTrace};
use crate::error::{Error, Result};
use crate::numlin::EigenStructure;
use crate::pbh::{pbh_controllable, pbh_tolerance, InputKind, SparseInput};
use crate::sparsity::{support_real, IndexSet, SupportFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    VectorToDiagonal,
    DiagonalToVector,
    VectorToFull,
    FullToVector,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::VectorToDiagonal => "V->D",
            Direction::DiagonalToVector => "D->V",
            Direction::VectorToFull => "V->F",
            Direction::FullToVector => "F->V",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConversionTrace {
    pub direction: Direction,
    /// Diagonal to vector: `Bᵢ = Supp(xᵢ) ∩ Supp(diag(B_d))` per eigenvector.
    pub sets_b_i: Vec<IndexSet>,
    /// Coordinates the output vector is built on (empty for upward conversions).
    pub set_b: IndexSet,
    /// Full to vector: columns `j` with `xᵢᴴ b_j ≠ 0`, per eigenvector.
    pub sets_j_i: Vec<IndexSet>,
    pub nnz_in: usize,
    pub nnz_out: usize,
    pub repair: Option<RepairTrace>,
}

fn expect_kind(b: &SparseInput, kind: InputKind) -> Result<()> {
    if b.kind() == kind {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "expected a {} input, got {}",
            kind.name(),
            b.kind().name()
        )))
    }
}

pub fn vector_to_diagonal(b_v: &SparseInput) -> Result<(SparseInput, ConversionTrace)> {
    expect_kind(b_v, InputKind::Vector)?;
    let out = SparseInput::diagonal(&b_v.column(0))?;
    let trace = ConversionTrace {
        direction: Direction::VectorToDiagonal,
        sets_b_i: Vec::new(),
        set_b: IndexSet::empty(b_v.n()),
        sets_j_i: Vec::new(),
        nnz_in: b_v.nnz(),
        nnz_out: out.nnz(),
        repair: None,
    };
    Ok((out, trace))
}

/// `B_f = [0_{n×(p−1)}, b]`.
pub fn vector_to_full(b_v: &SparseInput, p: usize) -> Result<(SparseInput, ConversionTrace)> {
    expect_kind(b_v, InputKind::Vector)?;
    if p == 0 {
        return Err(Error::InvalidInput("p must be at least 1".into()));
    }
    let n = b_v.n();
    let mut m = DMatrix::zeros(n, p);
    m.column_mut(p - 1).copy_from(&b_v.entries().column(0));
    let out = if p == 1 {
        b_v.clone()
    } else {
        SparseInput::full(m)?
    };
    let trace = ConversionTrace {
        direction: Direction::VectorToFull,
        sets_b_i: Vec::new(),
        set_b: IndexSet::empty(n),
        sets_j_i: Vec::new(),
        nnz_in: b_v.nnz(),
        nnz_out: out.nnz(),
        repair: None,
    };
    Ok((out, trace))
}

fn require_controllable(e: &EigenStructure, b: &SparseInput) -> Result<()> {
    let v = pbh_controllable(e, b)?;
    match v.witness {
        Some(w) => Err(Error::NotControllable { witness: w.index }),
        None => Ok(()),
    }
}

pub fn diagonal_to_vector(
    e: &EigenStructure,
    f: &SupportFamily,
    b_d: &SparseInput,
    constraint: &ConstraintSpec,
) -> Result<(SparseInput, ConversionTrace)> {
    expect_kind(b_d, InputKind::Diagonal)?;
    require_controllable(e, b_d)?;
    let diag_support = support_real(&b_d.diagonal_values(), e.tau_supp());
    let sets_b_i: Vec<IndexSet> = f
        .supports()
        .iter()
        .map(|s| s.intersection(&diag_support))
        .collect();
    let set_b = sets_b_i
        .iter()
        .fold(IndexSet::empty(e.n()), |acc, s| acc.union(s));
    let (b, repair) = construct_with(e, f, &set_b, constraint, 0)?;
    let out = SparseInput::vector(&b)?;
    let trace = ConversionTrace {
        direction: Direction::DiagonalToVector,
        sets_b_i,
        set_b,
        sets_j_i: Vec::new(),
        nnz_in: b_d.nnz(),
        nnz_out: out.nnz(),
        repair: Some(repair),
    };
    Ok((out, trace))
}

pub fn full_to_vector(
    e: &EigenStructure,
    f: &SupportFamily,
    b_f: &SparseInput,
    constraint: &ConstraintSpec,
) -> Result<(SparseInput, ConversionTrace)> {
    require_controllable(e, b_f)?;
    let n = e.n();
    let p = b_f.p();
    let tau = pbh_tolerance(b_f.frobenius_norm());
    let columns: Vec<Vec<f64>> = (0..p).map(|j| b_f.column(j)).collect();
    let sets_j_i = (0..n)
        .map(|i| {
            IndexSet::new(
                p,
                (0..p).filter(|&j| e.inner_real(i, &columns[j]).norm() > tau),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut set_b = IndexSet::empty(n);
    for js in &sets_j_i {
        for &j in js.members() {
            set_b = set_b.union(&support_real(&columns[j], e.tau_supp()));
        }
    }
    let (b, repair) = construct_with(e, f, &set_b, constraint, 0)?;
    let out = SparseInput::vector(&b)?;
    let trace = ConversionTrace {
        direction: Direction::FullToVector,
        sets_b_i: Vec::new(),
        set_b,
        sets_j_i,
        nnz_in: b_f.nnz(),
        nnz_out: out.nnz(),
        repair: Some(repair),
    };
    Ok((out, trace))
}
