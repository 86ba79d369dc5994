//! Moving between vector, diagonal and full inputs without adding nonzeros.
//!
//! `cargo run --example convert_formulations`

use nalgebra::DMatrix;
use sparsectl::construct::ConstraintSpec;
use sparsectl::equiv::{diagonal_to_vector, full_to_vector, vector_to_diagonal, vector_to_full};
use sparsectl::{eig_left, kalman_controllable, support_family, SparseInput, SystemMatrix};

fn main() -> sparsectl::Result<()> {
    let a = SystemMatrix::from_row_slice(3, &[0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0])?;
    let e = eig_left(&a)?;
    let f = support_family(&e)?;
    let free = ConstraintSpec::Unconstrained;

    let b_d = SparseInput::diagonal(&[1.0, 1.0, 0.0])?;
    let (b_v, trace) = diagonal_to_vector(&e, &f, &b_d, &free)?;
    report(&a, "D->V", &b_v, trace.nnz_in, trace.nnz_out)?;

    let b_f = SparseInput::full(DMatrix::from_row_slice(
        3,
        2,
        &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0],
    ))?;
    let (b_v2, trace) = full_to_vector(&e, &f, &b_f, &free)?;
    report(&a, "F->V", &b_v2, trace.nnz_in, trace.nnz_out)?;

    let (d, trace) = vector_to_diagonal(&b_v)?;
    report(&a, "V->D", &d, trace.nnz_in, trace.nnz_out)?;
    let (full, trace) = vector_to_full(&b_v, 3)?;
    report(&a, "V->F", &full, trace.nnz_in, trace.nnz_out)?;
    Ok(())
}

fn report(
    a: &SystemMatrix,
    label: &str,
    b: &SparseInput,
    nnz_in: usize,
    nnz_out: usize,
) -> sparsectl::Result<()> {
    let v = kalman_controllable(a, b)?;
    println!(
        "{label}: nnz {nnz_in} -> {nnz_out}, controllable {}, output rows {:?}",
        v.controllable,
        b.rows()
    );
    Ok(())
}
