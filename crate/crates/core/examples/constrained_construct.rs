//! Construction under element-wise and norm bounds.
//!
//! `cargo run --example constrained_construct`

use sparsectl::construct::ConstraintSpec;
use sparsectl::gensys::random_system;
use sparsectl::{construct_vector, kalman_controllable, IndexSet, SparseInput};

fn main() -> sparsectl::Result<()> {
    let a = random_system(6, 0.4, 5)?;
    let s = IndexSet::full(6);
    for c in [
        ConstraintSpec::Unconstrained,
        ConstraintSpec::ElementBound(1.0),
        ConstraintSpec::ElementBound(1e-3),
        ConstraintSpec::FrobeniusBound(1.0),
    ] {
        let (b, trace) = construct_vector(&a, &s, &c, 17)?;
        let input = SparseInput::vector(&b)?;
        println!(
            "{c:?}: max|b| = {:.4}, |b| = {:.4}, steps = {}, rank = {}",
            input.max_abs(),
            input.frobenius_norm(),
            trace.iterations(),
            kalman_controllable(&a, &input)?.rank.unwrap_or(0)
        );
    }
    Ok(())
}
