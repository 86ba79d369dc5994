//! Step-by-step repair of a vector that starts orthogonal to an eigenvector.
//!
//! `cargo run --example construct_repair`

use sparsectl::construct::{construct_with, ConstraintSpec, RepairState};
use sparsectl::{eig_left, support_family, IndexSet, SystemMatrix};

fn main() -> sparsectl::Result<()> {
    let a = SystemMatrix::from_row_slice(2, &[0.0, 1.0, 1.0, 0.0])?;
    let e = eig_left(&a)?;
    let f = support_family(&e)?;

    let start = RepairState::new(&e, vec![1.0, 1.0])?;
    println!("b = (1, 1) has zero set {}", start.zero_set());

    let (b, trace) = construct_with(
        &e,
        &f,
        &IndexSet::full(2),
        &ConstraintSpec::Unconstrained,
        0,
    )?;
    for s in &trace.steps {
        println!(
            "step: eigenvector {}, coordinate {}, exclusions {:?}, delta {}, |Z| {} -> {}",
            s.i + 1,
            s.k + 1,
            s.exclusions,
            s.delta,
            s.zb_before,
            s.zb_after
        );
    }
    println!("result b = {b:?} after {} step(s)", trace.iterations());

    // A path graph needs a repair from most starting points.
    let a = SystemMatrix::from_row_slice(3, &[0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0])?;
    let e = eig_left(&a)?;
    let f = support_family(&e)?;
    let (b, trace) = construct_with(
        &e,
        &f,
        &IndexSet::full(3),
        &ConstraintSpec::Unconstrained,
        0,
    )?;
    println!("path graph: b = {b:?}, {} step(s)", trace.iterations());
    Ok(())
}
