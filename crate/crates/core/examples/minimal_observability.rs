//! Sensor placement through duality: the sparsest observable output row.
//!
//! `cargo run --example minimal_observability`

use sparsectl::construct::ConstraintSpec;
use sparsectl::{observable, solve_min_observability, SystemMatrix};

fn main() -> sparsectl::Result<()> {
    // Chain x1 <- x2 <- x3: only the first state needs to be measured.
    let a = SystemMatrix::from_row_slice(3, &[1.0, 1.0, 0.0, 0.0, 2.0, 1.0, 0.0, 0.0, 3.0])?;
    let sol = solve_min_observability(&a, &ConstraintSpec::Unconstrained)?;
    let c = sol.output_matrix().expect("dual solution");
    println!("k* = {}, sensors at {}", sol.k_star, sol.support);
    println!("C = {:?}", c.iter().collect::<Vec<_>>());
    println!("observable: {}", observable(&a, &c)?.controllable);
    Ok(())
}
