//! Sparsest controllable inputs in all three formulations.
//!
//! `cargo run --example minimal_controllability`

use sparsectl::construct::ConstraintSpec;
use sparsectl::gensys::random_system;
use sparsectl::{solve_mcp_diagonal, solve_mcp_full, solve_mcp_vector, SystemMatrix};

fn main() -> sparsectl::Result<()> {
    let free = ConstraintSpec::Unconstrained;
    let a = SystemMatrix::from_row_slice(2, &[1.0, 1.0, 0.0, 2.0])?;
    let s = solve_mcp_vector(&a, &free)?;
    println!(
        "triangular: k* = {}, support {}, b = {:?}",
        s.k_star,
        s.support,
        s.realization.column(0)
    );

    let a = SystemMatrix::diagonal(&[1.0, 2.0, 3.0])?;
    println!("diagonal: k* = {}", solve_mcp_vector(&a, &free)?.k_star);

    let a = random_system(7, 0.3, 42)?;
    let v = solve_mcp_vector(&a, &free)?;
    let d = solve_mcp_diagonal(&a, &free)?;
    let f = solve_mcp_full(&a, 3, &free)?;
    println!(
        "random n = 7: k* vector {}, diagonal {}, full(p=3) {}; support {}",
        v.k_star, d.k_star, f.k_star, v.support
    );
    println!(
        "certified: {}",
        v.certificates.all_pass() && d.certificates.all_pass()
    );
    Ok(())
}
