//! Greedy rank-driven input selection compared with the exact optimum.
//!
//! `cargo run --example greedy_rank`

use sparsectl::construct::ConstraintSpec;
use sparsectl::gensys::random_system;
use sparsectl::{greedy_rank, solve_mcp_vector, Error};

fn main() -> sparsectl::Result<()> {
    for seed in 0..5 {
        let a = random_system(8, 0.35, seed)?;
        let exact = solve_mcp_vector(&a, &ConstraintSpec::Unconstrained)?;
        let greedy = greedy_rank(&a, a.n())?;
        println!(
            "seed {seed}: exact k* = {}, greedy k = {} (support {})",
            exact.k_star, greedy.k_star, greedy.support
        );
    }

    // A budget below the optimum leaves a partial, uncontrollable answer.
    let a = sparsectl::SystemMatrix::diagonal(&[1.0, 2.0, 3.0])?;
    match greedy_rank(&a, 2) {
        Err(Error::BudgetExhausted(partial)) => println!(
            "budget 2 on diag(1,2,3): rank {} only",
            partial.certificates.kalman.rank.unwrap_or(0)
        ),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
