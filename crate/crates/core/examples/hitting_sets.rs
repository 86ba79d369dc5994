//! Exact and greedy minimum hitting sets of a support family.
//!
//! `cargo run --example hitting_sets`

use sparsectl::sparsity::{hits_all, min_hitting_set_exact, min_hitting_set_greedy};
use sparsectl::SupportFamily;

fn main() -> sparsectl::Result<()> {
    let f = SupportFamily::from_one_based(3, &[&[1, 2], &[2, 3], &[3]])?;
    println!("exact {}", min_hitting_set_exact(&f)?);

    // Frequency-greedy takes the popular index 3 first and pays for it.
    let f = SupportFamily::from_one_based(
        5,
        &[
            &[1, 2],
            &[1, 3, 5],
            &[1, 2, 3],
            &[2, 3, 5],
            &[5],
            &[3, 4, 5],
        ],
    )?;
    let exact = min_hitting_set_exact(&f)?;
    let greedy = min_hitting_set_greedy(&f);
    println!(
        "exact {exact} ({}), greedy {greedy} ({})",
        exact.len(),
        greedy.len()
    );
    println!("greedy hits all: {}", hits_all(&f, &greedy).hits);
    Ok(())
}
