//! Which supports admit a controllable input vector at all.
//!
//! `cargo run --example feasibility`

use sparsectl::construct::feasible_support;
use sparsectl::{eig_left, support_family, IndexSet, SystemMatrix};

fn main() -> sparsectl::Result<()> {
    let a = SystemMatrix::from_row_slice(3, &[1.0, 1.0, 0.0, 0.0, 2.0, 1.0, 0.0, 0.0, 3.0])?;
    let e = eig_left(&a)?;
    let f = support_family(&e)?;
    for (i, s) in f.supports().iter().enumerate() {
        println!("Supp(x{}) = {s}", i + 1);
    }

    for candidate in [&[1, 2][..], &[3], &[2, 3], &[1]] {
        let s = IndexSet::from_one_based(3, candidate)?;
        let r = feasible_support(&e, &f, &s)?;
        match r.witness {
            None => println!("{s}: feasible"),
            Some(w) => println!("{s}: infeasible, misses Supp(x{})", w + 1),
        }
    }
    Ok(())
}
