//! The eigenvector test and the rank test side by side.
//!
//! `cargo run --example pbh_vs_kalman`

use sparsectl::pbh::controllability_matrix;
use sparsectl::{eig_left, kalman_controllable, pbh_controllable, SparseInput, SystemMatrix};

fn main() -> sparsectl::Result<()> {
    let a = SystemMatrix::from_row_slice(2, &[0.0, 1.0, 1.0, 0.0])?;
    let e = eig_left(&a)?;

    for b in [[1.0, 1.0], [1.0, -1.0], [2.0, 1.0], [0.0, 1.0]] {
        let input = SparseInput::vector(&b)?;
        let pbh = pbh_controllable(&e, &input)?;
        let kalman = kalman_controllable(&a, &input)?;
        print!(
            "b = {b:?}: pbh {} (tau {:.1e}), kalman rank {}",
            pbh.controllable,
            pbh.tolerance,
            kalman.rank.unwrap_or(0)
        );
        if let Some(w) = &pbh.witness {
            print!(
                ", orthogonal to eigenvector {} (lambda {:+.1})",
                w.index + 1,
                w.eigenvalue.re
            );
        }
        println!();
    }

    let input = SparseInput::vector(&[2.0, 1.0])?;
    println!(
        "scaled Kalman matrix:\n{}",
        controllability_matrix(&a, &input)
    );
    Ok(())
}
