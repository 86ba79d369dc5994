//! Canonical left eigenvectors and their supports.
//!
//! `cargo run --example eig_supports`

use sparsectl::{eig_left, support_family, SystemMatrix};

fn main() -> sparsectl::Result<()> {
    // Upper triangular: eigenvalues 1 and 2 on the diagonal.
    let a = SystemMatrix::from_row_slice(2, &[1.0, 1.0, 0.0, 2.0])?;
    show("triangular", &a)?;

    // A rotation block has a complex conjugate pair.
    let a = SystemMatrix::from_row_slice(3, &[0.0, -2.0, 0.0, 2.0, 0.0, 0.0, 1.0, 0.0, 3.0])?;
    show("rotation + real mode", &a)?;
    Ok(())
}

fn show(label: &str, a: &SystemMatrix) -> sparsectl::Result<()> {
    let e = eig_left(a)?;
    let f = support_family(&e)?;
    println!(
        "{label}: distinct = {}, min gap = {:.3e}",
        e.distinct(),
        e.min_gap()
    );
    for i in 0..e.n() {
        let lam = e.eigenvalues()[i];
        let x: Vec<String> = e
            .eigenvector(i)
            .iter()
            .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
            .collect();
        println!(
            "  lambda = {:+.4}{:+.4}i  x = [{}]  supp = {}",
            lam.re,
            lam.im,
            x.join(", "),
            f.support(i)
        );
    }
    Ok(())
}
