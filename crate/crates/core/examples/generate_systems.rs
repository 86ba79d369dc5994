//! Systems with prescribed left-eigenvector supports.
//!
//! `cargo run --example generate_systems`

use sparsectl::gensys::{random_instance, system_from_family, GeneratorSpec};
use sparsectl::{eig_left, support_family, IndexSet};

fn main() -> sparsectl::Result<()> {
    let family = [&[1, 2][..], &[2, 3], &[3]]
        .iter()
        .map(|s| IndexSet::from_one_based(3, s))
        .collect::<sparsectl::Result<Vec<_>>>()?;
    let spec = GeneratorSpec::new(family)
        .with_seed(1)
        .with_eigenvalues(vec![-1.0, 0.5, 2.0]);
    let a = system_from_family(&spec)?;
    println!("A =\n{}", a.matrix().map(|v| v + 0.0));
    let f = support_family(&eig_left(&a)?)?;
    let got: Vec<String> = f.supports().iter().map(ToString::to_string).collect();
    println!("recovered supports: {}", got.join(" "));

    let (a, spec) = random_instance(6, 0.3, 9)?;
    let targets: Vec<String> = spec.family.iter().map(ToString::to_string).collect();
    println!("random n = 6 targets: {}", targets.join(" "));
    println!("{}", a.provenance().unwrap_or_default());
    Ok(())
}
