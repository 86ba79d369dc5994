//! Driving the command-line front end from code and reading its report.
//!
//! `cargo run --example cli_report`

use std::fs;

use sparsectl::cli::{run, Report};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("sparsectl-cli-report");
    fs::create_dir_all(&dir)?;
    let a = dir.join("A.json");
    fs::write(&a, r#"{"n": 2, "rows": [[1, 1], [0, 2]]}"#)?;

    let (code, report) = run([
        "sparsectl",
        "solve",
        a.to_str().unwrap(),
        "--variant",
        "vector",
    ]);
    println!("exit {code}, k* = {}", report.result["k_star"]);
    println!("tolerances: {:?}", report.tolerances);

    let text = report.to_json();
    let back: Report = serde_json::from_str(&text)?;
    println!("round trip exact: {}", back == report);
    Ok(())
}
