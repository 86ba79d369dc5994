use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sparsectl::cli::{run, Report, EXIT_INPUT, EXIT_NEGATIVE, EXIT_NUMERICAL, EXIT_OK};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn sparsectl(args: &[&str]) -> (i32, Report) {
    run(std::iter::once("sparsectl").chain(args.iter().copied()))
}

#[test]
fn solve_vector_on_triangular_example() {
    let (code, report) = sparsectl(&["solve", &fixture("triangular.json"), "--variant", "vector"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report.command, "solve");
    assert_eq!(report.result["k_star"], 1);
    assert_eq!(report.result["support"], serde_json::json!([2]));
    assert_eq!(report.result["nnz"], 1);
    assert!(report.warnings.is_empty());
}

#[test]
fn feasible_reports_witness_and_exit_two() {
    let (code, report) = sparsectl(&["feasible", &fixture("diag3.json"), "--support", "1,2"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(report.result["feasible"], false);
    assert_eq!(report.result["witness"], 3);

    let (code, report) = sparsectl(&["feasible", &fixture("diag3.json"), "--support", "1,2,3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report.result["witness"], Value::Null);
}

#[test]
fn check_disagreement_is_numerical_failure() {
    let a = fixture("diag12.json");
    let b = fixture("b_borderline.csv");
    let (code, report) = sparsectl(&["check", &a, &b, "--both"]);
    assert_eq!(code, EXIT_NUMERICAL);
    assert_eq!(report.warnings.len(), 1);
    assert!(report.warnings[0].contains("disagree"));

    let (code, report) = sparsectl(&["check", &a, &b, "--kalman"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report.result["verdicts"].as_array().unwrap().len(), 1);
    let (code, _) = sparsectl(&["check", &a, &b, "--pbh"]);
    assert_eq!(code, EXIT_NEGATIVE);
}

#[test]
fn check_uncontrollable_pair() {
    let (code, report) = sparsectl(&["check", &fixture("swap.csv"), &fixture("b_ones.csv")]);
    assert_eq!(code, EXIT_NEGATIVE);
    let pbh = &report.result["verdicts"][0];
    assert_eq!(pbh["method"], "pbh");
    assert!(pbh["witness"]["index"].is_u64());
    assert!(report.tolerances.tau_pbh.unwrap() > 0.0);
    assert!(report.tolerances.gap_tol.is_some());
}

#[test]
fn oracle_flags_are_exclusive() {
    let a = fixture("swap.csv");
    let b = fixture("b_ones.csv");
    let (code, report) = sparsectl(&["check", &a, &b, "--pbh", "--kalman"]);
    assert_eq!(code, EXIT_INPUT);
    assert_eq!(report.command, "usage");
}

#[test]
fn construct_swap_trace() {
    let (code, report) = sparsectl(&["construct", &fixture("swap.csv"), "--support", "1,2"]);
    assert_eq!(code, EXIT_OK);
    let r = &report.result;
    assert_eq!(r["b"], serde_json::json!([2.0, 1.0]));
    assert_eq!(r["trace"]["iterations"], 1);
    assert_eq!(r["trace"]["steps"][0]["delta"], 1.0);
    assert_eq!(r["trace"]["steps"][0]["k"], 1);
}

#[test]
fn construct_with_bounds() {
    let a = fixture("path3.json");
    let (code, report) = sparsectl(&[
        "construct",
        &a,
        "--support",
        "1,2,3",
        "--element-bound",
        "0.5",
        "--seed",
        "3",
    ]);
    assert_eq!(code, EXIT_OK);
    let b: Vec<f64> = serde_json::from_value(report.result["b"].clone()).unwrap();
    assert!(b.iter().all(|v| v.abs() < 0.5));

    let (code, report) = sparsectl(&[
        "construct",
        &a,
        "--support",
        "1,2,3",
        "--frobenius-bound",
        "0.1",
    ]);
    assert_eq!(code, EXIT_OK);
    let b: Vec<f64> = serde_json::from_value(report.result["b"].clone()).unwrap();
    assert!(b.iter().map(|v| v * v).sum::<f64>().sqrt() <= 0.1);

    let (code, _) = sparsectl(&[
        "construct",
        &a,
        "--support",
        "1",
        "--element-bound",
        "1",
        "--frobenius-bound",
        "1",
    ]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _) = sparsectl(&["construct", &a, "--support", "1,2", "--element-bound", "-1"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn construct_on_infeasible_support() {
    let (code, report) = sparsectl(&["construct", &fixture("diag3.json"), "--support", "2,3"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(report.result["witness"], 1);
    assert_eq!(report.warnings.len(), 1);
}

#[test]
fn solve_variants_agree() {
    let a = fixture("path3.json");
    let mut ks = Vec::new();
    for args in [
        vec!["solve", &a, "--variant", "vector"],
        vec!["solve", &a, "--variant", "diagonal"],
        vec!["solve", &a, "--variant", "full", "--p", "2"],
        vec!["solve", &a, "--variant", "full"],
        vec!["solve", &a, "--variant", "vector", "--method", "greedy"],
    ] {
        let (code, report) = sparsectl(&args);
        assert_eq!(code, EXIT_OK, "{args:?}");
        ks.push(report.result["k_star"].as_u64().unwrap());
    }
    assert_eq!(ks, vec![1, 1, 1, 1, 1]);
}

#[test]
fn solve_observability_returns_output_matrix() {
    let (code, report) = sparsectl(&[
        "solve",
        &fixture("triangular.json"),
        "--variant",
        "vector",
        "--observability",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report.result["dual"], true);
    assert_eq!(report.result["k_star"], 1);
    assert_eq!(report.result["support"], serde_json::json!([1]));
    assert_eq!(report.result["realization"]["output"]["n"], 1);
}

#[test]
fn convert_round_trip_keeps_nonzeros() {
    let dir = tempfile::tempdir().unwrap();
    let a = fixture("path3.json");
    let (code, report) = sparsectl(&[
        "convert",
        &a,
        &fixture("path3_diag.csv"),
        "--to",
        "full",
        "--p",
        "2",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report.result["to"], "full");
    assert_eq!(report.result["steps"].as_array().unwrap().len(), 2);

    let b_full = dir.path().join("b_full.json");
    fs::write(&b_full, report.result["input"].to_string()).unwrap();
    let (code, back) = sparsectl(&["convert", &a, b_full.to_str().unwrap(), "--to", "diagonal"]);
    assert_eq!(code, EXIT_OK);
    assert!(back.result["nnz_out"].as_u64() <= back.result["nnz_in"].as_u64());

    let (code, report) = sparsectl(&[
        "convert",
        &a,
        &fixture("path3_diag.csv"),
        "--to",
        "diagonal",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report.warnings.len(), 1);
}

#[test]
fn convert_rejects_uncontrollable_input() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("d.csv");
    fs::write(&b, "1,0\n0,1\n").unwrap();
    let (code, report) = sparsectl(&[
        "convert",
        &fixture("swap.csv"),
        b.to_str().unwrap(),
        "--to",
        "vector",
    ]);
    assert_eq!(code, EXIT_OK, "{:?}", report.warnings);

    fs::write(&b, "1,0\n1,0\n").unwrap();
    let (code, report) = sparsectl(&[
        "convert",
        &fixture("swap.csv"),
        b.to_str().unwrap(),
        "--to",
        "vector",
    ]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert!(report.result["witness"].is_u64());
}

#[test]
fn generate_writes_a_usable_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.json");
    let (code, report) = sparsectl(&[
        "generate",
        "--n",
        "3",
        "--family",
        &fixture("chain_family.json"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        report.result["supports"],
        serde_json::json!([[1, 2], [2, 3], [3]])
    );

    let (code, eig) = sparsectl(&["eig", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let mut got: Vec<Vec<u64>> = serde_json::from_value(eig.result["supports"].clone()).unwrap();
    got.sort();
    assert_eq!(got, vec![vec![1, 2], vec![2, 3], vec![3]]);

    let (code, random) = sparsectl(&["generate", "--n", "5", "--seed", "8", "--density", "0.3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(random.result["matrix"]["n"], 5);
}

#[test]
fn generate_rejects_mismatched_family() {
    let (code, report) = sparsectl(&[
        "generate",
        "--n",
        "4",
        "--family",
        &fixture("chain_family.json"),
    ]);
    assert_eq!(code, EXIT_INPUT);
    assert!(!report.warnings.is_empty());
}

#[test]
fn input_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "1,2\n3\n").unwrap();
    let nonsquare = dir.path().join("ns.json");
    fs::write(&nonsquare, r#"{"n": 1, "rows": [[1, 2]]}"#).unwrap();
    let wrong_n = dir.path().join("wn.json");
    fs::write(&wrong_n, r#"{"n": 3, "rows": [[1]]}"#).unwrap();
    let repeated = dir.path().join("rep.csv");
    fs::write(&repeated, "1,1\n0,1\n").unwrap();

    for args in [
        vec!["eig", bad.to_str().unwrap()],
        vec!["eig", nonsquare.to_str().unwrap()],
        vec!["eig", wrong_n.to_str().unwrap()],
        vec!["eig", "/nonexistent/a.json"],
        vec!["feasible", repeated.to_str().unwrap(), "--support", "1"],
        vec!["feasible", &fixture("diag3.json"), "--support", "0"],
        vec!["feasible", &fixture("diag3.json"), "--support", "4"],
        vec!["check", &fixture("diag3.json"), &fixture("b_ones.csv")],
        vec!["solve", &fixture("diag3.json"), "--variant", "sideways"],
        vec!["nonsense"],
    ] {
        let (code, report) = sparsectl(&args);
        assert_eq!(code, EXIT_INPUT, "{args:?}: {report:?}");
        assert!(!report.warnings.is_empty(), "{args:?}");
    }
}

#[test]
fn repeated_eigenvalues_still_report_eigenstructure() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("i.csv");
    fs::write(&a, "2,0\n0,2\n").unwrap();
    let (code, report) = sparsectl(&["eig", a.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report.result["distinct"], false);
    assert_eq!(report.warnings.len(), 1);

    let b = dir.path().join("b.csv");
    fs::write(&b, "1\n1\n").unwrap();
    let (code, report) = sparsectl(&[
        "check",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--kalman",
    ]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(report.result["verdicts"][0]["rank"], 1);
}

#[test]
fn help_is_not_an_error() {
    let (code, report) = sparsectl(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(report.result.as_str().unwrap().contains("construct"));
}

#[test]
fn reports_round_trip_losslessly() {
    for args in [
        vec!["eig".to_string(), fixture("path3.json")],
        vec![
            "construct".into(),
            fixture("path3.json"),
            "--support".into(),
            "1,2".into(),
            "--seed".into(),
            "5".into(),
        ],
        vec![
            "generate".into(),
            "--n".into(),
            "6".into(),
            "--seed".into(),
            "2".into(),
        ],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (_, report) = sparsectl(&args);
        let text = report.to_json();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.to_json(), text);
    }
}

#[test]
fn digest_depends_on_content_not_path() {
    let dir = tempfile::tempdir().unwrap();
    let copy = dir.path().join("copy.json");
    fs::copy(fixture("triangular.json"), &copy).unwrap();
    let (_, one) = sparsectl(&["eig", &fixture("triangular.json")]);
    let (_, two) = sparsectl(&["eig", copy.to_str().unwrap()]);
    assert_eq!(one.inputs_digest, two.inputs_digest);
    assert_eq!(one.inputs_digest.len(), 64);

    fs::write(&copy, r#"{"n": 2, "rows": [[1, 1], [0, 3]]}"#).unwrap();
    let (_, three) = sparsectl(&["eig", copy.to_str().unwrap()]);
    assert_ne!(one.inputs_digest, three.inputs_digest);

    let (_, s1) = sparsectl(&[
        "construct",
        &fixture("path3.json"),
        "--support",
        "1,2",
        "--seed",
        "1",
    ]);
    let (_, s2) = sparsectl(&[
        "construct",
        &fixture("path3.json"),
        "--support",
        "1,2",
        "--seed",
        "2",
    ]);
    assert_ne!(s1.inputs_digest, s2.inputs_digest);
}

#[test]
fn golden_reports_are_byte_identical() {
    let cases: [(&str, Vec<String>); 7] = [
        (
            "solve_triangular.json",
            vec![
                "solve".into(),
                fixture("triangular.json"),
                "--variant".into(),
                "vector".into(),
            ],
        ),
        (
            "solve_diag3.json",
            vec![
                "solve".into(),
                fixture("diag3.json"),
                "--variant".into(),
                "vector".into(),
            ],
        ),
        (
            "construct_swap.json",
            vec![
                "construct".into(),
                fixture("swap.csv"),
                "--support".into(),
                "1,2".into(),
            ],
        ),
        ("eig_path3.json", vec!["eig".into(), fixture("path3.json")]),
        (
            "feasible_diag3.json",
            vec![
                "feasible".into(),
                fixture("diag3.json"),
                "--support".into(),
                "1,2".into(),
            ],
        ),
        (
            "generate_chain.json",
            vec![
                "generate".into(),
                "--n".into(),
                "3".into(),
                "--family".into(),
                fixture("chain_family.json"),
                "--seed".into(),
                "4".into(),
            ],
        ),
        (
            "convert_path3.json",
            vec![
                "convert".into(),
                fixture("path3.json"),
                fixture("path3_diag.csv"),
                "--to".into(),
                "vector".into(),
            ],
        ),
    ];
    for (file, args) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let expected = fs::read_to_string(golden(file)).unwrap();
        let first = sparsectl(&args).1.to_json() + "\n";
        let second = sparsectl(&args).1.to_json() + "\n";
        assert_eq!(first, second, "{file}: rerun differs");
        assert_eq!(first, expected, "{file}: differs from golden copy");
    }

    let solve: Report =
        serde_json::from_str(&fs::read_to_string(golden("solve_diag3.json")).unwrap()).unwrap();
    assert_eq!(solve.result["k_star"], 3);
    let construct: Report =
        serde_json::from_str(&fs::read_to_string(golden("construct_swap.json")).unwrap()).unwrap();
    assert_eq!(
        construct.result["trace"]["initial"],
        serde_json::json!([1.0, 1.0])
    );
    assert_eq!(construct.result["trace"]["iterations"], 1);
}
