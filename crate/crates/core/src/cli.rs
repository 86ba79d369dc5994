//! The `sparsectl` command line.
//!
//! Every invocation produces one JSON [`Report`] and an exit code:
//! 0 success, 2 infeasible or not controllable, 3 input error, 4 numerical
//! failure. Matrix files are JSON `{"n": .., "rows": [[..], ..]}` or plain
//! CSV rows; support families are JSON `{"n": .., "supports": [[1, 2], ..]}`.
//! All indices in files and reports are 1-based.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::construct::{construct_with, feasible_support, ConstraintSpec, RepairTrace};
use crate::equiv::{
    diagonal_to_vector, full_to_vector, vector_to_diagonal, vector_to_full, ConversionTrace,
};
use crate::error::Error;
use crate::gensys::{random_instance, system_from_family, GeneratorSpec};
use crate::mcp::{
    greedy_rank, solve_mcp_diagonal, solve_mcp_full, solve_mcp_vector, solve_min_observability,
    McpSolution,
};
use crate::numlin::{eig_left, EigenStructure, SystemMatrix, C64, TAU_SUPP};
use crate::pbh::{
    kalman_controllable, pbh_controllable, pbh_tolerance, InputKind, SparseInput, Verdict,
};
use crate::sparsity::{support, support_family, IndexSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub tau_supp: f64,
    pub tau_pbh: Option<f64>,
    pub gap_tol: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// SHA-256 over the subcommand, its options and the input file contents.
    pub inputs_digest: String,
    pub tolerances: Tolerances,
    pub result: Value,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are finite")
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "sparsectl",
    version,
    about = "Sparse actuator and sensor selection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues, canonical left eigenvectors and their supports.
    Eig { a: PathBuf },
    /// Controllability verdicts for (A, B).
    Check {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        oracle: OracleFlags,
    },
    /// Whether some vector supported on the given indices can be controllable.
    Feasible {
        a: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        support: Vec<usize>,
    },
    /// Build a controllable vector on the given support.
    Construct {
        a: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        support: Vec<usize>,
        #[arg(long, conflicts_with = "frobenius_bound")]
        element_bound: Option<f64>,
        #[arg(long)]
        frobenius_bound: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sparsest controllable input (or observable output with --observability).
    Solve {
        a: PathBuf,
        #[arg(long, value_enum)]
        variant: Variant,
        /// Number of input columns for the full variant (default n).
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
        method: MethodArg,
        #[arg(long)]
        observability: bool,
    },
    /// Convert an input matrix between vector, diagonal and full forms.
    Convert {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum)]
        to: Variant,
        #[arg(long)]
        p: Option<usize>,
    },
    /// Generate a state matrix with prescribed or random eigenvector supports.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Inclusion probability for random supports.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Also write the matrix file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct OracleFlags {
    #[arg(long)]
    kalman: bool,
    #[arg(long)]
    pbh: bool,
    #[arg(long)]
    both: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Variant {
    Vector,
    Diagonal,
    Full,
}

impl Variant {
    fn kind(self) -> InputKind {
        match self {
            Variant::Vector => InputKind::Vector,
            Variant::Diagonal => InputKind::Diagonal,
            Variant::Full => InputKind::Full,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Exact,
    Greedy,
}

/// Failure of a subcommand: exit code plus whatever partial payload exists.
struct Failure {
    code: i32,
    message: String,
    result: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, result) = match &e {
            Error::Infeasible { witness } | Error::NotControllable { witness } => {
                (EXIT_NEGATIVE, json!({ "witness": witness + 1 }))
            }
            Error::BudgetExhausted(sol) => (EXIT_NEGATIVE, solution_json(sol)),
            Error::Dimension(_)
            | Error::NonFinite(_)
            | Error::InvalidInput(_)
            | Error::ZeroVector { .. }
            | Error::TooLarge { .. }
            | Error::RepeatedEigenvalues { .. } => (EXIT_INPUT, Value::Null),
            Error::NonConvergence
            | Error::NoProgress { .. }
            | Error::NoCandidate
            | Error::GenerationFailed { .. }
            | Error::OracleDisagreement(_) => (EXIT_NUMERICAL, Value::Null),
        };
        Failure {
            code,
            message: e.to_string(),
            result,
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
        result: Value::Null,
    }
}

/// Accumulates everything a report depends on.
struct Context {
    digest: Sha256,
    tolerances: Tolerances,
    warnings: Vec<String>,
}

impl Context {
    fn new(command: &str) -> Self {
        let mut digest = Sha256::new();
        Self::feed(&mut digest, "command", command.as_bytes());
        Self {
            digest,
            tolerances: Tolerances {
                tau_supp: TAU_SUPP,
                tau_pbh: None,
                gap_tol: None,
            },
            warnings: Vec::new(),
        }
    }

    fn feed(digest: &mut Sha256, label: &str, bytes: &[u8]) {
        digest.update((label.len() as u64).to_le_bytes());
        digest.update(label.as_bytes());
        digest.update((bytes.len() as u64).to_le_bytes());
        digest.update(bytes);
    }

    fn option(&mut self, label: &str, value: impl std::fmt::Debug) {
        Self::feed(&mut self.digest, label, format!("{value:?}").as_bytes());
    }

    fn read(&mut self, label: &str, path: &Path) -> Result<String, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
        Self::feed(&mut self.digest, label, text.as_bytes());
        Ok(text)
    }

    fn eigen(&mut self, e: &EigenStructure) {
        self.tolerances.gap_tol = Some(e.gap_tol());
    }

    fn input(&mut self, b: &SparseInput) {
        self.tolerances.tau_pbh = Some(pbh_tolerance(b.frobenius_norm()));
    }

    fn finish(self, command: &str, result: Value) -> Report {
        Report {
            command: command.to_string(),
            inputs_digest: hex::encode(self.digest.finalize()),
            tolerances: self.tolerances,
            result,
            warnings: self.warnings,
        }
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// exit code with its report.
pub fn run<I, T>(argv: I) -> (i32, Report)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let (code, command) = match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion
                | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    (EXIT_OK, "help")
                }
                _ => (EXIT_INPUT, "usage"),
            };
            let mut ctx = Context::new(command);
            let text = e.render().to_string();
            if code == EXIT_OK {
                return (code, ctx.finish(command, Value::String(text)));
            }
            ctx.warnings.push(text.trim_end().to_string());
            return (code, ctx.finish(command, Value::Null));
        }
    };

    let name = match &cli.command {
        Command::Eig { .. } => "eig",
        Command::Check { .. } => "check",
        Command::Feasible { .. } => "feasible",
        Command::Construct { .. } => "construct",
        Command::Solve { .. } => "solve",
        Command::Convert { .. } => "convert",
        Command::Generate { .. } => "generate",
    };
    let mut ctx = Context::new(name);
    let outcome = match cli.command {
        Command::Eig { a } => cmd_eig(&mut ctx, &a),
        Command::Check { a, b, oracle } => cmd_check(&mut ctx, &a, &b, &oracle),
        Command::Feasible { a, support } => cmd_feasible(&mut ctx, &a, &support),
        Command::Construct {
            a,
            support,
            element_bound,
            frobenius_bound,
            seed,
        } => {
            let constraint = match (element_bound, frobenius_bound) {
                (Some(h), _) => ConstraintSpec::ElementBound(h),
                (None, Some(r)) => ConstraintSpec::FrobeniusBound(r),
                (None, None) => ConstraintSpec::Unconstrained,
            };
            cmd_construct(&mut ctx, &a, &support, constraint, seed)
        }
        Command::Solve {
            a,
            variant,
            p,
            method,
            observability,
        } => cmd_solve(&mut ctx, &a, variant, p, method, observability),
        Command::Convert { a, b, to, p } => cmd_convert(&mut ctx, &a, &b, to, p),
        Command::Generate {
            n,
            family,
            seed,
            density,
            out,
        } => cmd_generate(
            &mut ctx,
            n,
            family.as_deref(),
            seed,
            density,
            out.as_deref(),
        ),
    };
    match outcome {
        Ok((code, result)) => (code, ctx.finish(name, result)),
        Err(f) => {
            ctx.warnings.push(f.message);
            (f.code, ctx.finish(name, f.result))
        }
    }
}

type Outcome = Result<(i32, Value), Failure>;

fn cmd_eig(ctx: &mut Context, a_path: &Path) -> Outcome {
    let a = read_system(ctx, a_path)?;
    let e = eig_left(&a)?;
    ctx.eigen(&e);
    if !e.distinct() {
        ctx.warnings
            .push("eigenvalues are not distinct; eigenvectors are not unique".into());
    }
    let supports: Vec<Vec<usize>> = e
        .left_eigenvectors()
        .iter()
        .map(|x| support(x, e.tau_supp()).one_based())
        .collect();
    let result = json!({
        "n": a.n(),
        "eigenvalues": e.eigenvalues().iter().map(|&l| complex(l)).collect::<Vec<_>>(),
        "eigenvectors": e
            .left_eigenvectors()
            .iter()
            .map(|x| x.iter().map(|&z| complex(z)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "supports": supports,
        "distinct": e.distinct(),
        "min_gap": finite(e.min_gap()),
        "conjugate_pairs": e
            .conj_pairs()
            .iter()
            .map(|&(i, j)| [i + 1, j + 1])
            .collect::<Vec<_>>(),
    });
    Ok((EXIT_OK, result))
}

fn cmd_check(ctx: &mut Context, a_path: &Path, b_path: &Path, oracle: &OracleFlags) -> Outcome {
    let a = read_system(ctx, a_path)?;
    let b = read_input(ctx, b_path, a.n())?;
    ctx.option("oracle", (oracle.kalman, oracle.pbh, oracle.both));
    ctx.input(&b);
    let use_pbh = !oracle.kalman;
    let use_kalman = !oracle.pbh;

    let pbh = if use_pbh {
        let e = eig_left(&a)?;
        ctx.eigen(&e);
        Some(pbh_controllable(&e, &b)?)
    } else {
        None
    };
    let kalman = if use_kalman {
        Some(kalman_controllable(&a, &b)?)
    } else {
        None
    };
    let verdicts: Vec<&Verdict> = pbh.iter().chain(kalman.iter()).collect();
    let controllable = verdicts.iter().all(|v| v.controllable);
    let agree = verdicts
        .iter()
        .all(|v| v.controllable == verdicts[0].controllable);
    let result = json!({
        "input_kind": b.kind().name(),
        "controllable": controllable,
        "verdicts": verdicts.iter().map(|v| verdict_json(v)).collect::<Vec<_>>(),
    });
    let code = if !agree {
        ctx.warnings
            .push("eigenvector and rank tests disagree; the pair is numerically borderline".into());
        EXIT_NUMERICAL
    } else if controllable {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Ok((code, result))
}

fn cmd_feasible(ctx: &mut Context, a_path: &Path, support: &[usize]) -> Outcome {
    let a = read_system(ctx, a_path)?;
    ctx.option("support", support);
    let s_v = IndexSet::from_one_based(a.n(), support)?;
    let e = eig_left(&a)?;
    ctx.eigen(&e);
    let f = support_family(&e)?;
    let report = feasible_support(&e, &f, &s_v)?;
    let result = json!({
        "support": s_v.one_based(),
        "feasible": report.feasible,
        "witness": report.witness.map(|w| w + 1),
        "hits": report.hits.iter().map(|h| h.map(|k| k + 1)).collect::<Vec<_>>(),
    });
    let code = if report.feasible {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Ok((code, result))
}

fn cmd_construct(
    ctx: &mut Context,
    a_path: &Path,
    support: &[usize],
    constraint: ConstraintSpec,
    seed: u64,
) -> Outcome {
    let a = read_system(ctx, a_path)?;
    ctx.option("support", support);
    ctx.option("constraint", constraint);
    ctx.option("seed", seed);
    let s_v = IndexSet::from_one_based(a.n(), support)?;
    let e = eig_left(&a)?;
    ctx.eigen(&e);
    let f = support_family(&e)?;
    let (b, trace) = construct_with(&e, &f, &s_v, &constraint, seed)?;
    let input = SparseInput::vector(&b)?;
    ctx.input(&input);
    let pbh = pbh_controllable(&e, &input)?;
    let kalman = kalman_controllable(&a, &input)?;
    if pbh.controllable != kalman.controllable {
        ctx.warnings
            .push("eigenvector and rank tests disagree on the constructed vector".into());
    }
    let result = json!({
        "support": s_v.one_based(),
        "constraint": constraint_json(&constraint),
        "seed": seed,
        "b": b,
        "trace": trace_json(&trace),
        "verdicts": [verdict_json(&pbh), verdict_json(&kalman)],
    });
    let code = if pbh.controllable && kalman.controllable {
        EXIT_OK
    } else {
        EXIT_NUMERICAL
    };
    Ok((code, result))
}

fn cmd_solve(
    ctx: &mut Context,
    a_path: &Path,
    variant: Variant,
    p: Option<usize>,
    method: MethodArg,
    observability: bool,
) -> Outcome {
    let a = read_system(ctx, a_path)?;
    ctx.option("variant", variant);
    ctx.option("p", p);
    ctx.option("method", method);
    ctx.option("observability", observability);
    if p.is_some() && variant != Variant::Full {
        ctx.warnings
            .push("--p only applies to the full variant".into());
    }
    let target = if observability {
        a.transpose()
    } else {
        a.clone()
    };
    if let Ok(e) = eig_left(&target) {
        ctx.eigen(&e);
    }
    let unconstrained = ConstraintSpec::Unconstrained;
    let p = p.unwrap_or(a.n());
    let sol = match method {
        MethodArg::Exact => match (variant, observability) {
            (Variant::Vector, true) => solve_min_observability(&a, &unconstrained)?,
            (Variant::Vector, false) => solve_mcp_vector(&a, &unconstrained)?,
            (Variant::Diagonal, _) => solve_mcp_diagonal(&target, &unconstrained)?,
            (Variant::Full, _) => solve_mcp_full(&target, p, &unconstrained)?,
        },
        MethodArg::Greedy => {
            let base = greedy_rank(&target, target.n())?;
            let realization = match variant {
                Variant::Vector => base.realization.clone(),
                Variant::Diagonal => vector_to_diagonal(&base.realization)?.0,
                Variant::Full if p == 1 => base.realization.clone(),
                Variant::Full => vector_to_full(&base.realization, p)?.0,
            };
            let certificates = crate::mcp::Certificates {
                pbh: base
                    .certificates
                    .pbh
                    .as_ref()
                    .map(|_| pbh_controllable(&eig_left(&target)?, &realization))
                    .transpose()?,
                kalman: kalman_controllable(&target, &realization)?,
            };
            McpSolution {
                variant: realization.kind(),
                realization,
                certificates,
                ..base
            }
        }
    };
    let sol = McpSolution {
        dual: observability,
        ..sol
    };
    ctx.input(&sol.realization);
    Ok((EXIT_OK, solution_json(&sol)))
}

fn cmd_convert(
    ctx: &mut Context,
    a_path: &Path,
    b_path: &Path,
    to: Variant,
    p: Option<usize>,
) -> Outcome {
    let a = read_system(ctx, a_path)?;
    let b = read_input(ctx, b_path, a.n())?;
    ctx.option("to", to);
    ctx.option("p", p);
    let from = b.kind();
    let p_out = match (to, p) {
        (Variant::Full, Some(p)) => p,
        (Variant::Full, None) => a.n(),
        (_, Some(_)) => {
            ctx.warnings
                .push("--p only applies to the full variant".into());
            1
        }
        _ => 1,
    };
    let unchanged = from == to.kind() && (from != InputKind::Full || b.p() == p_out);

    let mut steps: Vec<ConversionTrace> = Vec::new();
    let mut current = b.clone();
    if unchanged {
        ctx.warnings
            .push(format!("input is already a {} input", from.name()));
    } else {
        if from != InputKind::Vector {
            let e = eig_left(&a)?;
            ctx.eigen(&e);
            let f = support_family(&e)?;
            let unconstrained = ConstraintSpec::Unconstrained;
            let (out, trace) = match from {
                InputKind::Diagonal => diagonal_to_vector(&e, &f, &current, &unconstrained)?,
                _ => full_to_vector(&e, &f, &current, &unconstrained)?,
            };
            current = out;
            steps.push(trace);
        }
        let up = match to {
            Variant::Vector => None,
            Variant::Diagonal => Some(vector_to_diagonal(&current)?),
            Variant::Full => Some(vector_to_full(&current, p_out)?),
        };
        if let Some((out, trace)) = up {
            current = out;
            steps.push(trace);
        }
    }
    ctx.input(&current);
    let result = json!({
        "from": from.name(),
        "to": current.kind().name(),
        "input": matrix_json(current.entries()),
        "nnz_in": b.nnz(),
        "nnz_out": current.nnz(),
        "steps": steps.iter().map(conversion_json).collect::<Vec<_>>(),
    });
    Ok((EXIT_OK, result))
}

fn cmd_generate(
    ctx: &mut Context,
    n: usize,
    family_path: Option<&Path>,
    seed: u64,
    density: f64,
    out: Option<&Path>,
) -> Outcome {
    ctx.option("n", n);
    ctx.option("seed", seed);
    let (a, spec) = match family_path {
        Some(path) => {
            let family = read_family(ctx, path)?;
            if family.len() != n || family.iter().any(|s| s.n() != n) {
                return Err(input_error(format!(
                    "family file does not describe n = {n} supports over 1..={n}"
                )));
            }
            let spec = GeneratorSpec::new(family).with_seed(seed);
            (system_from_family(&spec)?, spec)
        }
        None => {
            ctx.option("density", density);
            random_instance(n, density, seed)?
        }
    };
    let e = eig_left(&a)?;
    ctx.eigen(&e);
    let matrix = matrix_json(a.matrix());
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&matrix).expect("finite entries") + "\n";
        fs::write(path, text)
            .map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))?;
    }
    let result = json!({
        "matrix": matrix,
        "supports": spec.family.iter().map(IndexSet::one_based).collect::<Vec<_>>(),
        "eigenvalues": spec.eigenvalues,
        "generator_seed": spec.seed,
    });
    Ok((EXIT_OK, result))
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    rows: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct FamilyFile {
    n: usize,
    supports: Vec<Vec<usize>>,
}

/// Rows from a JSON matrix file or CSV text. `n` in JSON is the row count.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<f64>>, String> {
    if text.trim_start().starts_with('{') {
        let file: MatrixFile =
            serde_json::from_str(text).map_err(|e| format!("bad matrix JSON: {e}"))?;
        if file.rows.len() != file.n {
            return Err(format!("n = {} but {} rows given", file.n, file.rows.len()));
        }
        return Ok(file.rows);
    }
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|line| {
            line.split(',')
                .map(|cell| {
                    cell.trim()
                        .parse::<f64>()
                        .map_err(|e| format!("bad CSV entry {cell:?}: {e}"))
                })
                .collect()
        })
        .collect()
}

fn dense(rows: &[Vec<f64>]) -> Result<DMatrix<f64>, Failure> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
        return Err(input_error(
            "matrix rows must be nonempty and of equal length",
        ));
    }
    Ok(DMatrix::from_fn(r, c, |i, j| rows[i][j]))
}

fn read_system(ctx: &mut Context, path: &Path) -> Result<SystemMatrix, Failure> {
    let text = ctx.read("A", path)?;
    let rows = parse_matrix(&text).map_err(input_error)?;
    Ok(SystemMatrix::new(dense(&rows)?)?)
}

fn read_input(ctx: &mut Context, path: &Path, n: usize) -> Result<SparseInput, Failure> {
    let text = ctx.read("B", path)?;
    let rows = parse_matrix(&text).map_err(input_error)?;
    let m = dense(&rows)?;
    if m.nrows() != n {
        return Err(input_error(format!(
            "input matrix has {} rows, state dimension is {n}",
            m.nrows()
        )));
    }
    Ok(SparseInput::infer(m)?)
}

fn read_family(ctx: &mut Context, path: &Path) -> Result<Vec<IndexSet>, Failure> {
    let text = ctx.read("family", path)?;
    let file: FamilyFile =
        serde_json::from_str(&text).map_err(|e| input_error(format!("bad family JSON: {e}")))?;
    file.supports
        .iter()
        .map(|s| IndexSet::from_one_based(file.n, s).map_err(Failure::from))
        .collect()
}

/// The JSON matrix file form of `m` (negative zeros printed as `0.0`).
pub fn matrix_json(m: &DMatrix<f64>) -> Value {
    let rows: Vec<Vec<f64>> = (0..m.nrows())
        .map(|i| m.row(i).iter().map(|v| v + 0.0).collect())
        .collect();
    json!({ "n": m.nrows(), "rows": rows })
}

fn complex(z: C64) -> Value {
    json!([z.re, z.im])
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "method": v.method.name(),
        "controllable": v.controllable,
        "tolerance": v.tolerance,
        "rank": v.rank,
        "witness": v.witness.as_ref().map(|w| json!({
            "index": w.index + 1,
            "eigenvalue": complex(w.eigenvalue),
            "product": w.product.iter().map(|&z| complex(z)).collect::<Vec<_>>(),
        })),
    })
}

fn constraint_json(c: &ConstraintSpec) -> Value {
    match *c {
        ConstraintSpec::Unconstrained => json!({ "kind": "unconstrained" }),
        ConstraintSpec::ElementBound(h) => json!({ "kind": "element", "bound": h }),
        ConstraintSpec::FrobeniusBound(r) => json!({ "kind": "frobenius", "bound": r }),
    }
}

fn trace_json(t: &RepairTrace) -> Value {
    json!({
        "initial": t.initial,
        "initial_zero_set": t.initial_zero_set.one_based(),
        "iterations": t.iterations(),
        "feasibility_witness": t.feasibility_witness.iter().map(|k| k + 1).collect::<Vec<_>>(),
        "steps": t.steps.iter().map(|s| json!({
            "i": s.i + 1,
            "k": s.k + 1,
            "gammas": s.gammas.iter().map(|&(m, g)| json!([m + 1, g.re, g.im])).collect::<Vec<_>>(),
            "exclusions": s.exclusions,
            "delta": s.delta,
            "zb_before": s.zb_before,
            "zb_after": s.zb_after,
        })).collect::<Vec<_>>(),
    })
}

fn conversion_json(t: &ConversionTrace) -> Value {
    json!({
        "direction": t.direction.name(),
        "sets_b_i": t.sets_b_i.iter().map(IndexSet::one_based).collect::<Vec<_>>(),
        "set_b": t.set_b.one_based(),
        "sets_j_i": t.sets_j_i.iter().map(IndexSet::one_based).collect::<Vec<_>>(),
        "nnz_in": t.nnz_in,
        "nnz_out": t.nnz_out,
        "repair": t.repair.as_ref().map(trace_json),
    })
}

fn solution_json(s: &McpSolution) -> Value {
    let mut verdicts: Vec<Value> = s.certificates.pbh.iter().map(verdict_json).collect();
    verdicts.push(verdict_json(&s.certificates.kalman));
    let matrix = if s.dual {
        s.output_matrix()
            .map(|c| json!({ "output": matrix_json(&c) }))
            .unwrap_or(Value::Null)
    } else {
        json!({ "input": matrix_json(s.realization.entries()) })
    };
    json!({
        "variant": s.variant.name(),
        "method": s.method.name(),
        "dual": s.dual,
        "k_star": s.k_star,
        "support": s.support.one_based(),
        "realization": matrix,
        "nnz": s.realization.nnz(),
        "verdicts": verdicts,
        "trace": s.trace.as_ref().map(trace_json),
    })
}
