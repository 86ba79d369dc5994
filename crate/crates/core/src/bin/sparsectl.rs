use std::io::Write;
use std::process::ExitCode;

use serde_json::Value;

fn main() -> ExitCode {
    let (code, report) = sparsectl::cli::run(std::env::args_os());
    let text = match (&*report.command, &report.result) {
        ("help", Value::String(text)) => text.clone(),
        _ => report.to_json() + "\n",
    };
    // A closed pipe downstream is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(code as u8)
}
