//! Command-line front end for scalapprox.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Value};

use args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = commands::run(&cli.command);
    let elapsed = start.elapsed().as_secs_f64();

    let (code, outputs) = match result {
        Ok(out) => {
            let shown = if cli.json { commands::pretty(&out.json) } else { out.text };
            let shown = shown.trim_end();
            if !shown.is_empty() {
                // A closed pipe (e.g. `| head`) is not an error of the command.
                let _ = writeln!(std::io::stdout().lock(), "{shown}");
            }
            (ExitCode::SUCCESS, out.json)
        }
        Err(e) => {
            eprintln!("error: {e}");
            (ExitCode::from(1), json!({ "error": e.name(), "message": e.to_string() }))
        }
    };

    if let Some(path) = &cli.report {
        let argv: Vec<String> = std::env::args().skip(1).collect();
        let report = json!({
            "command": command_name(&argv),
            "inputs": argv,
            "outputs": outputs,
            "timing": if cli.timing { json!(elapsed) } else { Value::Null },
        });
        if let Err(e) = std::fs::write(path, commands::pretty(&report)) {
            eprintln!("error: ParseError: {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    code
}

/// The subcommand path, e.g. `adversary finite`.
fn command_name(argv: &[String]) -> String {
    let words: Vec<&str> = argv.iter().map(String::as_str).filter(|a| !a.starts_with('-')).take(2).collect();
    match words.as_slice() {
        ["adversary", kind, ..] => format!("adversary {kind}"),
        [first, ..] => first.to_string(),
        [] => String::new(),
    }
}
