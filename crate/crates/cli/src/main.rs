mod args;
mod cache;
mod commands;
mod dot;
mod error;
mod space;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Value};

use args::Cli;
use commands::Output;
use error::{CliError, CliResult};

/// Echo of every effective option, keyed by flag name, so the report can be
/// reproduced by passing them back.
fn config(cli: &Cli) -> Value {
    let mut config = json!({"command": cli.command.name()});
    if let Value::Object(fields) = serde_json::to_value(cli).expect("options serialize") {
        config.as_object_mut().unwrap().extend(fields);
    }
    config
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.common.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(|source| CliError::Write {
                path: "<stdout>".into(),
                source,
            })
        }
    }
}

fn execute(cli: &Cli) -> CliResult<()> {
    let started = Instant::now();
    match commands::run(cli)? {
        Output::Dot(text) => emit(cli, &text),
        Output::Report { results, truncated } => {
            let mut report = json!({
                "command": cli.command.name(),
                "config": config(cli),
                "results": results,
                "truncated": truncated,
            });
            if cli.common.timing {
                report["timing_ms"] = json!(started.elapsed().as_secs_f64() * 1e3);
            }
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            emit(cli, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
