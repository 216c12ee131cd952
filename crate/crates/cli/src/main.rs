mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qch_core::Error;

use crate::config::{Cli, Command, Format, OutputArgs};

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_ENGINE: u8 = 3;

/// Configuration problems exit with 2, engine failures with 3.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. }
        | Error::InvalidIndeterminate(_)
        | Error::UndeclaredIndeterminate(_)
        | Error::OutOfRange(_)
        | Error::ShapeMismatch(_)
        | Error::Validation(_)
        | Error::Schema(_)
        | Error::DegreeBound { .. }
        | Error::RepeatedRoots(..)
        | Error::Io(_)
        | Error::Json(_) => EXIT_CONFIG,
        _ => EXIT_ENGINE,
    }
}

fn emit(outcome: &commands::Outcome, output: &OutputArgs) -> std::io::Result<()> {
    let body = match output.format {
        Format::Json => serde_json::to_string_pretty(&outcome.report)? + "\n",
        Format::Text => outcome.text.clone(),
    };
    match &output.out {
        Some(path) => std::fs::write(path, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, output) = match &cli.command {
        Command::Verify { target, common } => (commands::verify(*target, common), &common.output),
        Command::Coeffs {
            target,
            max_p,
            output,
        } => (commands::coeffs(*target, *max_p), output),
        Command::Orbit { target, common } => (commands::orbit(*target, common), &common.output),
    };
    match result {
        Ok(outcome) => {
            if let Err(e) = emit(&outcome, output) {
                eprintln!("qch: cannot write report: {e}");
                return ExitCode::from(EXIT_CONFIG);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(e) => {
            eprintln!("qch: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
