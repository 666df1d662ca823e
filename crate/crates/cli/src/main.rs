//! `levy`: tables, comparisons and verification reports for one-sided Lévy
//! stable densities.
//!
//! Exit codes: 0 success, 2 some row fell back to the quadrature oracle,
//! 1 computation or check failure, 64 usage, 65 domain, 74 output.

mod args;
mod commands;
mod error;
mod output;
mod verify;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
