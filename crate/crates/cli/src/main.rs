use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ldshift_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command).and_then(|csv| match &cli.out {
        Some(path) => std::fs::write(path, csv).map_err(CliError::from),
        None => std::io::stdout().lock().write_all(csv.as_bytes()).map_err(CliError::from),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ CliError::Usage { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
