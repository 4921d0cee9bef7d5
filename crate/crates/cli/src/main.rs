mod args;
mod commands;
mod config;
mod grid;
mod output;
mod svg;
mod verify;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use config::{CliError, RunConfig};

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig::from_cli(cli)?;
    match cfg.command {
        Command::Curve => commands::curve(&cfg),
        Command::Table1 => commands::table1(&cfg),
        Command::Qubit => commands::qubit(&cfg),
        Command::Ratio => commands::ratio(&cfg),
        Command::Sample => commands::sample(&cfg),
        Command::Verify => verify::verify(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            // The verify report already lists its failures.
            if !matches!(e, CliError::VerifyFailed(_)) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
