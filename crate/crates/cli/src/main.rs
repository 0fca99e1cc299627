mod args;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match &cli.command {
        Command::Solve(a) => a.search.format,
        Command::Compare(a) => a.search.format,
        Command::Verify(a) => a.search.format,
        Command::Witness(a) => a.format,
    };
    let result = match &cli.command {
        Command::Solve(a) => commands::cmd_solve(a),
        Command::Compare(a) => commands::cmd_compare(a),
        Command::Verify(a) => commands::cmd_verify(a),
        Command::Witness(a) => commands::cmd_witness(a),
    };
    match result {
        Ok(outcome) => {
            let text = match format {
                Format::Json => outcome.report.to_json() + "\n",
                Format::Table => outcome.report.to_table(),
            };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
