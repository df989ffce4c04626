mod args;
mod commands;
mod png;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Wb(a) => commands::wb(a),
        Command::Eval(a) => commands::eval(a),
        Command::Selftest(a) => commands::selftest(a),
        Command::Chart(a) => commands::chart(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::FAILURE
    })
}
