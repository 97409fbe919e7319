//! `conecalc` command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a physics check fails,
//! 2 on input errors.

mod commands;
mod config;
mod error;
mod input;
mod output;

use std::process::ExitCode;

use clap::Parser;

use commands::Command;
use config::GlobalArgs;
use error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "conecalc",
    version,
    about = "Conformal momentum-space calculations on the 6D cone"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let cfg = cli.global.resolve()?;
    match &cli.command {
        Command::Transform(a) => commands::transform::run(a, &cfg),
        Command::Classify(a) => commands::classify::run(a, &cfg),
        Command::Decompose(a) => commands::fields::decompose_cmd(a, &cfg),
        Command::Verify(a) => commands::fields::verify_cmd(a, &cfg),
        Command::Constraints(a) => commands::constraints::run(a, &cfg, cli.global.mass),
        Command::Solve(a) => commands::fields::solve_cmd(a, &cfg),
        Command::Demo(a) => commands::fields::demo_cmd(a, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
