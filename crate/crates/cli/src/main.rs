mod args;
mod bandit;
mod commands;
mod error;
mod output;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use args::{Cli, Command, MeasureCommand};
use clap::Parser;
use error::{CliError, CliResult};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("narch: {e}");
            e.exit_code()
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Compare { lhs, rhs } => println!("{}", commands::compare(&lhs, &rhs)),
        Command::Witness { r, n } => print!("{}", commands::witness(r, n)?),
        Command::Measure(MeasureCommand::Check { input }) => {
            println!("{}", commands::measure_check(&input)?)
        }
        Command::Measure(MeasureCommand::FeasibleTop { from, to, r, out }) => {
            let csv = commands::feasible_top(from, to, r)?;
            match out {
                Some(path) => fs::write(&path, csv).map_err(CliError::io(path))?,
                None => std::io::stdout()
                    .write_all(&csv)
                    .map_err(CliError::io("<stdout>"))?,
            }
        }
        Command::Measure(MeasureCommand::Plateau { input, tol }) => {
            match commands::plateau(&input, &tol)? {
                Some(i) => println!("{i}"),
                None => println!("null"),
            }
        }
        Command::Bandit(args) => {
            let config = bandit::resolve_config(&args)?;
            bandit::run(&config, &args.out)?;
        }
    }
    Ok(())
}
