use std::process::ExitCode;

use clap::{Parser, Subcommand};
use weno_cli::config::{Mode, Overrides, RunConfig};
use weno_cli::{commands, CliError};
use weno_core::problems::catalog;
use weno_core::stencil::Scheme;

#[derive(Parser)]
#[command(name = "weno", version, about = "WENO benchmark runner")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one problem with one scheme.
    Run(Overrides),
    /// Solve one problem with several schemes and write a combined CSV.
    Compare(Overrides),
    /// Convergence table over a list of grids.
    Converge(Overrides),
    /// List problems and schemes.
    List,
}

fn resolve(o: Overrides, mode: Mode) -> Result<RunConfig, CliError> {
    RunConfig::resolve(o.with_file()?, mode)
}

fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Run(o) => {
            let r = commands::run(&resolve(o, Mode::Run)?)?;
            println!("{}", r.summary());
        }
        Command::Compare(o) => {
            let r = commands::compare(&resolve(o, Mode::Compare)?)?;
            for run in &r.runs {
                println!("{}", run.summary());
            }
            println!("combined: {}", r.combined);
        }
        Command::Converge(o) => {
            let r = commands::converge(&resolve(o, Mode::Converge)?)?;
            print!("{}", r.table);
            for (n, e) in &r.failures {
                eprintln!("n={n}: {e}");
            }
        }
        Command::List => {
            println!("problems:");
            for p in catalog() {
                let dims = match p.grid.1 {
                    Some(ny) => format!("{}x{ny}", p.grid.0),
                    None => p.grid.0.to_string(),
                };
                println!("  {:<16} n={dims:<8} t_final={}", p.name(), p.t_final);
            }
            println!("schemes: {}", Scheme::ALL.map(Scheme::name).join(", "));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
