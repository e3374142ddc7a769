mod compute;
mod generate;
mod output;
mod suites;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "submeasure-lab", version, about = "Exact computations with finite submeasures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a quantity on an input file and print JSON.
    Compute(compute::ComputeArgs),
    /// Write example instances and a manifest of content hashes.
    Gen(generate::GenArgs),
    /// Run a named verification suite and print its table.
    Verify(suites::VerifyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(args) => compute::run(&args).map(|out| {
            print!("{out}");
            true
        }),
        Command::Gen(args) => generate::run(&args).map(|out| {
            print!("{out}");
            true
        }),
        Command::Verify(args) => suites::run(&args).map(|(out, passed)| {
            print!("{out}");
            passed
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
