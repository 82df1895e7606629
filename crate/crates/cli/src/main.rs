use std::process::ExitCode;

use clap::Parser;
use lcsq_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("lcsq: {e:#}");
            ExitCode::FAILURE
        }
    }
}
