use std::process::ExitCode;

use clap::Parser;
use toeplitz_cli::{classify, diagnostic, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(err) => {
            eprintln!("{}", diagnostic(&err));
            ExitCode::from(classify(&err).code())
        }
    }
}
