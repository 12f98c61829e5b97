use std::process::ExitCode;

use clap::Parser;
use spingauge::cli::{error_line, run, Cli};
use spingauge::Error;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", error_line(&Error::Config(e.kind().to_string())));
            eprint!("{e}");
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(out) => {
            println!("{}", out.primary.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", error_line(&e));
            ExitCode::from(1)
        }
    }
}
