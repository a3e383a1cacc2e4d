use std::process::ExitCode;

use clap::Parser;
use little_bundles::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = match &cli.common.output {
        Some(path) => std::fs::write(path, &outcome.report),
        None => {
            print!("{}", outcome.report);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.exit_code() as u8)
}
