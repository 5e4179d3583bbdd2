mod args;
mod commands;
mod failure;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use failure::Failure;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            Failure::usage(e.kind().to_string().replace(' ', "_"), e.to_string()).report();
            return ExitCode::from(failure::USAGE);
        }
    };
    std::panic::set_hook(Box::new(|_| {}));
    let outcome = std::panic::catch_unwind(|| commands::run(&cli));
    let failure = match outcome {
        Ok(Ok(())) => return ExitCode::SUCCESS,
        Ok(Err(e)) => Failure::from_error(&e),
        Err(payload) => Failure::panic(payload),
    };
    failure.report();
    ExitCode::from(failure.exit_code)
}
