use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = lowdeg_cli::Cli::parse();
    match lowdeg_cli::run(cli) {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
