use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

mod cli;
mod commands;
mod error;
mod output;
mod units;

use cli::Cli;
use error::CliError;

fn execute(cli: &Cli) -> Result<(), CliError> {
    let cfg = commands::effective_config(&cli.global)?;
    if cli.global.verbose {
        eprintln!("# effective configuration ({})", cfg.fingerprint());
        for line in cfg.to_kv_string().lines() {
            eprintln!("# {line}");
        }
    }
    let records = commands::run(&cli.command, &cfg)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    output::render(&records, cli.global.format, &mut out)?;
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::BrokenPipe) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
