use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use qillum_cli::args::{Cli, Command};
use qillum_cli::config::SweepConfig;
use qillum_cli::{commands, CliError, Result};

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Bounds(a) => commands::bounds(&a)?.emit(a.out.as_deref()),
        Command::Fig1a(a) => commands::fig1a(&a)?.emit(a.out.as_deref()),
        Command::Fig1b(a) => commands::fig1b(&a)?.emit(a.out.as_deref()),
        Command::Fig2(a) => commands::fig2(&a)?.emit(a.out.as_deref()),
        Command::Sweep(a) => {
            let config = SweepConfig::load(&a.config)?;
            let out = a.out.clone().or_else(|| config.out.clone());
            commands::sweep(&config)?.emit(out.as_deref())
        }
        Command::VerifyOracle(a) => {
            let report = commands::verify_oracle(&a)?;
            print!("{}", report.text);
            if report.failures > 0 {
                return Err(CliError::ChecksFailed(format!("{} oracle check(s) failed", report.failures)));
            }
            Ok(())
        }
    }
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
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
