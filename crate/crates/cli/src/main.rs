mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use config::{Cli, RunConfig, OUT_ENV};
use error::CliError;

fn run(cli: Cli) -> Result<RunConfig, CliError> {
    let env_out = std::env::var_os(OUT_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    let cfg = RunConfig::resolve(cli, env_out)?;
    let artifacts = commands::run_command(cfg.command, &cfg.params)?;
    output::write_artifacts(&cfg.out_dir, cfg.command, &cfg.params, &artifacts)?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(cfg) => {
            println!("{}: wrote {}", cfg.command.name(), cfg.out_dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
