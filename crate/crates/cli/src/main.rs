//! `fourprimes`: command-line harness over the fourprimes-core computations.

mod cli;
mod commands;
mod config;
mod error;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use cli::{Cli, Flags};
use config::Config;
use error::CliError;

fn run(cli: Cli) -> Result<bool, CliError> {
    let file = match &cli.flags.config {
        Some(path) => Flags::read(path)?,
        None => Flags::default(),
    };
    let mut cfg = Config::resolve(cli.command, cli.flags.over(file))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", cfg.jobs)))?;
    let start = Instant::now();
    let outcome = pool.install(|| commands::execute(cli.command, &mut cfg))?;
    let passed = outcome.passed;
    report::emit(cli.command, &cfg, outcome, start.elapsed().as_secs_f64())?;
    Ok(passed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("fourprimes: {e}");
            ExitCode::from(2)
        }
    }
}
