//! Report envelope and its JSON or CSV rendering.

use std::fs::File;
use std::io::{self, Write};

use serde::Serialize;
use serde_json::Value;

use crate::cli::{Command, Format};
use crate::commands::Outcome;
use crate::config::Config;
use crate::error::CliError;

#[derive(Debug, Serialize)]
pub struct RunReport<'a> {
    pub subcommand: &'static str,
    pub config: &'a Config,
    pub results: Value,
    pub elapsed_s: f64,
    pub version: &'static str,
}

/// Write the report to `--output` or stdout.
pub fn emit(cmd: Command, cfg: &Config, outcome: Outcome, elapsed_s: f64) -> Result<(), CliError> {
    let (mut sink, name): (Box<dyn Write>, String) = match &cfg.output {
        Some(path) => (
            Box::new(File::create(path).map_err(|e| CliError::io(path.display(), e))?),
            path.display().to_string(),
        ),
        None => (Box::new(io::stdout().lock()), "stdout".into()),
    };
    match cfg.format {
        Format::Json => {
            let report = RunReport {
                subcommand: cmd.name(),
                config: cfg,
                results: outcome.results,
                elapsed_s,
                version: env!("CARGO_PKG_VERSION"),
            };
            serde_json::to_writer_pretty(&mut sink, &report)?;
            writeln!(sink).map_err(|e| CliError::io(&name, e))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut sink);
            w.write_record(&outcome.table.header)?;
            for row in &outcome.table.rows {
                w.write_record(row)?;
            }
            w.flush().map_err(|e| CliError::io(&name, e))?;
        }
    }
    sink.flush().map_err(|e| CliError::io(&name, e))
}
