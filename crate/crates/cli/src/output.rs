use std::io::Write;

use serde::Serialize;

use crate::config::Format;
use crate::error::CliError;

fn io_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("cannot write output: {e}"))
}

pub fn json(value: &impl Serialize) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(io_err)?;
    writeln!(out).map_err(io_err)
}

/// Flat rows: CSV with a header, or a JSON array.
pub fn table<R: Serialize>(format: Format, rows: &[R]) -> Result<(), CliError> {
    match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout().lock());
            for r in rows {
                w.serialize(r).map_err(io_err)?;
            }
            w.flush().map_err(io_err)
        }
    }
}

pub fn require_json(format: Format, what: &str) -> Result<(), CliError> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Input(format!(
            "{what} output is nested; only --format json is available"
        ))),
    }
}
