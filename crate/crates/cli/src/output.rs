use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::args::FormatArg;
use crate::config::{CliError, RunConfig};

pub fn provenance(cfg: &RunConfig) -> String {
    format!("qclass {} {}", env!("CARGO_PKG_VERSION"), cfg.describe())
}

/// Fixed-width scientific notation with 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV text: a `#` provenance line, the header, then `rows`.
pub fn csv_document(cfg: &RunConfig, header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut out = format!("# {}\n", provenance(cfg)).into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        let io_err = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(header).map_err(io_err)?;
        for row in rows {
            w.write_record(row).map_err(io_err)?;
        }
        w.flush().map_err(|e| CliError::Io(e.to_string()))?;
    }
    String::from_utf8(out).map_err(|e| CliError::Io(e.to_string()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

pub fn write_stdout(contents: &str) -> Result<(), CliError> {
    io::stdout()
        .lock()
        .write_all(contents.as_bytes())
        .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
}

/// Writes to `--out`, or to stdout when no path was given.
pub fn emit(cfg: &RunConfig, contents: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => write_file(path, contents),
        None => write_stdout(contents),
    }
}

/// Writes CSV and/or SVG according to `--format`. With `both`, the two files
/// share the `--out` stem.
pub fn emit_tabular(cfg: &RunConfig, csv: &str, svg: impl FnOnce() -> String) -> Result<(), CliError> {
    match (cfg.format, &cfg.out) {
        (FormatArg::Csv, _) => emit(cfg, csv),
        (FormatArg::Svg, Some(path)) => write_file(path, &svg()),
        (FormatArg::Both, Some(path)) => {
            write_file(&with_extension(path, "csv"), csv)?;
            write_file(&with_extension(path, "svg"), &svg())
        }
        (_, None) => Err(CliError::Config("SVG output needs --out".into())),
    }
}

fn with_extension(path: &Path, ext: &str) -> PathBuf {
    path.with_extension(ext)
}
