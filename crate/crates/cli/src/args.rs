use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "qclass",
    version,
    about = "Probability that a random qubit or qutrit state has a nonnegative Wigner function"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Q over a grid of the moduli parameter ζ
    Curve,
    /// Minimum over ζ and Q(0) − Q(π/3) for each ensemble
    Table1,
    /// Qubit indicators
    Qubit,
    /// Degenerate-to-regular ratio over a ζ grid
    Ratio,
    /// Draw spectra from an ensemble
    Sample,
    /// Cross-check closed forms, quadrature and Monte Carlo
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnsembleArg {
    Hs,
    Bures,
    Bkm,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StratumArg {
    Regular,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Closed,
    Quad,
    Mc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Svg,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    #[arg(long, global = true, value_enum, default_value_t = EnsembleArg::All)]
    pub ensemble: EnsembleArg,
    #[arg(long, global = true, value_enum, default_value_t = StratumArg::Regular)]
    pub stratum: StratumArg,
    /// start:stop:count; start and stop accept `pi`, e.g. `0:pi/3:61`
    #[arg(long, global = true, default_value = "0:pi/3:61")]
    pub zeta_grid: String,
    #[arg(long, global = true, value_enum)]
    pub method: Option<MethodArg>,
    /// Quadrature relative tolerance (verify: agreement tolerance)
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Monte Carlo sample count (sample: number of spectra); accepts `1e6`
    #[arg(long, global = true, value_parser = parse_count)]
    pub samples: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

/// Parses a positive integer count, also in exponent notation (`1e6`).
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let x: f64 = s.parse().map_err(|_| format!("'{s}' is not a count"))?;
    if x >= 0.0 && x.fract() == 0.0 && x <= u64::MAX as f64 {
        Ok(x as u64)
    } else {
        Err(format!("'{s}' is not a non-negative integer"))
    }
}
