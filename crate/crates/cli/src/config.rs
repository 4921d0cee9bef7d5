use std::fmt;
use std::path::PathBuf;

use qclass::ensembles::EnsembleKind;
use qclass::indicators::{Method, DEFAULT_MC_SAMPLES};
use qclass::spectra::StratumLabel;

use crate::args::{Cli, Command, EnsembleArg, FormatArg, MethodArg, Options, StratumArg};
use crate::grid::ZetaGrid;

pub const DEFAULT_SAMPLE_COUNT: u64 = 1000;

/// Failure classes, one per exit code.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
    Compute(qclass::Error),
    VerifyFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Io(_) => 2,
            CliError::Compute(_) => 3,
            CliError::VerifyFailed(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "invalid configuration: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Compute(e) => write!(f, "computation failed: {e}"),
            CliError::VerifyFailed(n) => write!(f, "verification failed: {n} check(s) did not pass"),
        }
    }
}

impl From<qclass::Error> for CliError {
    fn from(e: qclass::Error) -> Self {
        CliError::Compute(e)
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub ensembles: Vec<EnsembleKind>,
    ensemble_arg: EnsembleArg,
    pub stratum: StratumArg,
    pub grid: ZetaGrid,
    pub method: Option<MethodArg>,
    pub tol: Option<f64>,
    pub samples: Option<u64>,
    pub seed: u64,
    pub workers: usize,
    pub out: Option<PathBuf>,
    pub format: FormatArg,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let Options {
            ensemble,
            stratum,
            zeta_grid,
            method,
            tol,
            samples,
            seed,
            workers,
            out,
            format,
        } = cli.options;
        let grid = ZetaGrid::parse(&zeta_grid).map_err(CliError::Config)?;
        let ensembles = match ensemble {
            EnsembleArg::Hs => vec![EnsembleKind::HilbertSchmidt],
            EnsembleArg::Bures => vec![EnsembleKind::Bures],
            EnsembleArg::Bkm => vec![EnsembleKind::Bkm],
            EnsembleArg::All => EnsembleKind::ALL.to_vec(),
        };
        if let Some(t) = tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Config(format!("--tol must be positive, got {t}")));
            }
        }
        if samples == Some(0) {
            return Err(CliError::Config("--samples must be positive".into()));
        }
        if workers == 0 {
            return Err(CliError::Config("--workers must be at least 1".into()));
        }
        let cfg = Self {
            command: cli.command,
            ensembles,
            ensemble_arg: ensemble,
            stratum,
            grid,
            method,
            tol,
            samples,
            seed,
            workers,
            out,
            format,
        };
        cfg.check_command()?;
        Ok(cfg)
    }

    fn check_command(&self) -> Result<(), CliError> {
        let qutrit = matches!(self.command, Command::Curve | Command::Table1 | Command::Ratio);
        if qutrit && self.method == Some(MethodArg::Closed) {
            if let Some(k) = self.ensembles.iter().find(|k| **k != EnsembleKind::HilbertSchmidt) {
                return Err(CliError::Config(format!(
                    "no closed form for the {} qutrit indicator; use --method quad or mc",
                    k.label()
                )));
            }
        }
        let svg_capable = matches!(self.command, Command::Curve | Command::Ratio);
        if self.format != FormatArg::Csv && !svg_capable {
            return Err(CliError::Config(
                "SVG output is available for curve and ratio only".into(),
            ));
        }
        if self.format != FormatArg::Csv && self.out.is_none() {
            return Err(CliError::Config("SVG output needs --out".into()));
        }
        if self.command == Command::Sample && self.ensembles.len() != 1 {
            return Err(CliError::Config("sample needs a single --ensemble".into()));
        }
        Ok(())
    }

    pub fn stratum_label(&self) -> StratumLabel {
        match self.stratum {
            StratumArg::Regular => StratumLabel::regular(3).expect("N = 3 is supported"),
            StratumArg::Degenerate => StratumLabel::qutrit_degenerate(),
        }
    }

    pub fn stratum_tag(&self) -> &'static str {
        match self.stratum {
            StratumArg::Regular => "regular",
            StratumArg::Degenerate => "degenerate",
        }
    }

    pub fn mc_samples(&self) -> u64 {
        self.samples.unwrap_or(DEFAULT_MC_SAMPLES)
    }

    /// The indicator method for `kind`, falling back to `fallback` when no
    /// `--method` was given.
    pub fn method_for(&self, kind: EnsembleKind, fallback: MethodArg) -> Method {
        match self.method.unwrap_or(fallback) {
            MethodArg::Closed => Method::ClosedForm,
            MethodArg::Quad => match self.tol {
                Some(rel_tol) => Method::Quadrature { rel_tol },
                None => Method::default_quadrature(kind),
            },
            MethodArg::Mc => Method::MonteCarlo {
                samples: self.mc_samples(),
                seed: self.seed,
                workers: self.workers,
            },
        }
    }

    /// Every setting except the output path, for provenance headers.
    pub fn describe(&self) -> String {
        let value = |v: Option<String>| v.unwrap_or_else(|| "default".into());
        format!(
            "command={} ensemble={} stratum={} zeta-grid={} method={} tol={} samples={} seed={} workers={} format={}",
            command_name(self.command),
            enum_name(self.ensemble_arg),
            self.stratum_tag(),
            self.grid.spec(),
            value(self.method.map(enum_name)),
            value(self.tol.map(|t| format!("{t:e}"))),
            value(self.samples.map(|s| s.to_string())),
            self.seed,
            self.workers,
            enum_name(self.format),
        )
    }
}

pub fn command_name(c: Command) -> &'static str {
    match c {
        Command::Curve => "curve",
        Command::Table1 => "table1",
        Command::Qubit => "qubit",
        Command::Ratio => "ratio",
        Command::Sample => "sample",
        Command::Verify => "verify",
    }
}

fn enum_name<T: clap::ValueEnum>(v: T) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn config(args: &[&str]) -> Result<RunConfig, CliError> {
        let mut full = vec!["qclass"];
        full.extend_from_slice(args);
        RunConfig::from_cli(Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn closed_form_only_for_hilbert_schmidt_qutrits() {
        assert!(config(&["curve", "--method", "closed"]).is_err());
        assert!(config(&["curve", "--method", "closed", "--ensemble", "hs"]).is_ok());
        assert!(config(&["qubit", "--method", "closed"]).is_ok());
    }

    #[test]
    fn svg_needs_path_and_plot_command() {
        assert!(config(&["curve", "--format", "svg"]).is_err());
        assert!(config(&["curve", "--format", "svg", "--out", "x.svg"]).is_ok());
        assert!(config(&["table1", "--format", "both", "--out", "x"]).is_err());
    }

    #[test]
    fn describe_omits_output_path() {
        let cfg = config(&["curve", "--out", "/tmp/somewhere.csv", "--seed", "7"]).unwrap();
        let d = cfg.describe();
        assert!(!d.contains("somewhere"));
        assert!(d.contains("seed=7") && d.contains("zeta-grid=0:pi/3:61"));
    }

    #[test]
    fn rejects_bad_numbers() {
        assert!(config(&["curve", "--tol", "0"]).is_err());
        assert!(config(&["curve", "--workers", "0"]).is_err());
        assert!(config(&["curve", "--samples", "0"]).is_err());
        assert!(config(&["sample"]).is_err());
        assert!(config(&["sample", "--ensemble", "bures"]).is_ok());
    }
}
