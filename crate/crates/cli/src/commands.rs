use std::f64::consts::FRAC_PI_6;

use qclass::ensembles::{EnsembleKind, SpectrumSampler};
use qclass::indicators::{
    asymmetry, compute, minimize_q_over_zeta, ratio_degenerate_to_regular, IndicatorRequest, IndicatorResult, Method,
};
use qclass::spectra::StratumLabel;

use crate::args::{MethodArg, StratumArg};
use crate::config::{CliError, RunConfig, DEFAULT_SAMPLE_COUNT};
use crate::output::{csv_document, emit, emit_tabular, num, provenance};
use crate::svg::{Plot, Series};

const CURVE_HEADER: [&str; 7] = ["zeta", "q", "method", "error_estimate", "ensemble", "stratum", "seed"];

/// Reference minima and asymmetries of the regular stratum:
/// (ensemble, q_min, zeta_min, Q(0) − Q(π/3)).
const TABLE1_REFERENCE: [(EnsembleKind, f64, f64, f64); 3] = [
    (EnsembleKind::HilbertSchmidt, 0.0006751, FRAC_PI_6, 0.0),
    (EnsembleKind::Bures, 0.0000891011, 0.525096, 0.0000472609),
    (EnsembleKind::Bkm, 0.0000121609, 0.527798, 0.0000216102),
];

/// Evaluates `f` on every grid point, spreading deterministic work across
/// `--workers` threads. Monte Carlo already parallelizes internally.
fn map_grid<T, F>(cfg: &RunConfig, points: &[f64], parallel: bool, f: F) -> Result<Vec<T>, CliError>
where
    T: Send,
    F: Fn(f64) -> Result<T, CliError> + Sync,
{
    if !parallel || cfg.workers == 1 || points.len() < 2 {
        return points.iter().map(|&z| f(z)).collect();
    }
    let chunk = points.len().div_ceil(cfg.workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = points
            .chunks(chunk)
            .map(|c| {
                let f = &f;
                scope.spawn(move || c.iter().map(|&z| f(z)).collect::<Result<Vec<T>, CliError>>())
            })
            .collect();
        let mut out = Vec::with_capacity(points.len());
        for h in handles {
            out.extend(h.join().expect("grid worker panicked")?);
        }
        Ok(out)
    })
}

fn is_mc(m: Method) -> bool {
    matches!(m, Method::MonteCarlo { .. })
}

fn seed_column(cfg: &RunConfig, m: Method) -> String {
    if is_mc(m) {
        cfg.seed.to_string()
    } else {
        String::new()
    }
}

fn warn_zero_hits(r: &IndicatorResult, what: &str) {
    if let Some(bound) = r.upper_bound {
        eprintln!("note: no classical samples for {what}; one-sided 95% upper bound on Q is {bound:.3e}");
    }
}

fn qutrit(
    cfg: &RunConfig,
    kind: EnsembleKind,
    stratum: &StratumLabel,
    zeta: f64,
    m: Method,
) -> Result<IndicatorResult, CliError> {
    let req = IndicatorRequest::qutrit(kind, stratum.clone(), zeta, m).map_err(|e| match e {
        qclass::Error::Unsupported(msg) | qclass::Error::Domain(msg) => CliError::Config(msg),
        other => CliError::Compute(other),
    })?;
    let r = compute(&req)?;
    warn_zero_hits(&r, &format!("{kind} {} ζ={zeta}", cfg.stratum_tag()));
    Ok(r)
}

pub fn curve(cfg: &RunConfig) -> Result<(), CliError> {
    let stratum = cfg.stratum_label();
    let points = cfg.grid.points();
    let mut rows = Vec::new();
    let mut series = Vec::new();
    for &kind in &cfg.ensembles {
        let m = cfg.method_for(kind, MethodArg::Quad);
        let results = map_grid(cfg, &points, !is_mc(m), |z| qutrit(cfg, kind, &stratum, z, m))?;
        for (z, r) in points.iter().zip(&results) {
            rows.push(vec![
                num(*z),
                num(r.q),
                m.tag().to_string(),
                num(r.error_estimate),
                kind.tag().to_string(),
                cfg.stratum_tag().to_string(),
                seed_column(cfg, m),
            ]);
        }
        series.push(Series {
            label: kind.label().to_string(),
            points: points.iter().zip(&results).map(|(z, r)| (*z, r.q)).collect(),
        });
    }
    let csv = csv_document(cfg, &CURVE_HEADER, &rows)?;
    let title = format!("Q(ζ), {} stratum", cfg.stratum_tag());
    emit_tabular(cfg, &csv, || {
        Plot {
            title: &title,
            y_label: "Q",
            log_y: true,
            comment: &provenance(cfg),
            series: &series,
        }
        .render()
    })
}

pub fn ratio(cfg: &RunConfig) -> Result<(), CliError> {
    let points = cfg.grid.points();
    let mut rows = Vec::new();
    let mut series = Vec::new();
    for &kind in &cfg.ensembles {
        let m = cfg.method_for(kind, MethodArg::Quad);
        let values = map_grid(cfg, &points, !is_mc(m), |z| {
            ratio_degenerate_to_regular(kind, z, m).map_err(CliError::from)
        })?;
        for (z, r) in points.iter().zip(&values) {
            rows.push(vec![
                num(*z),
                num(*r),
                m.tag().to_string(),
                kind.tag().to_string(),
                seed_column(cfg, m),
            ]);
        }
        series.push(Series {
            label: kind.label().to_string(),
            points: points.iter().copied().zip(values).collect(),
        });
    }
    let csv = csv_document(cfg, &["zeta", "ratio", "method", "ensemble", "seed"], &rows)?;
    emit_tabular(cfg, &csv, || {
        Plot {
            title: "Degenerate-to-regular ratio of Q",
            y_label: "Q degenerate / Q regular",
            log_y: false,
            comment: &provenance(cfg),
            series: &series,
        }
        .render()
    })
}

pub fn qubit(cfg: &RunConfig) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for &kind in &cfg.ensembles {
        let m = cfg.method_for(kind, MethodArg::Closed);
        let r = compute(&IndicatorRequest::qubit(kind, m)?)?;
        warn_zero_hits(&r, &format!("{kind} qubit"));
        rows.push(vec![
            kind.tag().to_string(),
            num(r.q),
            m.tag().to_string(),
            num(r.error_estimate),
            seed_column(cfg, m),
        ]);
    }
    emit(
        cfg,
        &csv_document(cfg, &["ensemble", "q", "method", "error_estimate", "seed"], &rows)?,
    )
}

pub fn table1(cfg: &RunConfig) -> Result<(), CliError> {
    let stratum = cfg.stratum_label();
    let mut rows = Vec::new();
    let mut report = String::from("ensemble  quantity      computed          reference         rel. deviation\n");
    for &kind in &cfg.ensembles {
        let fallback = if kind == EnsembleKind::HilbertSchmidt {
            MethodArg::Closed
        } else {
            MethodArg::Quad
        };
        let m = cfg.method_for(kind, fallback);
        let min = minimize_q_over_zeta(kind, &stratum, m)?;
        let asym = asymmetry(kind, &stratum, m)?;
        rows.push(vec![kind.tag().to_string(), num(min.q), num(min.zeta), num(asym)]);

        if cfg.stratum != StratumArg::Regular {
            continue;
        }
        if let Some(&(_, q_ref, z_ref, a_ref)) = TABLE1_REFERENCE.iter().find(|r| r.0 == kind) {
            for (name, got, want) in [
                ("q_min", min.q, q_ref),
                ("zeta_min", min.zeta, z_ref),
                ("asymmetry", asym, a_ref),
            ] {
                let dev = if want == 0.0 {
                    "n/a (reference 0)".to_string()
                } else {
                    format!("{:+.2e}", got / want - 1.0)
                };
                report.push_str(&format!(
                    "{:<9} {name:<13} {got:<17.10e} {want:<17.7e} {dev}\n",
                    kind.tag()
                ));
            }
        }
    }
    if cfg.stratum == StratumArg::Regular {
        eprint!("{report}");
    }
    emit(
        cfg,
        &csv_document(cfg, &["ensemble", "q_min", "zeta_min", "asymmetry"], &rows)?,
    )
}

pub fn sample(cfg: &RunConfig) -> Result<(), CliError> {
    let kind = cfg.ensembles[0];
    let count = cfg.samples.unwrap_or(DEFAULT_SAMPLE_COUNT);
    let mut sampler = SpectrumSampler::for_stratum(kind, &cfg.stratum_label(), cfg.seed)?;
    let mut rows = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let s = sampler.sample()?;
        rows.push(s.values().iter().map(|&x| num(x)).collect());
    }
    emit(cfg, &csv_document(cfg, &["r1", "r2", "r3"], &rows)?)
}
