//! Cross-method consistency suite behind `qclass verify`.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};

use qclass::ensembles::EnsembleKind;
use qclass::indicators::{compute, IndicatorRequest, IndicatorResult, Method};
use qclass::spectra::StratumLabel;
use serde::Serialize;

use crate::config::{CliError, RunConfig};
use crate::output::{emit, provenance};

const DEFAULT_AGREEMENT_TOL: f64 = 1e-6;
const GRID_POINTS: usize = 21;
const MC_SIGMAS: f64 = 4.0;
const MIRROR_OFFSETS: [f64; 4] = [0.05, 0.1, 0.15, FRAC_PI_6];
const MIRROR_REL_TOL: f64 = 1e-13;

#[derive(Debug, Serialize)]
pub struct Check {
    pub check: String,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
struct Report<'a> {
    provenance: String,
    passed: usize,
    failed: usize,
    checks: &'a [Check],
}

fn within(check: String, expected: f64, actual: f64, tolerance: f64) -> Check {
    Check {
        check,
        expected,
        actual,
        tolerance,
        pass: (actual - expected).abs() <= tolerance,
    }
}

fn above(check: String, bound: f64, actual: f64, tolerance: f64) -> Check {
    Check {
        check,
        expected: bound,
        actual,
        tolerance,
        pass: actual > bound + tolerance,
    }
}

fn strata() -> [(StratumLabel, &'static str); 2] {
    [
        (StratumLabel::regular(3).expect("N = 3 is supported"), "regular"),
        (StratumLabel::qutrit_degenerate(), "degenerate"),
    ]
}

fn grid() -> Vec<f64> {
    (0..GRID_POINTS)
        .map(|i| {
            if i + 1 == GRID_POINTS {
                FRAC_PI_3
            } else {
                FRAC_PI_3 * i as f64 / (GRID_POINTS - 1) as f64
            }
        })
        .collect()
}

fn qutrit(kind: EnsembleKind, stratum: &StratumLabel, zeta: f64, m: Method) -> qclass::Result<IndicatorResult> {
    compute(&IndicatorRequest::qutrit(kind, stratum.clone(), zeta, m)?)
}

fn quad(kind: EnsembleKind) -> Method {
    Method::default_quadrature(kind)
}

pub fn run_checks(cfg: &RunConfig) -> qclass::Result<Vec<Check>> {
    let tol = cfg.tol.unwrap_or(DEFAULT_AGREEMENT_TOL);
    let mut checks = Vec::new();

    for kind in EnsembleKind::ALL {
        let closed = compute(&IndicatorRequest::qubit(kind, Method::ClosedForm)?)?.q;
        let q = compute(&IndicatorRequest::qubit(kind, quad(kind))?)?.q;
        checks.push(within(
            format!("qubit {kind} closed vs quadrature"),
            closed,
            q,
            tol * closed,
        ));
    }

    let hs = EnsembleKind::HilbertSchmidt;
    for (stratum, name) in strata() {
        for zeta in grid() {
            let closed = qutrit(hs, &stratum, zeta, Method::ClosedForm)?.q;
            let q = qutrit(hs, &stratum, zeta, quad(hs))?.q;
            checks.push(within(
                format!("hs {name} closed vs quadrature zeta={zeta:.6}"),
                closed,
                q,
                tol * closed,
            ));
        }
    }

    let samples = cfg.mc_samples();
    for kind in EnsembleKind::ALL {
        for (stratum, name) in strata() {
            for zeta in [0.0, FRAC_PI_6, FRAC_PI_3] {
                let reference = qutrit(kind, &stratum, zeta, quad(kind))?.q;
                let mc = qutrit(
                    kind,
                    &stratum,
                    zeta,
                    Method::MonteCarlo {
                        samples,
                        seed: cfg.seed,
                        workers: cfg.workers,
                    },
                )?
                .q;
                let sigma = (reference * (1.0 - reference) / samples as f64).sqrt();
                checks.push(within(
                    format!("{kind} {name} monte carlo vs quadrature zeta={zeta:.6} ({MC_SIGMAS} sigma)"),
                    reference,
                    mc,
                    MC_SIGMAS * sigma,
                ));
            }
        }
    }

    for (stratum, name) in strata() {
        for delta in MIRROR_OFFSETS {
            let lo = qutrit(hs, &stratum, FRAC_PI_6 - delta, Method::ClosedForm)?.q;
            let hi = qutrit(hs, &stratum, FRAC_PI_6 + delta, Method::ClosedForm)?.q;
            checks.push(within(
                format!("hs {name} mirror symmetry delta={delta:.6}"),
                lo,
                hi,
                MIRROR_REL_TOL * lo,
            ));
        }
    }
    for kind in [EnsembleKind::Bures, EnsembleKind::Bkm] {
        let regular = &strata()[0].0;
        for delta in MIRROR_OFFSETS {
            let lo = qutrit(kind, regular, FRAC_PI_6 - delta, quad(kind))?;
            let hi = qutrit(kind, regular, FRAC_PI_6 + delta, quad(kind))?;
            checks.push(above(
                format!("{kind} regular broken symmetry Q(pi/6-d)-Q(pi/6+d) delta={delta:.6}"),
                0.0,
                lo.q - hi.q,
                lo.error_estimate + hi.error_estimate,
            ));
        }
    }

    for (stratum, name) in strata() {
        for zeta in grid() {
            let q = EnsembleKind::ALL.map(|k| qutrit(k, &stratum, zeta, quad(k)).map(|r| r.q));
            let [hs_q, bures_q, bkm_q] = [q[0].clone()?, q[1].clone()?, q[2].clone()?];
            checks.push(above(
                format!("{name} ordering hs > bures zeta={zeta:.6}"),
                bures_q,
                hs_q,
                0.0,
            ));
            checks.push(above(
                format!("{name} ordering bures > bkm zeta={zeta:.6}"),
                bkm_q,
                bures_q,
                0.0,
            ));
        }
    }
    Ok(checks)
}

pub fn verify(cfg: &RunConfig) -> Result<(), CliError> {
    let checks = run_checks(cfg)?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    let report = Report {
        provenance: provenance(cfg),
        passed: checks.len() - failed,
        failed,
        checks: &checks,
    };
    let mut json = serde_json::to_string_pretty(&report).map_err(|e| CliError::Io(e.to_string()))?;
    json.push('\n');
    emit(cfg, &json)?;
    for c in checks.iter().filter(|c| !c.pass) {
        eprintln!(
            "FAIL {}: expected {:e}, actual {:e}, tolerance {:e}",
            c.check, c.expected, c.actual, c.tolerance
        );
    }
    eprintln!("verify: {} passed, {failed} failed", checks.len() - failed);
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::VerifyFailed(failed))
    }
}
