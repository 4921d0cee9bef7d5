//! The classicality indicator `Q` of a stratum: the fraction of the
//! ensemble's measure on that stratum carried by classical states.
//!
//! Three routes are available and deliberately independent of each other:
//!
//! - [`Method::ClosedForm`]: analytic results for every qubit ensemble and for
//!   Hilbert–Schmidt qutrits;
//! - [`Method::Quadrature`]: numerator and denominator integrals of the joint
//!   density, with the classical region cut out exactly;
//! - [`Method::MonteCarlo`]: the classical fraction of sampled spectra.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI};
use std::fmt;

use crate::ensembles::{density_unchecked, worker_seed, EnsembleKind, SpectrumSampler};
use crate::error::{domain, Error, Result};
use crate::optimize::{scan_then_golden, Minimum};
use crate::quadrature::{Estimate, Integrator};
use crate::spectra::{DegeneracyType, StratumLabel};
use crate::wigner::{
    pairing, pairing_values, sw_spectrum_qubit, sw_spectrum_qutrit, ModuliParameter, SWKernelSpectrum,
};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Default quadrature relative tolerance for Hilbert–Schmidt.
pub const HS_QUADRATURE_TOLERANCE: f64 = 1e-8;
/// Default quadrature relative tolerance for the monotone ensembles.
pub const MONOTONE_QUADRATURE_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_MC_SAMPLES: u64 = 1_000_000;
/// Quadrature evaluations allowed per indicator before giving up.
pub const MAX_QUADRATURE_EVALS: usize = 1_000_000;
/// Grid nodes scanned over `[0, π/3]` before golden-section refinement.
pub const ZETA_SCAN_POINTS: usize = 61;
pub const ZETA_RESOLUTION: f64 = 1e-6;

/// How to compute `Q`, with the method-specific precision setting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    ClosedForm,
    Quadrature { rel_tol: f64 },
    MonteCarlo { samples: u64, seed: u64, workers: usize },
}

impl Method {
    /// Quadrature at the default tolerance for `kind`.
    pub fn default_quadrature(kind: EnsembleKind) -> Self {
        let rel_tol = if kind.is_monotone() {
            MONOTONE_QUADRATURE_TOLERANCE
        } else {
            HS_QUADRATURE_TOLERANCE
        };
        Method::Quadrature { rel_tol }
    }

    pub fn monte_carlo(samples: u64, seed: u64) -> Self {
        Method::MonteCarlo {
            samples,
            seed,
            workers: 1,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed",
            Method::Quadrature { .. } => "quad",
            Method::MonteCarlo { .. } => "mc",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::ClosedForm => f.write_str("closed"),
            Method::Quadrature { rel_tol } => write!(f, "quad(tol={rel_tol:e})"),
            Method::MonteCarlo { samples, seed, workers } => {
                write!(f, "mc(samples={samples},seed={seed},workers={workers})")
            }
        }
    }
}

/// A fully specified indicator computation.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorRequest {
    ensemble: EnsembleKind,
    stratum: StratumLabel,
    zeta: Option<ModuliParameter>,
    method: Method,
}

impl IndicatorRequest {
    /// Validates the request: qubits take no moduli parameter, qutrits need
    /// one, and closed forms exist only for qubits and Hilbert–Schmidt
    /// qutrits.
    pub fn new(
        ensemble: EnsembleKind,
        stratum: StratumLabel,
        zeta: Option<ModuliParameter>,
        method: Method,
    ) -> Result<Self> {
        let n = stratum.dim();
        match (n, zeta) {
            (2, None) | (3, Some(_)) => {}
            (2, Some(_)) => return domain("qubit kernels have no moduli parameter"),
            (3, None) => return domain("qutrit indicators need a moduli parameter ζ"),
            _ => {
                return Err(Error::Unsupported(format!(
                    "indicators are implemented for N = 2, 3; got N = {n}"
                )))
            }
        }
        match method {
            Method::ClosedForm if n == 3 && ensemble != EnsembleKind::HilbertSchmidt => {
                return Err(Error::Unsupported(format!(
                    "no closed form for the {} qutrit indicator",
                    ensemble.label()
                )));
            }
            Method::Quadrature { rel_tol } if !(rel_tol > 0.0 && rel_tol.is_finite()) => {
                return domain(format!("quadrature tolerance must be positive, got {rel_tol}"));
            }
            Method::MonteCarlo { samples, workers, .. } if samples == 0 || workers == 0 => {
                return domain("Monte Carlo needs at least one sample and one worker");
            }
            _ => {}
        }
        Ok(Self {
            ensemble,
            stratum,
            zeta,
            method,
        })
    }

    pub fn qubit(ensemble: EnsembleKind, method: Method) -> Result<Self> {
        Self::new(ensemble, StratumLabel::regular(2)?, None, method)
    }

    pub fn qutrit(ensemble: EnsembleKind, stratum: StratumLabel, zeta: f64, method: Method) -> Result<Self> {
        Self::new(ensemble, stratum, Some(ModuliParameter::new(zeta)?), method)
    }

    pub fn ensemble(&self) -> EnsembleKind {
        self.ensemble
    }

    pub fn stratum(&self) -> &StratumLabel {
        &self.stratum
    }

    pub fn zeta(&self) -> Option<ModuliParameter> {
        self.zeta
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn kernel(&self) -> SWKernelSpectrum {
        match self.zeta {
            Some(z) => sw_spectrum_qutrit(z),
            None => sw_spectrum_qubit(),
        }
    }
}

/// A computed indicator with its uncertainty.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorResult {
    pub q: f64,
    /// Quadrature error bound or Monte Carlo standard error.
    pub error_estimate: f64,
    /// One-sided 95% upper bound, reported when Monte Carlo saw no classical
    /// sample and the standard error degenerates to zero.
    pub upper_bound: Option<f64>,
    pub request: IndicatorRequest,
}

impl IndicatorResult {
    fn exact(q: f64, request: IndicatorRequest) -> Self {
        Self {
            q,
            error_estimate: 0.0,
            upper_bound: None,
            request,
        }
    }

    pub fn method_tag(&self) -> &'static str {
        self.request.method.tag()
    }
}

/// Closed-form qubit indicator; the classical region is the Bloch ball of
/// radius `1/√3`.
pub fn q_qubit_closed_form(ensemble: EnsembleKind) -> IndicatorResult {
    let q = qubit_closed_value(ensemble);
    let request =
        IndicatorRequest::qubit(ensemble, Method::ClosedForm).expect("closed-form qubit requests are always valid");
    IndicatorResult::exact(q, request)
}

fn qubit_closed_value(ensemble: EnsembleKind) -> f64 {
    let asin = (1.0 / SQRT_3).asin();
    match ensemble {
        EnsembleKind::HilbertSchmidt => 1.0 / (3.0 * SQRT_3),
        EnsembleKind::Bures => 2.0 / PI * (asin - 2f64.sqrt() / 3.0),
        // arcoth √3 = artanh(1/√3)
        EnsembleKind::Bkm => 2.0 / PI * (asin - (2.0f64 / 3.0).sqrt() * (1.0 / SQRT_3).atanh()),
    }
}

fn hs_regular_value(zeta: f64) -> f64 {
    let c2 = (zeta - FRAC_PI_6).cos().powi(2);
    (20.0 * c2 + 1.0) / (128.0 * (4.0 * c2 - 1.0).powi(5))
}

fn hs_degenerate_value(zeta: f64) -> f64 {
    let csc = 1.0 / (zeta + FRAC_PI_6).sin();
    let sec = 1.0 / zeta.cos();
    (csc.powi(5) + sec.powi(5)) / 1056.0
}

/// Closed-form Hilbert–Schmidt indicator of the regular qutrit stratum.
pub fn q_hs_qutrit_regular_closed_form(zeta: ModuliParameter) -> IndicatorResult {
    let request = IndicatorRequest::new(
        EnsembleKind::HilbertSchmidt,
        StratumLabel::regular(3).expect("N = 3 is valid"),
        Some(zeta),
        Method::ClosedForm,
    )
    .expect("valid closed-form request");
    IndicatorResult::exact(hs_regular_value(zeta.value()), request)
}

/// Closed-form Hilbert–Schmidt indicator of the degenerate qutrit stratum,
/// both edges `r_1 = r_2` and `r_2 = r_3` together.
pub fn q_hs_qutrit_degenerate_closed_form(zeta: ModuliParameter) -> IndicatorResult {
    let request = IndicatorRequest::new(
        EnsembleKind::HilbertSchmidt,
        StratumLabel::qutrit_degenerate(),
        Some(zeta),
        Method::ClosedForm,
    )
    .expect("valid closed-form request");
    IndicatorResult::exact(hs_degenerate_value(zeta.value()), request)
}

/// Computes `Q` by whichever method the request names.
pub fn compute(req: &IndicatorRequest) -> Result<IndicatorResult> {
    match req.method {
        Method::ClosedForm => closed_form(req),
        Method::Quadrature { .. } => q_quadrature(req),
        Method::MonteCarlo { .. } => q_monte_carlo(req),
    }
}

fn closed_form(req: &IndicatorRequest) -> Result<IndicatorResult> {
    let parts = req.stratum.degeneracy().multiplicities();
    let q = match (req.zeta, parts) {
        (_, [_]) => scalar_face_q(req),
        (None, _) => qubit_closed_value(req.ensemble),
        (Some(z), [1, 1, 1]) => hs_regular_value(z.value()),
        (Some(z), [2, 1]) => hs_degenerate_value(z.value()),
        _ => {
            return Err(Error::Unsupported(format!(
                "no closed form for stratum {}",
                req.stratum
            )))
        }
    };
    Ok(IndicatorResult::exact(q, req.clone()))
}

// The one-point stratum of the maximally mixed state.
fn scalar_face_q(req: &IndicatorRequest) -> f64 {
    let n = req.stratum.dim();
    let w = pairing_values(&vec![1.0 / n as f64; n], req.kernel().values());
    if w >= 0.0 {
        1.0
    } else {
        0.0
    }
}

/// `Q` as a ratio of two integrals of the joint density, summed over every
/// ordering of the stratum's multiplicities.
///
/// - qubit and degenerate qutrit faces are one-dimensional, parameterized by
///   the smallest eigenvalue; the classical part of each face is an interval
///   found by solving the (linear) pairing for its endpoint;
/// - the regular qutrit face is integrated with `r_1` outside and `r_3`
///   inside; the classical region is the half-plane cut by the line where
///   the pairing vanishes, and its inner limit is solved exactly.
///
/// Monotone densities carry an `r^{-1/2}` (BKM: times log²) singularity at
/// the `r_min = 0` face, removed with the substitution `r_min = u^4`.
pub fn q_quadrature(req: &IndicatorRequest) -> Result<IndicatorResult> {
    let Method::Quadrature { rel_tol } = req.method else {
        return Err(Error::Unsupported(format!(
            "q_quadrature called with method {}",
            req.method
        )));
    };
    if req.stratum.degeneracy().parts() == 1 {
        return Ok(IndicatorResult::exact(scalar_face_q(req), req.clone()));
    }
    let kernel = req.kernel();
    let mut num = Estimate::exact(0.0);
    let mut den = Estimate::exact(0.0);
    for face in req.stratum.degeneracy().orderings() {
        let (n, d) = face_integrals(req.ensemble, &face, kernel.values(), rel_tol)?;
        num.value += n.value;
        num.error += n.error;
        den.value += d.value;
        den.error += d.error;
    }
    if den.value.is_nan() || den.value <= 0.0 {
        return Err(Error::Convergence(format!(
            "stratum volume {} is not positive",
            den.value
        )));
    }
    let q = (num.value / den.value).clamp(0.0, 1.0);
    let error_estimate = if num.value > 0.0 {
        q * (num.error / num.value + den.error / den.value)
    } else {
        num.error / den.value
    };
    Ok(IndicatorResult {
        q,
        error_estimate,
        upper_bound: None,
        request: req.clone(),
    })
}

/// (classical, total) integrals over one face of the ordered simplex.
fn face_integrals(
    kind: EnsembleKind,
    face: &DegeneracyType,
    kernel: &[f64],
    rel_tol: f64,
) -> Result<(Estimate, Estimate)> {
    let integrator = Integrator {
        rel_tol,
        abs_tol: 0.0,
        max_evals: MAX_QUADRATURE_EVALS,
    };
    match face.multiplicities() {
        [k1, k2] => Ok(edge_integrals(kind, [*k1, *k2], kernel, &integrator)?),
        [1, 1, 1] => Ok(regular_qutrit_integrals(kind, kernel, &integrator)?),
        other => Err(Error::Unsupported(format!(
            "quadrature over face {other:?} is not implemented"
        ))),
    }
}

fn substitution_power(kind: EnsembleKind) -> i32 {
    if kind.is_monotone() {
        4
    } else {
        1
    }
}

/// Face `(k1, k2)`: `r_1 = (1 − k2 b)/k1`, `b ∈ (0, 1/N)`, measure `db / k1`.
fn edge_integrals(
    kind: EnsembleKind,
    ks: [usize; 2],
    kernel: &[f64],
    integrator: &Integrator,
) -> Result<(Estimate, Estimate)> {
    let (k1, k2) = (ks[0] as f64, ks[1] as f64);
    let n = ks[0] + ks[1];
    let b_max = 1.0 / n as f64;
    let p = substitution_power(kind);

    let spectrum = |b: f64| -> Vec<f64> {
        let r1 = (1.0 - k2 * b) / k1;
        let mut v = vec![r1; ks[0]];
        v.extend(std::iter::repeat_n(b, ks[1]));
        v
    };
    // b = t^p b_max
    let integrand = |t: f64| {
        let b = t.powi(p) * b_max;
        let r1 = (1.0 - k2 * b) / k1;
        let jac = b_max * p as f64 * t.powi(p - 1) / k1;
        density_unchecked(kind, &ks, &[r1, b]) * jac
    };

    let total = integrator.integrate(integrand, 0.0, 1.0, &[])?;

    // The pairing is affine in b and positive at the maximally mixed end.
    let w0 = pairing_values(&spectrum(0.0), kernel);
    let w1 = pairing_values(&spectrum(b_max), kernel);
    let b_star = if w0 >= 0.0 { 0.0 } else { b_max * w0 / (w0 - w1) };
    let t_star = (b_star / b_max).powf(1.0 / p as f64);
    let classical = integrator.integrate(integrand, t_star, 1.0, &[])?;
    Ok((classical, total))
}

/// Regular qutrit face, coordinates `(r_1, r_3)` with `r_2 = 1 − r_1 − r_3`:
/// `r_1 ∈ [1/3, 1]`, `r_3 ∈ [max(0, 1 − 2 r_1), (1 − r_1)/2]`.
fn regular_qutrit_integrals(
    kind: EnsembleKind,
    kernel: &[f64],
    integrator: &Integrator,
) -> Result<(Estimate, Estimate)> {
    let (pi1, pi2, pi3) = (kernel[0], kernel[1], kernel[2]);
    let p = substitution_power(kind);
    let inner_integrator = Integrator {
        rel_tol: integrator.rel_tol * 0.1,
        ..*integrator
    };
    let lower = |r1: f64| (1.0 - 2.0 * r1).max(0.0);
    let upper = |r1: f64| 0.5 * (1.0 - r1);
    // Pairing r1 π3 + r2 π2 + r3 π1 = π2 + r1 (π3 − π2) + r3 (π1 − π2).
    let pairing_at = |r1: f64, r3: f64| pi2 + r1 * (pi3 - pi2) + r3 * (pi1 - pi2);

    let inner = |r1: f64, lo: f64, hi: f64| -> Result<Estimate> {
        if hi <= lo {
            return Ok(Estimate {
                value: 0.0,
                error: 0.0,
                evals: 0,
            });
        }
        let root = |x: f64| x.powf(1.0 / p as f64);
        inner_integrator.integrate(
            |u| {
                let r3 = u.powi(p);
                let r2 = 1.0 - r1 - r3;
                density_unchecked(kind, &[1, 1, 1], &[r1, r2, r3]) * p as f64 * u.powi(p - 1)
            },
            root(lo),
            root(hi),
            &[],
        )
    };

    let total = integrator.integrate_nested(|r1| inner(r1, lower(r1), upper(r1)), 1.0 / 3.0, 1.0, &[0.5])?;

    // Classical inner range at fixed r1: {r3 ≥ r3*} since π1 ≥ π2.
    let classical_range = |r1: f64| -> (f64, f64) {
        let (lo, hi) = (lower(r1), upper(r1));
        let slope = pi1 - pi2;
        let at_lo = pairing_at(r1, lo);
        if at_lo >= 0.0 {
            return (lo, hi);
        }
        if slope <= 0.0 {
            return (hi, hi);
        }
        let cut = lo - at_lo / slope;
        (cut.min(hi), hi)
    };

    // Kinks of the outer integrand: where the cut line meets the face edges.
    let mut breaks = vec![0.5];
    let edges: [(f64, f64); 3] = [
        // r3 = (1 − r1)/2
        (pi2 + 0.5 * (pi1 - pi2), (pi3 - pi2) - 0.5 * (pi1 - pi2)),
        // r3 = 1 − 2 r1
        (pi2 + (pi1 - pi2), (pi3 - pi2) - 2.0 * (pi1 - pi2)),
        // r3 = 0
        (pi2, pi3 - pi2),
    ];
    for (c0, c1) in edges {
        if c1 != 0.0 {
            breaks.push(-c0 / c1);
        }
    }

    let classical = integrator.integrate_nested(
        |r1| {
            let (lo, hi) = classical_range(r1);
            inner(r1, lo, hi)
        },
        1.0 / 3.0,
        1.0,
        &breaks,
    )?;
    Ok((classical, total))
}

/// `Q` as the fraction of sampled spectra that are classical.
///
/// Samples are split evenly across `workers` threads, each with its own
/// stream seeded by [`worker_seed`]; the result is deterministic for a fixed
/// `(seed, workers)` pair.
pub fn q_monte_carlo(req: &IndicatorRequest) -> Result<IndicatorResult> {
    let Method::MonteCarlo { samples, seed, workers } = req.method else {
        return Err(Error::Unsupported(format!(
            "q_monte_carlo called with method {}",
            req.method
        )));
    };
    let kernel = req.kernel();
    let per_worker = |w: u64| samples / workers as u64 + u64::from(w < samples % workers as u64);

    let run = |w: u64| -> Result<u64> {
        let mut sampler = SpectrumSampler::for_stratum(req.ensemble, &req.stratum, worker_seed(seed, w))?;
        let mut hits = 0;
        for _ in 0..per_worker(w) {
            let s = sampler.sample()?;
            if pairing(&s, &kernel)? >= 0.0 {
                hits += 1;
            }
        }
        Ok(hits)
    };

    let counts: Vec<Result<u64>> = if workers == 1 {
        vec![run(0)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers as u64).map(|w| scope.spawn(move || run(w))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("Monte Carlo worker panicked"))
                .collect()
        })
    };
    let mut hits = 0u64;
    for c in counts {
        hits += c?;
    }
    let n = samples as f64;
    let q = hits as f64 / n;
    let upper_bound = (hits == 0).then(|| 1.0 - 0.05f64.powf(1.0 / n));
    Ok(IndicatorResult {
        q,
        error_estimate: (q * (1.0 - q) / n).sqrt(),
        upper_bound,
        request: req.clone(),
    })
}

/// Location and value of the smallest `Q` over `ζ ∈ [0, π/3]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaMinimum {
    pub zeta: f64,
    pub q: f64,
}

fn q_at(ensemble: EnsembleKind, stratum: &StratumLabel, zeta: f64, method: Method) -> Result<f64> {
    let req = IndicatorRequest::qutrit(ensemble, stratum.clone(), zeta, method)?;
    Ok(compute(&req)?.q)
}

fn require_qutrit(stratum: &StratumLabel) -> Result<()> {
    if stratum.dim() != 3 {
        return domain(format!("ζ-dependence needs a qutrit stratum, got {stratum}"));
    }
    Ok(())
}

/// Minimizes `Q(ζ)`: a 61-node scan brackets the global grid minimum, then
/// golden-section search refines it to a ζ-resolution of `1e-6`.
pub fn minimize_q_over_zeta(ensemble: EnsembleKind, stratum: &StratumLabel, method: Method) -> Result<ZetaMinimum> {
    require_qutrit(stratum)?;
    let Minimum { x, value } = scan_then_golden(
        |z| q_at(ensemble, stratum, z, method),
        0.0,
        FRAC_PI_3,
        ZETA_SCAN_POINTS,
        ZETA_RESOLUTION,
    )?;
    Ok(ZetaMinimum { zeta: x, q: value })
}

/// `Q(0) − Q(π/3)`.
pub fn asymmetry(ensemble: EnsembleKind, stratum: &StratumLabel, method: Method) -> Result<f64> {
    require_qutrit(stratum)?;
    Ok(q_at(ensemble, stratum, 0.0, method)? - q_at(ensemble, stratum, FRAC_PI_3, method)?)
}

/// `Q_degenerate(ζ) / Q_regular(ζ)` for qutrits.
pub fn ratio_degenerate_to_regular(ensemble: EnsembleKind, zeta: f64, method: Method) -> Result<f64> {
    let regular = q_at(ensemble, &StratumLabel::regular(3)?, zeta, method)?;
    if regular < 1e-300 {
        return Err(Error::Overflow(format!(
            "regular-stratum indicator {regular:e} too small to divide by"
        )));
    }
    let degenerate = q_at(ensemble, &StratumLabel::qutrit_degenerate(), zeta, method)?;
    Ok(degenerate / regular)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn zeta(z: f64) -> ModuliParameter {
        ModuliParameter::new(z).unwrap()
    }

    #[test]
    fn qubit_closed_forms() {
        let hs = q_qubit_closed_form(EnsembleKind::HilbertSchmidt).q;
        assert_relative_eq!(hs, 0.19245, max_relative = 1e-5);
        assert_relative_eq!(hs, 1.0 / 27f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(
            q_qubit_closed_form(EnsembleKind::Bures).q,
            0.091_721_1,
            max_relative = 1e-6
        );
        assert_relative_eq!(
            q_qubit_closed_form(EnsembleKind::Bkm).q,
            0.049_550_6,
            max_relative = 1e-6
        );
    }

    #[test]
    fn hs_regular_closed_form_examples() {
        let at = |z| q_hs_qutrit_regular_closed_form(zeta(z)).q;
        assert_relative_eq!(at(FRAC_PI_6), 21.0 / 31104.0, max_relative = 1e-15);
        assert_relative_eq!(at(0.0), 1.0 / 256.0, max_relative = 1e-14);
        assert_relative_eq!(at(FRAC_PI_3), 1.0 / 256.0, max_relative = 1e-14);
    }

    #[test]
    fn hs_degenerate_closed_form_examples() {
        let at = |z| q_hs_qutrit_degenerate_closed_form(zeta(z)).q;
        let two_over_root3: f64 = 2.0 / SQRT_3;
        assert_relative_eq!(
            at(FRAC_PI_6),
            2.0 * two_over_root3.powi(5) / 1056.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(at(FRAC_PI_6), 3.8879e-3, max_relative = 1e-4);
        assert_relative_eq!(at(0.0), 1.0 / 32.0, max_relative = 1e-14);
        for i in 0..=10 {
            let z = FRAC_PI_3 * i as f64 / 10.0;
            assert_relative_eq!(at(z), at(FRAC_PI_3 - z), max_relative = 1e-13);
        }
    }

    #[test]
    fn request_validation() {
        let reg3 = StratumLabel::regular(3).unwrap();
        assert!(IndicatorRequest::new(EnsembleKind::Bures, reg3.clone(), Some(zeta(0.1)), Method::ClosedForm).is_err());
        assert!(IndicatorRequest::new(EnsembleKind::HilbertSchmidt, reg3.clone(), None, Method::ClosedForm).is_err());
        assert!(IndicatorRequest::new(
            EnsembleKind::Bures,
            StratumLabel::regular(2).unwrap(),
            Some(zeta(0.1)),
            Method::ClosedForm
        )
        .is_err());
        assert!(IndicatorRequest::new(
            EnsembleKind::Bures,
            reg3.clone(),
            Some(zeta(0.1)),
            Method::Quadrature { rel_tol: 0.0 }
        )
        .is_err());
        assert!(IndicatorRequest::new(
            EnsembleKind::Bures,
            reg3,
            Some(zeta(0.1)),
            Method::MonteCarlo {
                samples: 0,
                seed: 0,
                workers: 1
            }
        )
        .is_err());
        assert!(IndicatorRequest::qubit(EnsembleKind::Bkm, Method::ClosedForm).is_ok());
        assert!(matches!(
            IndicatorRequest::new(
                EnsembleKind::Bures,
                StratumLabel::regular(4).unwrap(),
                None,
                Method::ClosedForm
            ),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn quadrature_matches_qubit_closed_forms() {
        for kind in EnsembleKind::ALL {
            let req = IndicatorRequest::qubit(kind, Method::Quadrature { rel_tol: 1e-10 }).unwrap();
            let r = q_quadrature(&req).unwrap();
            assert_relative_eq!(r.q, qubit_closed_value(kind), max_relative = 1e-8);
            assert!(r.error_estimate >= 0.0);
        }
    }

    #[test]
    fn quadrature_matches_hs_qutrit_closed_forms() {
        for i in 0..=6 {
            let z = FRAC_PI_3 * i as f64 / 6.0;
            for stratum in [StratumLabel::regular(3).unwrap(), StratumLabel::qutrit_degenerate()] {
                let req = IndicatorRequest::qutrit(
                    EnsembleKind::HilbertSchmidt,
                    stratum.clone(),
                    z,
                    Method::Quadrature { rel_tol: 1e-9 },
                )
                .unwrap();
                let quad = q_quadrature(&req).unwrap().q;
                let closed = compute(
                    &IndicatorRequest::qutrit(EnsembleKind::HilbertSchmidt, stratum, z, Method::ClosedForm).unwrap(),
                )
                .unwrap()
                .q;
                assert_relative_eq!(quad, closed, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn scalar_stratum_is_classical() {
        let s = StratumLabel::new(DegeneracyType::new(vec![3]).unwrap());
        for method in [Method::ClosedForm, Method::Quadrature { rel_tol: 1e-6 }] {
            let req = IndicatorRequest::qutrit(EnsembleKind::HilbertSchmidt, s.clone(), 0.3, method).unwrap();
            assert_eq!(compute(&req).unwrap().q, 1.0);
        }
    }

    #[test]
    fn monte_carlo_is_deterministic_and_worker_split() {
        let req = |workers| {
            IndicatorRequest::qubit(
                EnsembleKind::Bures,
                Method::MonteCarlo {
                    samples: 20_001,
                    seed: 9,
                    workers,
                },
            )
            .unwrap()
        };
        let a = q_monte_carlo(&req(3)).unwrap();
        let b = q_monte_carlo(&req(3)).unwrap();
        assert_eq!(a.q, b.q);
        let c = q_monte_carlo(&req(1)).unwrap();
        let sigma = a.error_estimate.max(c.error_estimate);
        assert!((a.q - c.q).abs() < 6.0 * sigma);
    }

    #[test]
    fn monte_carlo_zero_hits_reports_bound() {
        // Around ζ = π/6 the BKM regular indicator is ~1e-5; 100 samples see none.
        let req = IndicatorRequest::qutrit(
            EnsembleKind::Bkm,
            StratumLabel::regular(3).unwrap(),
            FRAC_PI_6,
            Method::monte_carlo(100, 1),
        )
        .unwrap();
        let r = q_monte_carlo(&req).unwrap();
        assert_eq!(r.q, 0.0);
        assert_eq!(r.error_estimate, 0.0);
        let bound = r.upper_bound.unwrap();
        assert!(bound > 0.029 && bound < 0.031, "{bound}");
    }

    #[test]
    fn hs_minimizer_lands_on_pi_over_six() {
        let m = minimize_q_over_zeta(
            EnsembleKind::HilbertSchmidt,
            &StratumLabel::regular(3).unwrap(),
            Method::ClosedForm,
        )
        .unwrap();
        assert!((m.zeta - FRAC_PI_6).abs() < 1e-6, "{m:?}");
        assert_relative_eq!(m.q, 21.0 / 31104.0, max_relative = 1e-9);
        assert!(minimize_q_over_zeta(
            EnsembleKind::HilbertSchmidt,
            &StratumLabel::regular(2).unwrap(),
            Method::ClosedForm
        )
        .is_err());
    }

    #[test]
    fn hs_ratios() {
        let r = ratio_degenerate_to_regular(EnsembleKind::HilbertSchmidt, 0.0, Method::ClosedForm).unwrap();
        assert_relative_eq!(r, 8.0, max_relative = 1e-13);
        let r = ratio_degenerate_to_regular(EnsembleKind::HilbertSchmidt, FRAC_PI_6, Method::ClosedForm).unwrap();
        assert_relative_eq!(r, 5.758, max_relative = 1e-3);
    }

    #[test]
    fn hs_asymmetry_vanishes() {
        let a = asymmetry(
            EnsembleKind::HilbertSchmidt,
            &StratumLabel::regular(3).unwrap(),
            Method::ClosedForm,
        )
        .unwrap();
        assert!(a.abs() < 1e-17);
    }

    #[test]
    fn wrong_method_is_rejected() {
        let req = IndicatorRequest::qubit(EnsembleKind::Bures, Method::ClosedForm).unwrap();
        assert!(matches!(q_quadrature(&req), Err(Error::Unsupported(_))));
        assert!(matches!(q_monte_carlo(&req), Err(Error::Unsupported(_))));
    }
}
