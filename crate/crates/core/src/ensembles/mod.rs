//! Joint eigenvalue densities of the Hilbert–Schmidt, Bures and
//! Bogoliubov–Kubo–Mori ensembles, and samplers drawing spectra from them.
//!
//! Densities are unnormalized. On a face of the ordered simplex with
//! multiplicities `(k_1, …, k_s)` the distinct eigenvalues obey
//! `Σ k_i r_i = 1`, and the measure is `δ(1 − Σ k_i r_i) dr_1 … dr_s`.
//!
//! - Hilbert–Schmidt: `Π_{i<j} (r_i − r_j)^{2 k_i k_j}`
//! - monotone metric `f`: `(r_1 ⋯ r_s)^{-1/2} Π_{i<j} c_f(r_i, r_j)^{k_i k_j} (r_i − r_j)^{2 k_i k_j}`

mod linalg;
mod sampler;

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::spectra::DegeneracyType;

pub use sampler::{sample_spectrum, worker_seed, SpectrumSampler};

/// Which metric induces the ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EnsembleKind {
    HilbertSchmidt,
    Bures,
    Bkm,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 3] = [EnsembleKind::HilbertSchmidt, EnsembleKind::Bures, EnsembleKind::Bkm];

    /// Short lowercase tag used on the command line and in CSV output.
    pub fn tag(self) -> &'static str {
        match self {
            EnsembleKind::HilbertSchmidt => "hs",
            EnsembleKind::Bures => "bures",
            EnsembleKind::Bkm => "bkm",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            EnsembleKind::HilbertSchmidt => "Hilbert-Schmidt",
            EnsembleKind::Bures => "Bures",
            EnsembleKind::Bkm => "BKM",
        }
    }

    /// The Morozova–Chentsov function of a monotone metric; `None` for
    /// Hilbert–Schmidt.
    pub fn morozova_chentsov(self) -> Option<MorozovaChentsov> {
        match self {
            EnsembleKind::HilbertSchmidt => None,
            EnsembleKind::Bures => Some(MorozovaChentsov::Bures),
            EnsembleKind::Bkm => Some(MorozovaChentsov::Bkm),
        }
    }

    pub fn is_monotone(self) -> bool {
        self.morozova_chentsov().is_some()
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hs" | "hilbert-schmidt" | "hilbertschmidt" => Ok(EnsembleKind::HilbertSchmidt),
            "bures" | "b" => Ok(EnsembleKind::Bures),
            "bkm" => Ok(EnsembleKind::Bkm),
            other => domain(format!("unknown ensemble '{other}'")),
        }
    }
}

/// Morozova–Chentsov function `c_f(x, y) = 1 / (y f(x/y))` of a monotone metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorozovaChentsov {
    /// `f(t) = (1 + t)/2`, `c(x, y) = 2/(x + y)`.
    Bures,
    /// `f(t) = (t − 1)/ln t`, `c(x, y) = (ln x − ln y)/(x − y)`.
    Bkm,
}

/// Below this `|x − y|/(x + y)` the BKM function uses its series expansion.
const BKM_SERIES_THRESHOLD: f64 = 1e-4;

impl MorozovaChentsov {
    /// Evaluates `c(x, y)` for positive arguments without validation.
    pub fn eval(self, x: f64, y: f64) -> f64 {
        match self {
            MorozovaChentsov::Bures => 2.0 / (x + y),
            MorozovaChentsov::Bkm => {
                let m = 0.5 * (x + y);
                let d = (x - y) / (x + y);
                if d.abs() <= BKM_SERIES_THRESHOLD {
                    let d2 = d * d;
                    (1.0 + d2 / 3.0 + d2 * d2 / 5.0) / m
                } else if d.abs() > 0.5 {
                    // atanh loses precision as |d| → 1
                    (x.ln() - y.ln()) / (x - y)
                } else {
                    // ln x − ln y = 2 atanh(d), x − y = 2 m d.
                    d.atanh() / (m * d)
                }
            }
        }
    }
}

/// Checked Morozova–Chentsov function of a monotone ensemble.
pub fn mc_function(kind: EnsembleKind, x: f64, y: f64) -> Result<f64> {
    let Some(mc) = kind.morozova_chentsov() else {
        return Err(Error::Unsupported(format!(
            "{} is not a monotone-metric ensemble",
            kind.label()
        )));
    };
    if !(x > 0.0 && y > 0.0) || !x.is_finite() || !y.is_finite() {
        return domain(format!("Morozova-Chentsov arguments must be positive, got ({x}, {y})"));
    }
    Ok(mc.eval(x, y))
}

/// Unnormalized joint density of the distinct eigenvalues on one face.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDensity {
    ensemble: EnsembleKind,
    degeneracy: DegeneracyType,
}

impl JointDensity {
    pub fn new(ensemble: EnsembleKind, degeneracy: DegeneracyType) -> Self {
        Self { ensemble, degeneracy }
    }

    pub fn ensemble(&self) -> EnsembleKind {
        self.ensemble
    }

    pub fn degeneracy(&self) -> &DegeneracyType {
        &self.degeneracy
    }

    /// Log-density at distinct eigenvalues `r` (one per multiplicity, in the
    /// same order). `−∞` where two eigenvalues coincide.
    pub fn log_density(&self, r: &[f64]) -> Result<f64> {
        let ks = self.degeneracy.multiplicities();
        if r.len() != ks.len() {
            return domain(format!(
                "{} eigenvalues given for degeneracy type {}",
                r.len(),
                self.degeneracy
            ));
        }
        if r.iter().any(|&x| !(x > 0.0 && x <= 1.0)) {
            return domain(format!("eigenvalues {r:?} must lie in (0, 1]"));
        }
        let trace: f64 = ks.iter().zip(r).map(|(&k, &x)| k as f64 * x).sum();
        if (trace - 1.0).abs() > 1e-9 {
            return domain(format!("Σ k_i r_i = {trace}, not 1"));
        }
        Ok(log_density_unchecked(self.ensemble, ks, r))
    }

    pub fn density(&self, r: &[f64]) -> Result<f64> {
        Ok(self.log_density(r)?.exp())
    }
}

/// `joint_density` without argument validation, for quadrature and sampling
/// inner loops. The caller guarantees `r_i > 0` and `Σ k_i r_i = 1`.
pub(crate) fn log_density_unchecked(kind: EnsembleKind, ks: &[usize], r: &[f64]) -> f64 {
    let mc = kind.morozova_chentsov();
    let mut acc = 0.0;
    if mc.is_some() {
        acc -= 0.5 * r.iter().map(|x| x.ln()).sum::<f64>();
    }
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            let gap = (r[i] - r[j]).abs();
            if gap == 0.0 {
                return f64::NEG_INFINITY;
            }
            let weight = (ks[i] * ks[j]) as f64;
            acc += 2.0 * weight * gap.ln();
            if let Some(mc) = mc {
                acc += weight * mc.eval(r[i], r[j]).ln();
            }
        }
    }
    acc
}

pub(crate) fn density_unchecked(kind: EnsembleKind, ks: &[usize], r: &[f64]) -> f64 {
    if r.iter().any(|&x| x <= 0.0) {
        return 0.0;
    }
    log_density_unchecked(kind, ks, r).exp()
}

/// Unnormalized joint density of `r` on the face `deg`.
pub fn joint_density(kind: EnsembleKind, deg: &DegeneracyType, r: &[f64]) -> Result<f64> {
    JointDensity::new(kind, deg.clone()).density(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn deg(ks: &[usize]) -> DegeneracyType {
        DegeneracyType::new(ks.to_vec()).unwrap()
    }

    #[test]
    fn mc_examples() {
        assert_relative_eq!(
            mc_function(EnsembleKind::Bures, 1.0, 1.0).unwrap(),
            1.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            mc_function(EnsembleKind::Bures, 0.5, 0.25).unwrap(),
            8.0 / 3.0,
            max_relative = 1e-15
        );
        for x in [1e-9, 0.01, 0.3, 1.0] {
            assert_relative_eq!(
                mc_function(EnsembleKind::Bkm, x, x).unwrap(),
                1.0 / x,
                max_relative = 1e-15
            );
        }
        assert!(mc_function(EnsembleKind::Bkm, 0.0, 1.0).is_err());
        assert!(mc_function(EnsembleKind::Bures, -1.0, 1.0).is_err());
        assert!(matches!(
            mc_function(EnsembleKind::HilbertSchmidt, 1.0, 1.0),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn bkm_matches_log_formula_away_from_diagonal() {
        for &(x, y) in &[(0.5, 0.25), (0.9, 0.01), (1e-6, 0.3), (0.4, 0.39)] {
            let direct: f64 = (f64::ln(x) - f64::ln(y)) / (x - y);
            assert_relative_eq!(MorozovaChentsov::Bkm.eval(x, y), direct, max_relative = 1e-12);
        }
    }

    #[test]
    fn bkm_series_is_continuous_at_threshold() {
        let y = 0.3;
        for scale in [0.999, 1.001] {
            let d = BKM_SERIES_THRESHOLD * scale;
            let x = y * (1.0 + d) / (1.0 - d);
            let direct = (x.ln() - y.ln()) / (x - y);
            assert_relative_eq!(MorozovaChentsov::Bkm.eval(x, y), direct, max_relative = 1e-11);
        }
    }

    #[test]
    fn mc_normalization_and_symmetry() {
        for mc in [MorozovaChentsov::Bures, MorozovaChentsov::Bkm] {
            for &(x, y) in &[(0.1, 0.7), (0.33, 0.34), (1e-8, 0.5)] {
                assert_relative_eq!(mc.eval(x, y), mc.eval(y, x), max_relative = 1e-12);
            }
            assert_relative_eq!(mc.eval(0.2, 0.2), 5.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn hs_vandermonde_example() {
        let d = joint_density(
            EnsembleKind::HilbertSchmidt,
            &deg(&[1, 1, 1]),
            &[0.5, 1.0 / 3.0, 1.0 / 6.0],
        )
        .unwrap();
        assert_relative_eq!(d, 1.0 / 11664.0, max_relative = 1e-13);
    }

    #[test]
    fn coincident_eigenvalues_vanish() {
        for kind in EnsembleKind::ALL {
            let r = 0.3;
            assert_eq!(
                joint_density(kind, &deg(&[1, 1, 1]), &[r, r, 1.0 - 2.0 * r]).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn constraint_violations() {
        let d = deg(&[2, 1]);
        assert!(joint_density(EnsembleKind::Bures, &d, &[0.4, 0.3]).is_err());
        assert!(joint_density(EnsembleKind::Bures, &d, &[0.4, 0.2]).is_ok());
        assert!(joint_density(EnsembleKind::Bures, &d, &[0.5, 0.0]).is_err());
        assert!(joint_density(EnsembleKind::Bures, &d, &[0.4]).is_err());
    }

    #[test]
    fn qubit_monotone_densities_match_radial_forms() {
        // Bures ∝ r²/√(1−r²); BKM ∝ r ln((1+r)/(1−r))/√(1−r²).
        let d = deg(&[1, 1]);
        let radial = |kind: EnsembleKind, r: f64| joint_density(kind, &d, &[(1.0 + r) / 2.0, (1.0 - r) / 2.0]).unwrap();
        let bures_ref = |r: f64| r * r / (1.0 - r * r).sqrt();
        let bkm_ref = |r: f64| r * ((1.0 + r) / (1.0 - r)).ln() / (1.0 - r * r).sqrt();
        let bures0 = radial(EnsembleKind::Bures, 0.5) / bures_ref(0.5);
        let bkm0 = radial(EnsembleKind::Bkm, 0.5) / bkm_ref(0.5);
        for i in 1..100 {
            let r = i as f64 / 100.0;
            assert_relative_eq!(
                radial(EnsembleKind::Bures, r) / bures_ref(r),
                bures0,
                max_relative = 1e-12
            );
            assert_relative_eq!(radial(EnsembleKind::Bkm, r) / bkm_ref(r), bkm0, max_relative = 1e-10);
            assert_relative_eq!(
                radial(EnsembleKind::HilbertSchmidt, r) / (r * r),
                1.0,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn log_space_survives_tiny_eigenvalues() {
        let d = deg(&[1, 1, 1]);
        for kind in EnsembleKind::ALL {
            let v = joint_density(kind, &d, &[1.0 - 3e-12, 2e-12, 1e-12]).unwrap();
            assert!(v.is_finite() && v >= 0.0);
        }
    }

    #[test]
    fn parsing_round_trip() {
        for kind in EnsembleKind::ALL {
            assert_eq!(kind.tag().parse::<EnsembleKind>().unwrap(), kind);
        }
        assert!("gauss".parse::<EnsembleKind>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn permutation_invariance(a in 0.01..0.98f64, b in 0.01..0.98f64, kind_ix in 0usize..3) {
                prop_assume!(a + b < 0.99);
                let kind = EnsembleKind::ALL[kind_ix];
                let c = 1.0 - a - b;
                let base = log_density_unchecked(kind, &[1, 1, 1], &[a, b, c]);
                let perm = log_density_unchecked(kind, &[1, 1, 1], &[c, a, b]);
                prop_assert!((base - perm).abs() <= 1e-10 * base.abs().max(1.0));
                // Degenerate face with relabelled (r_i, k_i) pairs.
                let x = (1.0 - a) / 2.0;
                let d1 = log_density_unchecked(kind, &[2, 1], &[x, a]);
                let d2 = log_density_unchecked(kind, &[1, 2], &[a, x]);
                prop_assert!((d1 - d2).abs() <= 1e-12 * d1.abs().max(1.0));
            }

            #[test]
            fn nonnegative(a in 1e-12..1.0f64, t in 0.0..1.0f64, kind_ix in 0usize..3) {
                let kind = EnsembleKind::ALL[kind_ix];
                let b = (1.0 - a) * t;
                let c = 1.0 - a - b;
                prop_assume!(b > 0.0 && c > 0.0);
                let v = density_unchecked(kind, &[1, 1, 1], &[a, b, c]);
                prop_assert!(v >= 0.0 && v.is_finite());
            }
        }
    }

    #[test]
    fn degenerate_scalar_face() {
        let v = joint_density(EnsembleKind::Bures, &deg(&[3]), &[1.0 / 3.0]).unwrap();
        assert_abs_diff_eq!(v, 3f64.sqrt(), epsilon = 1e-14);
    }
}
