//! Stratonovich–Weyl kernel spectra and the spectral classicality test.
//!
//! A state is classical iff its descending spectrum paired with the ascending
//! kernel spectrum is non-negative: `r_1 π_N + r_2 π_{N-1} + … + r_N π_1 ≥ 0`.
//! The minimum of the Wigner function over the phase space is exactly this
//! pairing, so no phase-space search is ever needed.

use std::f64::consts::{FRAC_PI_3, PI};

use crate::error::{domain, Result};
use crate::spectra::{OrderedSpectrum, PolarPoint};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Pairings with magnitude below this are treated as lying on the boundary.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

/// Eigenvalues of a Stratonovich–Weyl kernel: descending, with unit trace and
/// `Σ π_i² = N`.
#[derive(Debug, Clone, PartialEq)]
pub struct SWKernelSpectrum {
    values: Vec<f64>,
}

impl SWKernelSpectrum {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let n = values.len() as f64;
        if values.is_empty() {
            return domain("empty kernel spectrum");
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("kernel spectrum {values:?} is not descending"));
        }
        let sum: f64 = values.iter().sum();
        let sum_sq: f64 = values.iter().map(|v| v * v).sum();
        if (sum - 1.0).abs() > 1e-12 {
            return domain(format!("kernel trace {sum} != 1"));
        }
        if (sum_sq - n).abs() > 1e-10 {
            return domain(format!("kernel trace of square {sum_sq} != {n}"));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

/// The moduli parameter `ζ ∈ [0, π/3]` labelling inequivalent qutrit kernels.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ModuliParameter(f64);

impl ModuliParameter {
    pub fn new(zeta: f64) -> Result<Self> {
        // Grids built from decimal literals may overshoot π/3 by an ulp.
        if !(-1e-12..=FRAC_PI_3 + 1e-12).contains(&zeta) {
            return domain(format!("moduli parameter {zeta} outside [0, π/3]"));
        }
        Ok(Self(zeta.clamp(0.0, FRAC_PI_3)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// The unique qubit kernel spectrum `((1+√3)/2, (1−√3)/2)`.
pub fn sw_spectrum_qubit() -> SWKernelSpectrum {
    SWKernelSpectrum {
        values: vec![(1.0 + SQRT_3) / 2.0, (1.0 - SQRT_3) / 2.0],
    }
}

/// The qutrit kernel spectrum at moduli parameter `ζ`, with
/// `μ_3 = sin ζ`, `μ_8 = cos ζ`.
pub fn sw_spectrum_qutrit(zeta: ModuliParameter) -> SWKernelSpectrum {
    let (mu3, mu8) = zeta.0.sin_cos();
    let third = 1.0 / 3.0;
    let pi1 = third + 2.0 / SQRT_3 * mu3 + 2.0 / 3.0 * mu8;
    let pi2 = third - 2.0 / SQRT_3 * mu3 + 2.0 / 3.0 * mu8;
    let pi3 = third - 4.0 / 3.0 * mu8;
    // At ζ = 0 the top two coincide; keep the order exact under round-off.
    SWKernelSpectrum {
        values: vec![pi1, pi2.min(pi1), pi3],
    }
}

/// `(r↓, π↑)`: the minimum of the Wigner function over the phase space.
pub fn pairing(s: &OrderedSpectrum, k: &SWKernelSpectrum) -> Result<f64> {
    if s.dim() != k.dim() {
        return domain(format!(
            "spectrum of dimension {} paired with kernel of dimension {}",
            s.dim(),
            k.dim()
        ));
    }
    Ok(pairing_values(s.values(), k.values()))
}

pub(crate) fn pairing_values(descending: &[f64], kernel: &[f64]) -> f64 {
    descending.iter().zip(kernel.iter().rev()).map(|(r, p)| r * p).sum()
}

/// Whether the state's Wigner function is non-negative everywhere. The
/// boundary (pairing exactly zero) counts as classical.
pub fn is_classical(s: &OrderedSpectrum, k: &SWKernelSpectrum) -> Result<bool> {
    Ok(pairing(s, k)? >= 0.0)
}

/// Analytic cone of classical states on the regular qutrit stratum in polar
/// coordinates: `cos(φ/3 + ζ − π/3) ≤ 1/(4√3 r)`.
pub fn classical_cone_regular_qutrit(zeta: ModuliParameter, p: &PolarPoint) -> bool {
    if p.r() == 0.0 {
        return true;
    }
    4.0 * SQRT_3 * p.r() * (p.phi() / 3.0 + zeta.0 - FRAC_PI_3).cos() <= 1.0
}

/// The two degenerate edges of the ordered qutrit simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerateEdge {
    /// `φ = 0`: `r_1 = r_2 > r_3`, degeneracy type `(2, 1)`.
    UpperPair,
    /// `φ = π`: `r_1 > r_2 = r_3`, degeneracy type `(1, 2)`.
    LowerPair,
}

impl DegenerateEdge {
    pub fn phi(self) -> f64 {
        match self {
            DegenerateEdge::UpperPair => 0.0,
            DegenerateEdge::LowerPair => PI,
        }
    }

    /// Polar radius where the edge meets the boundary of the simplex.
    pub fn max_radius(self) -> f64 {
        match self {
            DegenerateEdge::UpperPair => 1.0 / (2.0 * SQRT_3),
            DegenerateEdge::LowerPair => 1.0 / SQRT_3,
        }
    }

    pub fn multiplicities(self) -> [usize; 2] {
        match self {
            DegenerateEdge::UpperPair => [2, 1],
            DegenerateEdge::LowerPair => [1, 2],
        }
    }
}

/// Largest polar radius along a degenerate edge that is still classical.
pub fn classical_edge_bound_qutrit(zeta: ModuliParameter, edge: DegenerateEdge) -> f64 {
    let c = match edge {
        DegenerateEdge::UpperPair => (zeta.0 - FRAC_PI_3).cos(),
        DegenerateEdge::LowerPair => zeta.0.cos(),
    };
    (1.0 / (4.0 * SQRT_3 * c)).min(edge.max_radius())
}
