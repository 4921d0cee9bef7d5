//! Spectra of density matrices, degeneracy types and unitary-orbit strata.
//!
//! Spectra are stored in descending order everywhere in the crate. For qutrits
//! the ordered simplex is also described in polar coordinates `(r, φ)`, whose
//! image is the region bounded by the Maclaurin trisectrix.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{domain, Result};

/// Absolute tolerance of the unit-trace invariant.
pub const SUM_TOLERANCE: f64 = 1e-12;
/// Inputs whose trace is off by more than this are rejected instead of rescaled.
pub const RENORMALIZE_TOLERANCE: f64 = 1e-9;

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Largest Bloch-type radius of the qutrit polar parameterization.
pub const MAX_POLAR_RADIUS: f64 = 1.0 / SQRT_3;

/// Eigenvalues of a density matrix, descending and summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedSpectrum {
    values: Vec<f64>,
}

impl OrderedSpectrum {
    /// Validates a descending spectrum.
    ///
    /// Traces within [`RENORMALIZE_TOLERANCE`] of one are rescaled; anything
    /// further off, negative, or out of order is a domain error.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return domain("spectrum must have at least one eigenvalue");
        }
        if values.iter().any(|v| !v.is_finite()) {
            return domain(format!("non-finite eigenvalue in {values:?}"));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("spectrum {values:?} is not descending"));
        }
        if values[values.len() - 1] < 0.0 {
            return domain(format!("spectrum {values:?} has a negative eigenvalue"));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > RENORMALIZE_TOLERANCE {
            return domain(format!("spectrum {values:?} sums to {sum}, not 1"));
        }
        let values = if (sum - 1.0).abs() > SUM_TOLERANCE {
            values.into_iter().map(|v| v / sum).collect()
        } else {
            values
        };
        Ok(Self { values })
    }

    /// Sorts arbitrary eigenvalues into descending order, clamping round-off
    /// negatives (down to `-1e-12`) to zero, then validates.
    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self> {
        for v in values.iter_mut() {
            if *v < 0.0 && *v > -SUM_TOLERANCE {
                *v = 0.0;
            }
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Self::new(values)
    }

    /// Expands distinct eigenvalues with multiplicities into a full spectrum,
    /// `r_1 (1,…,1)_{k_1}; r_2 (1,…,1)_{k_2}; …`.
    pub fn from_degenerate(degeneracy: &DegeneracyType, distinct: &[f64]) -> Result<Self> {
        if distinct.len() != degeneracy.parts() {
            return domain(format!(
                "{} distinct eigenvalues for degeneracy type {degeneracy}",
                distinct.len()
            ));
        }
        let values = degeneracy
            .multiplicities()
            .iter()
            .zip(distinct)
            .flat_map(|(&k, &r)| std::iter::repeat_n(r, k))
            .collect();
        Self::from_unsorted(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

/// Multiplicities `(k_1, …, k_s)` of the distinct eigenvalues of a full-rank
/// state, listed in the order of descending eigenvalues.
///
/// The order matters: `(2, 1)` means `r_1 = r_2 > r_3` while `(1, 2)` means
/// `r_1 > r_2 = r_3`. Both belong to the same stratum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegeneracyType {
    multiplicities: Vec<usize>,
}

impl DegeneracyType {
    pub fn new(multiplicities: Vec<usize>) -> Result<Self> {
        if multiplicities.is_empty() {
            return domain("degeneracy type needs at least one part");
        }
        if multiplicities.contains(&0) {
            return domain(format!("zero multiplicity in {multiplicities:?}"));
        }
        Ok(Self { multiplicities })
    }

    /// The non-degenerate type `(1, …, 1)` of dimension `n`.
    pub fn simple(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Number of distinct eigenvalues `s`.
    pub fn parts(&self) -> usize {
        self.multiplicities.len()
    }

    /// Hilbert-space dimension `N = Σ k_i`.
    pub fn dim(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Multiplicities sorted in descending order, i.e. the integer partition.
    pub fn canonical(&self) -> Self {
        let mut multiplicities = self.multiplicities.clone();
        multiplicities.sort_unstable_by(|a, b| b.cmp(a));
        Self { multiplicities }
    }

    /// Distinct orderings of the multiplicities, i.e. the faces of the ordered
    /// simplex that make up the stratum. Sorted lexicographically descending,
    /// so `(2,1)` yields `[(2,1), (1,2)]`.
    pub fn orderings(&self) -> Vec<Self> {
        let mut current = self.canonical().multiplicities;
        let mut out = vec![Self {
            multiplicities: current.clone(),
        }];
        // Previous permutation in lexicographic order, starting from the
        // largest arrangement.
        while prev_permutation(&mut current) {
            out.push(Self {
                multiplicities: current.clone(),
            });
        }
        out
    }
}

fn prev_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] <= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] >= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for DegeneracyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.multiplicities.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A unitary-orbit stratum: all states whose spectrum has a given partition
/// type, named by the conjugacy class of its isotropy group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StratumLabel {
    degeneracy: DegeneracyType,
    name: String,
}

impl StratumLabel {
    pub fn new(degeneracy: DegeneracyType) -> Self {
        let degeneracy = degeneracy.canonical();
        let name = orbit_type_name(&degeneracy);
        Self { degeneracy, name }
    }

    /// The stratum of states with a simple spectrum.
    pub fn regular(n: usize) -> Result<Self> {
        Ok(Self::new(DegeneracyType::simple(n)?))
    }

    /// The qutrit stratum with one doubly degenerate eigenvalue.
    pub fn qutrit_degenerate() -> Self {
        Self::new(DegeneracyType {
            multiplicities: vec![2, 1],
        })
    }

    /// Canonical (descending) partition of the stratum.
    pub fn degeneracy(&self) -> &DegeneracyType {
        &self.degeneracy
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.degeneracy.dim()
    }

    pub fn is_regular(&self) -> bool {
        self.degeneracy.multiplicities.iter().all(|&k| k == 1)
    }
}

impl fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name, self.degeneracy)
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().bytes().map(|b| DIGITS[(b - b'0') as usize]).collect()
}

fn orbit_type_name(partition: &DegeneracyType) -> String {
    let n = partition.dim();
    let ks = partition.multiplicities();
    if ks.iter().all(|&k| k == 1) {
        format!("[T{}]", superscript(n))
    } else if ks.len() == 1 {
        format!("[SU({n})]")
    } else {
        let factors: Vec<String> = ks.iter().map(|k| format!("U({k})")).collect();
        format!("[S({})]", factors.join("×"))
    }
}

/// All strata of an `n`-level system, one per integer partition of `n`,
/// ordered lexicographically by descending parts.
pub fn enumerate_strata(n: usize) -> Result<Vec<StratumLabel>> {
    if !(1..=8).contains(&n) {
        return domain(format!("dimension {n} outside supported range 1..=8"));
    }
    let mut partitions = Vec::new();
    let mut current = Vec::new();
    collect_partitions(n, n, &mut current, &mut partitions);
    partitions.sort();
    Ok(partitions
        .into_iter()
        .map(|multiplicities| StratumLabel::new(DegeneracyType { multiplicities }))
        .collect())
}

fn collect_partitions(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        collect_partitions(remaining - part, part, current, out);
        current.pop();
    }
}

/// Polar coordinates of a point of the ordered qutrit simplex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    r: f64,
    phi: f64,
}

impl PolarPoint {
    /// Checks `r ∈ [0, 1/√3]`, `φ ∈ [0, π]` and membership in the trisectrix
    /// region `2√3 r cos(φ/3) ≤ 1`.
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        if !(r.is_finite() && phi.is_finite()) {
            return domain("non-finite polar coordinate");
        }
        if !(0.0..=MAX_POLAR_RADIUS * (1.0 + 1e-12)).contains(&r) {
            return domain(format!("radius {r} outside [0, 1/√3]"));
        }
        if !(0.0..=PI * (1.0 + 1e-12)).contains(&phi) {
            return domain(format!("angle {phi} outside [0, π]"));
        }
        if 2.0 * SQRT_3 * r * (phi / 3.0).cos() > 1.0 + 1e-12 {
            return domain(format!("point (r={r}, φ={phi}) lies outside the trisectrix"));
        }
        Ok(Self { r, phi: phi.min(PI) })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Radius of the trisectrix bounding the ordered qutrit simplex at angle `φ`.
pub fn trisectrix_boundary(phi: f64) -> f64 {
    1.0 / (2.0 * SQRT_3 * (phi / 3.0).cos())
}

/// Maps a polar point to its qutrit spectrum.
pub fn polar_to_spectrum(p: &PolarPoint) -> OrderedSpectrum {
    let scale = 2.0 * p.r / SQRT_3;
    let third = 1.0 / 3.0;
    let values = vec![
        third - scale * ((p.phi + 2.0 * PI) / 3.0).cos(),
        third - scale * ((p.phi + 4.0 * PI) / 3.0).cos(),
        third - scale * (p.phi / 3.0).cos(),
    ];
    // Valid polar points land inside the simplex up to round-off.
    OrderedSpectrum::from_unsorted(values).expect("polar point maps into the simplex")
}

/// Inverse of [`polar_to_spectrum`].
///
/// With centred eigenvalues `x_i = r_i - 1/3` one has `Σ x_i² = 2 r²`,
/// `x_1 - x_2 = 2 r sin(φ/3)` and `x_3 = -(2r/√3) cos(φ/3)`.
pub fn spectrum_to_polar(s: &OrderedSpectrum) -> Result<PolarPoint> {
    if s.dim() != 3 {
        return domain(format!("polar map needs a qutrit, got dimension {}", s.dim()));
    }
    let x: Vec<f64> = s.values().iter().map(|v| v - 1.0 / 3.0).collect();
    let r = ((x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / 2.0).sqrt();
    let phi = if r == 0.0 {
        0.0
    } else {
        (3.0 * (x[0] - x[1]).atan2(-SQRT_3 * x[2])).clamp(0.0, PI)
    };
    // Round-off can push boundary points a hair outside the trisectrix.
    let r = r.min(trisectrix_boundary(phi));
    PolarPoint::new(r, phi)
}
