//! Seeded samplers of ordered spectra.
//!
//! Routes:
//!
//! - Hilbert–Schmidt, simple spectrum: eigenvalues of `G G† / tr(G G†)` with
//!   `G` an `N×N` complex Ginibre matrix.
//! - Bures, simple spectrum: the same with `(I + U) G` in place of `G`, `U`
//!   Haar-distributed.
//! - everything else: rejection sampling from a uniform proposal on charts of
//!   the constraint simplex, with a numerically located envelope.
//!
//! Charts parameterize each face by its smallest distinct eigenvalue
//! `b = t^p / N` (and, on the regular qutrit face, the position of `r_1`
//! between its limits). For monotone ensembles `p = 4` absorbs both the
//! `b^{-1/2}` factor and the logarithmic growth of the BKM function near the
//! simplex boundary, so every chart density is bounded.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linalg::{self, Mat};
use super::{density_unchecked, EnsembleKind};
use crate::error::{domain, Error, Result};
use crate::spectra::{DegeneracyType, OrderedSpectrum, StratumLabel};

const ENVELOPE_GRID: usize = 10_000;
const ENVELOPE_INFLATION: f64 = 1.05;
const MIN_ACCEPTANCE: f64 = 1e-6;
const MAX_ATTEMPTS_PER_SAMPLE: u64 = 100_000_000;

/// Seed for worker `worker` derived from `master`: one SplitMix64 round of
/// `master ^ worker`.
pub fn worker_seed(master: u64, worker: u64) -> u64 {
    let mut z = (master ^ worker).wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy)]
struct Chart {
    ks: [usize; 3],
    parts: usize,
    dim: usize,
    power: i32,
}

impl Chart {
    fn new(kind: EnsembleKind, deg: &DegeneracyType) -> Result<Self> {
        let ks_in = deg.multiplicities();
        let supported = matches!(ks_in.len(), 2) || ks_in == [1, 1, 1];
        if !supported || deg.dim() > 3 {
            return Err(Error::Unsupported(format!(
                "no rejection chart for degeneracy type {deg}"
            )));
        }
        let mut ks = [0; 3];
        ks[..ks_in.len()].copy_from_slice(ks_in);
        Ok(Self {
            ks,
            parts: ks_in.len(),
            dim: deg.dim(),
            power: if kind.is_monotone() { 4 } else { 1 },
        })
    }

    fn coords(&self) -> usize {
        self.parts - 1
    }

    /// Maps unit-cube coordinates to distinct eigenvalues and the Jacobian of
    /// the face measure.
    fn map(&self, u: [f64; 2]) -> ([f64; 3], f64) {
        let p = self.power;
        let n = self.dim as f64;
        let t = u[0];
        let dt = p as f64 * t.powi(p - 1);
        if self.parts == 2 {
            let (k1, k2) = (self.ks[0] as f64, self.ks[1] as f64);
            let b = t.powi(p) / n;
            let r1 = (1.0 - k2 * b) / k1;
            ([r1, b, 0.0], dt / (n * k1))
        } else {
            let r3 = t.powi(p) / 3.0;
            let width = 0.5 * (1.0 - 3.0 * r3);
            let r1 = 0.5 * (1.0 - r3) + u[1] * width;
            let r2 = 1.0 - r1 - r3;
            ([r1, r2, r3], width * dt / 3.0)
        }
    }

    fn target(&self, kind: EnsembleKind, u: [f64; 2]) -> f64 {
        let (r, jac) = self.map(u);
        if jac <= 0.0 {
            return 0.0;
        }
        density_unchecked(kind, &self.ks[..self.parts], &r[..self.parts]) * jac
    }

    fn spectrum(&self, u: [f64; 2]) -> Result<OrderedSpectrum> {
        let (r, _) = self.map(u);
        let ks = &self.ks[..self.parts];
        let values: Vec<f64> = ks
            .iter()
            .zip(&r)
            .flat_map(|(&k, &x)| std::iter::repeat_n(x, k))
            .collect();
        OrderedSpectrum::from_unsorted(values)
    }
}

#[derive(Debug, Clone)]
struct Rejection {
    charts: Vec<Chart>,
    envelope: f64,
    acceptance: f64,
}

impl Rejection {
    fn new(kind: EnsembleKind, orderings: &[DegeneracyType]) -> Result<Self> {
        let charts = orderings
            .iter()
            .map(|d| Chart::new(kind, d))
            .collect::<Result<Vec<_>>>()?;
        let mut sup: f64 = 0.0;
        let mut mean_sum = 0.0;
        for chart in &charts {
            let (chart_sup, chart_mean) = locate_supremum(kind, chart);
            sup = sup.max(chart_sup);
            mean_sum += chart_mean;
        }
        if !(sup > 0.0 && sup.is_finite()) {
            return Err(Error::Sampler(format!(
                "density supremum {sup} is not a positive finite number"
            )));
        }
        let envelope = sup * ENVELOPE_INFLATION;
        let acceptance = mean_sum / charts.len() as f64 / envelope;
        if acceptance < MIN_ACCEPTANCE {
            return Err(Error::Sampler(format!(
                "estimated acceptance rate {acceptance:.3e} below {MIN_ACCEPTANCE:e} (envelope {envelope:.3e})"
            )));
        }
        Ok(Self {
            charts,
            envelope,
            acceptance,
        })
    }

    fn draw(&self, kind: EnsembleKind, rng: &mut ChaCha8Rng) -> Result<OrderedSpectrum> {
        for _ in 0..MAX_ATTEMPTS_PER_SAMPLE {
            let chart = if self.charts.len() == 1 {
                &self.charts[0]
            } else {
                &self.charts[rng.random_range(0..self.charts.len())]
            };
            let mut u = [0.0; 2];
            for c in u.iter_mut().take(chart.coords()) {
                *c = open_unit(rng);
            }
            let g = chart.target(kind, u);
            if g > self.envelope {
                return Err(Error::Sampler(format!(
                    "density {g:.6e} at {u:?} exceeds envelope {:.6e}",
                    self.envelope
                )));
            }
            if rng.random::<f64>() * self.envelope < g {
                return chart.spectrum(u);
            }
        }
        Err(Error::Sampler(format!(
            "no acceptance in {MAX_ATTEMPTS_PER_SAMPLE} proposals"
        )))
    }
}

fn open_unit(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let x: f64 = rng.random();
        if x > 0.0 {
            return x;
        }
    }
}

/// Grid scan plus pattern-search refinement. Returns (supremum, grid mean).
fn locate_supremum(kind: EnsembleKind, chart: &Chart) -> (f64, f64) {
    let (per_axis, axes) = match chart.coords() {
        1 => (ENVELOPE_GRID, 1),
        _ => ((ENVELOPE_GRID as f64).sqrt() as usize, 2),
    };
    let h = 1.0 / per_axis as f64;
    let mut best = (0.0, [0.5, 0.5]);
    let mut sum = 0.0;
    let mut count = 0usize;
    for i in 0..per_axis {
        for j in 0..if axes == 2 { per_axis } else { 1 } {
            let u = [(i as f64 + 0.5) * h, (j as f64 + 0.5) * h];
            let g = chart.target(kind, u);
            sum += g;
            count += 1;
            if g > best.0 {
                best = (g, u);
            }
        }
    }
    let mean = sum / count as f64;

    let (mut value, mut at) = best;
    let mut step = h;
    while step > 1e-12 {
        let mut improved = false;
        for axis in 0..axes {
            for dir in [-1.0, 1.0] {
                let mut trial = at;
                trial[axis] = (trial[axis] + dir * step).clamp(1e-15, 1.0 - 1e-15);
                let g = chart.target(kind, trial);
                if g > value {
                    value = g;
                    at = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (value, mean)
}

#[derive(Debug, Clone)]
enum Route {
    Ginibre,
    Bures,
    Rejection(Rejection),
    Fixed(OrderedSpectrum),
}

/// A seeded source of spectra from one ensemble on one face or stratum.
///
/// Each instance owns its RNG stream; create one per worker with
/// [`worker_seed`].
#[derive(Debug, Clone)]
pub struct SpectrumSampler {
    kind: EnsembleKind,
    dim: usize,
    route: Route,
    rng: ChaCha8Rng,
}

impl SpectrumSampler {
    /// Sampler for spectra of exactly the degeneracy type `deg` (ordering
    /// included).
    pub fn new(kind: EnsembleKind, deg: &DegeneracyType, seed: u64) -> Result<Self> {
        Self::build(kind, std::slice::from_ref(deg), seed, false)
    }

    /// Sampler over a whole stratum: a degenerate stratum mixes all of its
    /// orderings in proportion to their measure.
    pub fn for_stratum(kind: EnsembleKind, stratum: &StratumLabel, seed: u64) -> Result<Self> {
        Self::build(kind, &stratum.degeneracy().orderings(), seed, false)
    }

    /// Like [`SpectrumSampler::new`], but always uses the rejection route.
    pub fn rejection_only(kind: EnsembleKind, deg: &DegeneracyType, seed: u64) -> Result<Self> {
        Self::build(kind, std::slice::from_ref(deg), seed, true)
    }

    fn build(kind: EnsembleKind, orderings: &[DegeneracyType], seed: u64, force_rejection: bool) -> Result<Self> {
        let first = &orderings[0];
        let dim = first.dim();
        if !(2..=3).contains(&dim) {
            return domain(format!("samplers support qubits and qutrits, got N = {dim}"));
        }
        let simple = first.multiplicities().iter().all(|&k| k == 1);
        let route = if first.parts() == 1 {
            Route::Fixed(OrderedSpectrum::new(vec![1.0 / dim as f64; dim])?)
        } else if simple && !force_rejection && kind == EnsembleKind::HilbertSchmidt {
            Route::Ginibre
        } else if simple && !force_rejection && kind == EnsembleKind::Bures {
            Route::Bures
        } else {
            Route::Rejection(Rejection::new(kind, orderings)?)
        };
        Ok(Self {
            kind,
            dim,
            route,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    pub fn ensemble(&self) -> EnsembleKind {
        self.kind
    }

    /// Estimated acceptance rate of the rejection route, if used.
    pub fn acceptance_rate(&self) -> Option<f64> {
        match &self.route {
            Route::Rejection(r) => Some(r.acceptance),
            _ => None,
        }
    }

    pub fn sample(&mut self) -> Result<OrderedSpectrum> {
        match &self.route {
            Route::Fixed(s) => Ok(s.clone()),
            Route::Ginibre => {
                let g = linalg::ginibre(&mut self.rng, self.dim);
                normalized_spectrum(&linalg::gram(&g, self.dim), self.dim)
            }
            Route::Bures => {
                let n = self.dim;
                let mut shifted: Mat = linalg::haar_unitary(&mut self.rng, n);
                for (i, row) in shifted.iter_mut().enumerate().take(n) {
                    row[i] += 1.0;
                }
                let g = linalg::ginibre(&mut self.rng, n);
                let a = linalg::mul(&shifted, &g, n);
                normalized_spectrum(&linalg::gram(&a, n), n)
            }
            Route::Rejection(r) => r.draw(self.kind, &mut self.rng),
        }
    }
}

fn normalized_spectrum(w: &Mat, n: usize) -> Result<OrderedSpectrum> {
    let ev = linalg::hermitian_eigenvalues(w, n);
    let trace: f64 = ev[..n].iter().sum();
    OrderedSpectrum::from_unsorted(ev[..n].iter().map(|x| (x / trace).max(0.0)).collect())
}

/// Draws one spectrum of degeneracy type `deg` from ensemble `kind`.
pub fn sample_spectrum(kind: EnsembleKind, deg: &DegeneracyType, seed: u64) -> Result<OrderedSpectrum> {
    SpectrumSampler::new(kind, deg, seed)?.sample()
}
