//! Globally adaptive Gauss–Kronrod (7/15-point) quadrature.
//!
//! The integrand may itself be an integral: [`Integrator::integrate_nested`]
//! accepts an integrand returning an [`Estimate`], folds the inner error bound
//! into the outer one with the Kronrod weights, and charges inner evaluations
//! against the shared budget.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Value of an integral with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    /// Innermost integrand evaluations spent.
    pub evals: usize,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            error: 0.0,
            evals: 1,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Integrator {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evals: usize,
}

impl Default for Integrator {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 0.0,
            max_evals: 1_000_000,
        }
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

impl Integrator {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    /// Integrates `f` over `[a, b]`, splitting first at any `breakpoints`
    /// strictly inside the interval.
    pub fn integrate<F>(&self, mut f: F, a: f64, b: f64, breakpoints: &[f64]) -> Result<Estimate>
    where
        F: FnMut(f64) -> f64,
    {
        self.integrate_nested(|x| Ok(Estimate::exact(f(x))), a, b, breakpoints)
    }

    pub fn integrate_nested<F>(&self, mut f: F, a: f64, b: f64, breakpoints: &[f64]) -> Result<Estimate>
    where
        F: FnMut(f64) -> Result<Estimate>,
    {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::Domain(format!("non-finite limits [{a}, {b}]")));
        }
        if a == b {
            return Ok(Estimate {
                value: 0.0,
                error: 0.0,
                evals: 0,
            });
        }
        let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

        let mut cuts = vec![lo];
        let mut inner: Vec<f64> = breakpoints.iter().copied().filter(|&x| x > lo && x < hi).collect();
        inner.sort_by(f64::total_cmp);
        inner.dedup();
        cuts.extend(inner);
        cuts.push(hi);

        let mut evals = 0usize;
        let mut heap = BinaryHeap::new();
        for w in cuts.windows(2) {
            let (seg, n) = gauss_kronrod(&mut f, w[0], w[1])?;
            evals += n;
            heap.push(seg);
        }

        loop {
            let value: f64 = heap.iter().map(|s| s.value).sum();
            let error: f64 = heap.iter().map(|s| s.error).sum();
            let target = self.abs_tol.max(self.rel_tol * value.abs());
            if error <= target {
                return Ok(Estimate {
                    value: sign * value,
                    error,
                    evals,
                });
            }
            if evals >= self.max_evals {
                return Err(Error::Convergence(format!(
                    "error {error:.3e} above target {target:.3e} after {evals} evaluations"
                )));
            }
            let worst = heap.pop().expect("at least one segment");
            let mid = 0.5 * (worst.a + worst.b);
            if mid <= worst.a || mid >= worst.b {
                return Err(Error::Convergence(format!(
                    "interval [{}, {}] cannot be bisected further; error {error:.3e}",
                    worst.a, worst.b
                )));
            }
            let (left, n1) = gauss_kronrod(&mut f, worst.a, mid)?;
            let (right, n2) = gauss_kronrod(&mut f, mid, worst.b)?;
            evals += n1 + n2;
            heap.push(left);
            heap.push(right);
        }
    }
}

fn gauss_kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<(Segment, usize)>
where
    F: FnMut(f64) -> Result<Estimate>,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut evals = 0;
    let mut inner_error = 0.0;
    let mut eval = |x: f64, w: f64| -> Result<f64> {
        let e = f(x)?;
        evals += e.evals;
        inner_error += w * e.error;
        Ok(e.value)
    };

    let fc = eval(centre, WGK[7])?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.abs() * WGK[7];
    let mut values = [0.0; 15];
    values[7] = fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(centre - dx, WGK[j])?;
        let f2 = eval(centre + dx, WGK[j])?;
        values[j] = f1;
        values[14 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((values[j] - mean).abs() + (values[14 - j] - mean).abs());
    }

    let abs_half = half.abs();
    let result = kronrod * half;
    let res_abs = abs_sum * abs_half;
    let res_asc = asc * abs_half;
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    if !result.is_finite() {
        return Err(Error::Convergence(format!("non-finite integrand on [{a}, {b}]")));
    }
    Ok((
        Segment {
            a,
            b,
            value: result,
            error: error + inner_error * abs_half,
        },
        evals,
    ))
}
