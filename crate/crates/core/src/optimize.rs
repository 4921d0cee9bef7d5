//! One-dimensional minimization: grid bracketing followed by golden-section
//! refinement.

use crate::error::{domain, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Location and value of a minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
}

/// Golden-section search on `[a, b]` until the bracket is narrower than `tol`.
///
/// Assumes `f` is unimodal on the interval. Returns the best point evaluated.
pub fn golden_section<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Minimum>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(a < b && tol > 0.0) {
        return domain(format!("invalid golden-section bracket [{a}, {b}] tol {tol}"));
    }
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 {
        Minimum { x: x1, value: f1 }
    } else {
        Minimum { x: x2, value: f2 }
    })
}

/// Scans `points` equally spaced nodes on `[a, b]`, then refines the bracket
/// around the smallest node with golden-section search.
///
/// The scan protects against a non-unimodal `f` by picking the global grid
/// minimum before the local search starts.
pub fn scan_then_golden<F>(mut f: F, a: f64, b: f64, points: usize, tol: f64) -> Result<Minimum>
where
    F: FnMut(f64) -> Result<f64>,
{
    if points < 3 {
        return domain(format!("grid scan needs at least 3 points, got {points}"));
    }
    let step = (b - a) / (points - 1) as f64;
    let node = |i: usize| if i == points - 1 { b } else { a + step * i as f64 };
    let mut best = Minimum {
        x: a,
        value: f64::INFINITY,
    };
    let mut best_index = 0;
    for i in 0..points {
        let x = node(i);
        let v = f(x)?;
        if v < best.value {
            best = Minimum { x, value: v };
            best_index = i;
        }
    }
    let lo = node(best_index.saturating_sub(1));
    let hi = node((best_index + 1).min(points - 1));
    let refined = golden_section(&mut f, lo, hi, tol)?;
    Ok(if refined.value <= best.value { refined } else { best })
}
