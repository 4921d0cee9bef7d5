// Small fixed-size complex matrices for the Ginibre and Bures constructions.
// Only dimensions 2 and 3 are ever used.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;

pub(crate) const MAX_DIM: usize = 3;

pub(crate) type Mat = [[Complex64; MAX_DIM]; MAX_DIM];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub(crate) fn ginibre<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Mat {
    let mut g = [[ZERO; MAX_DIM]; MAX_DIM];
    for row in g.iter_mut().take(n) {
        for z in row.iter_mut().take(n) {
            *z = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
    }
    g
}

pub(crate) fn mul(a: &Mat, b: &Mat, n: usize) -> Mat {
    let mut out = [[ZERO; MAX_DIM]; MAX_DIM];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = (0..n).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// `A A†`.
pub(crate) fn gram(a: &Mat, n: usize) -> Mat {
    let mut out = [[ZERO; MAX_DIM]; MAX_DIM];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = (0..n).map(|k| a[i][k] * a[j][k].conj()).sum();
        }
    }
    out
}

/// Haar-distributed unitary: Gram–Schmidt on the columns of a Ginibre matrix,
/// which is the QR factorization with a positive diagonal in `R`.
pub(crate) fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Mat {
    let g = ginibre(rng, n);
    // columns[c][i] is entry (i, c)
    let mut columns = [[ZERO; MAX_DIM]; MAX_DIM];
    for col in 0..n {
        let mut v: [Complex64; MAX_DIM] = [ZERO; MAX_DIM];
        for (i, vi) in v.iter_mut().enumerate().take(n) {
            *vi = g[i][col];
        }
        for prev in columns.iter().take(col) {
            let proj: Complex64 = (0..n).map(|i| prev[i].conj() * v[i]).sum();
            for (vi, pi) in v.iter_mut().zip(prev).take(n) {
                *vi -= proj * pi;
            }
        }
        let norm = v[..n].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for (c, vi) in columns[col].iter_mut().zip(v).take(n) {
            *c = vi / norm;
        }
    }
    let mut q = [[ZERO; MAX_DIM]; MAX_DIM];
    for (c, column) in columns.iter().enumerate().take(n) {
        for (i, x) in column.iter().enumerate().take(n) {
            q[i][c] = *x;
        }
    }
    q
}

/// Eigenvalues of a Hermitian matrix of dimension 2 or 3, unsorted.
pub(crate) fn hermitian_eigenvalues(h: &Mat, n: usize) -> [f64; MAX_DIM] {
    match n {
        2 => {
            let a = h[0][0].re;
            let b = h[1][1].re;
            let mean = 0.5 * (a + b);
            let rad = (0.25 * (a - b) * (a - b) + h[0][1].norm_sqr()).sqrt();
            [mean + rad, mean - rad, 0.0]
        }
        3 => {
            let q = (h[0][0].re + h[1][1].re + h[2][2].re) / 3.0;
            let (a, b, c) = (h[0][0].re - q, h[1][1].re - q, h[2][2].re - q);
            let (d, e, f) = (h[0][1], h[0][2], h[1][2]);
            let off = d.norm_sqr() + e.norm_sqr() + f.norm_sqr();
            let p2 = (a * a + b * b + c * c + 2.0 * off) / 6.0;
            if p2 <= 0.0 {
                return [q, q, q];
            }
            let p = p2.sqrt();
            // det(H − qI)
            let det = a * b * c + 2.0 * (d * f * e.conj()).re - a * f.norm_sqr() - b * e.norm_sqr() - c * d.norm_sqr();
            let half_det = (det / (p * p * p) / 2.0).clamp(-1.0, 1.0);
            let phi = half_det.acos() / 3.0;
            let l1 = q + 2.0 * p * phi.cos();
            let l3 = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
            [l1, 3.0 * q - l1 - l3, l3]
        }
        _ => unreachable!("only qubits and qutrits are sampled"),
    }
}
