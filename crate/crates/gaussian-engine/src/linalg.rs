//! Thin helpers over faer for the dense complex operations used throughout.

use faer::linalg::solvers::DenseSolveCore;
use faer::{c64, Mat, MatRef, Side};

use crate::{EngineError, Result};

pub fn zeros(rows: usize, cols: usize) -> Mat<c64> {
    Mat::from_fn(rows, cols, |_, _| c64::new(0.0, 0.0))
}

pub fn identity(n: usize) -> Mat<c64> {
    Mat::from_fn(n, n, |i, j| c64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
}

pub fn adjoint(a: MatRef<'_, c64>) -> Mat<c64> {
    Mat::from_fn(a.ncols(), a.nrows(), |i, j| a[(j, i)].conj())
}

pub fn transpose(a: MatRef<'_, c64>) -> Mat<c64> {
    Mat::from_fn(a.ncols(), a.nrows(), |i, j| a[(j, i)])
}

/// `(A + A^dagger) / 2`.
pub fn hermitian_part(a: MatRef<'_, c64>) -> Mat<c64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5)
}

/// `(A - A^dagger) / 2i`, itself Hermitian.
pub fn skew_part(a: MatRef<'_, c64>) -> Mat<c64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| {
        (a[(i, j)] - a[(j, i)].conj()) * c64::new(0.0, -0.5)
    })
}

pub fn frobenius(a: MatRef<'_, c64>) -> f64 {
    let mut s = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            s += a[(i, j)].norm_sqr();
        }
    }
    s.sqrt()
}

pub fn max_abs(a: MatRef<'_, c64>) -> f64 {
    let mut m: f64 = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            m = m.max(a[(i, j)].norm());
        }
    }
    m
}

pub fn max_abs_diff(a: MatRef<'_, c64>, b: MatRef<'_, c64>) -> f64 {
    let mut m: f64 = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            m = m.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    m
}

/// Largest deviation from Hermiticity.
pub fn hermiticity_defect(a: MatRef<'_, c64>) -> f64 {
    let mut m: f64 = 0.0;
    for j in 0..a.ncols() {
        for i in 0..=j.min(a.nrows() - 1) {
            m = m.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    m
}

/// Infinity norm, the largest absolute row sum.
pub fn norm_inf(a: MatRef<'_, c64>) -> f64 {
    (0..a.nrows())
        .map(|i| (0..a.ncols()).map(|j| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn check_square(a: MatRef<'_, c64>, expected: &str) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(EngineError::ShapeMismatch {
            expected: expected.to_string(),
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    Ok(a.nrows())
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(a: MatRef<'_, c64>, context: &'static str) -> Result<(Vec<f64>, Mat<c64>)> {
    let evd = a
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| EngineError::EigenFailed { context })?;
    let values = evd.S().column_vector().iter().map(|z| z.re).collect();
    Ok((values, evd.U().to_owned()))
}

pub fn hermitian_eigenvalues(a: MatRef<'_, c64>, context: &'static str) -> Result<Vec<f64>> {
    a.self_adjoint_eigenvalues(Side::Lower)
        .map_err(|_| EngineError::EigenFailed { context })
}

/// General eigendecomposition `A = V diag(w) V^-1`.
pub fn general_eigen(a: MatRef<'_, c64>, context: &'static str) -> Result<(Vec<c64>, Mat<c64>)> {
    let evd = a.eigen().map_err(|_| EngineError::EigenFailed { context })?;
    let values = evd.S().column_vector().iter().copied().collect();
    Ok((values, evd.U().to_owned()))
}

pub fn eigenvalues(a: MatRef<'_, c64>, context: &'static str) -> Result<Vec<c64>> {
    a.eigenvalues().map_err(|_| EngineError::EigenFailed { context })
}

/// Largest `||A v - w v||` over eigenpairs, relative to `||A||_inf`.
pub fn eigen_residual(a: MatRef<'_, c64>, values: &[c64], vectors: MatRef<'_, c64>) -> f64 {
    let av = a * vectors;
    let scale = norm_inf(a).max(1e-300);
    let mut worst: f64 = 0.0;
    for (j, &w) in values.iter().enumerate() {
        let mut r = 0.0;
        let mut nv = 0.0;
        for i in 0..a.nrows() {
            r += (av[(i, j)] - w * vectors[(i, j)]).norm_sqr();
            nv += vectors[(i, j)].norm_sqr();
        }
        worst = worst.max((r / nv.max(1e-300)).sqrt() / scale);
    }
    worst
}

pub fn inverse(a: MatRef<'_, c64>) -> Mat<c64> {
    a.partial_piv_lu().inverse()
}

/// `V diag(f) W`.
pub fn reassemble(v: MatRef<'_, c64>, f: &[c64], w: MatRef<'_, c64>) -> Mat<c64> {
    let scaled = Mat::from_fn(v.nrows(), v.ncols(), |i, j| v[(i, j)] * f[j]);
    &scaled * w
}

/// `log |det A|` from an LU factorization.
pub fn log_abs_det(a: MatRef<'_, c64>) -> f64 {
    let lu = a.partial_piv_lu();
    let u = lu.U();
    (0..u.nrows()).map(|i| u[(i, i)].norm().ln()).sum()
}

/// `log(1 + e^{-z})` without overflow for large negative real parts.
pub fn log1p_exp_neg(z: c64) -> c64 {
    if z.re >= 0.0 {
        (c64::new(1.0, 0.0) + (-z).exp()).ln()
    } else {
        -z + (c64::new(1.0, 0.0) + z.exp()).ln()
    }
}

pub fn softplus_neg(x: f64) -> f64 {
    if x >= 0.0 {
        (-x).exp().ln_1p()
    } else {
        -x + x.exp().ln_1p()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_log1p_exp() {
        let big = log1p_exp_neg(c64::new(-800.0, 0.3));
        assert!((big - c64::new(800.0, -0.3)).norm() < 1e-12);
        assert!((softplus_neg(-800.0) - 800.0).abs() < 1e-12);
        assert!((softplus_neg(0.0) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn log_det_of_diagonal() {
        let a = Mat::from_fn(3, 3, |i, j| {
            if i == j {
                c64::new((i + 2) as f64, 0.0)
            } else {
                c64::new(0.0, 0.0)
            }
        });
        assert!((log_abs_det(a.as_ref()) - 24f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn eigen_roundtrip() {
        let a = Mat::from_fn(5, 5, |i, j| c64::new((i * 3 + j) as f64 * 0.1, (i as f64 - j as f64) * 0.2));
        let (w, v) = general_eigen(a.as_ref(), "test").unwrap();
        assert!(eigen_residual(a.as_ref(), &w, v.as_ref()) < 1e-12);
        let vinv = inverse(v.as_ref());
        let back = reassemble(v.as_ref(), &w, vinv.as_ref());
        assert!(max_abs_diff(back.as_ref(), a.as_ref()) < 1e-12);
    }
}
