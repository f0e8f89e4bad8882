use faer::{c64, Mat, MatRef, Side};

use crate::{OracleError, Result};

pub(crate) fn zeros(n: usize) -> Mat<c64> {
    Mat::from_fn(n, n, |_, _| c64::new(0.0, 0.0))
}

pub(crate) fn identity(n: usize) -> Mat<c64> {
    Mat::from_fn(n, n, |i, j| c64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
}

pub(crate) fn adjoint(a: MatRef<'_, c64>) -> Mat<c64> {
    Mat::from_fn(a.ncols(), a.nrows(), |i, j| a[(j, i)].conj())
}

pub(crate) fn trace(a: MatRef<'_, c64>) -> c64 {
    (0..a.nrows().min(a.ncols())).map(|i| a[(i, i)]).sum()
}

pub(crate) fn scale(a: MatRef<'_, c64>, s: c64) -> Mat<c64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] * s)
}

pub(crate) fn max_abs(a: MatRef<'_, c64>) -> f64 {
    let mut m: f64 = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            m = m.max(a[(i, j)].norm());
        }
    }
    m
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: MatRef<'_, c64>, b: MatRef<'_, c64>) -> f64 {
    assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
    let mut m: f64 = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            m = m.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    m
}

pub(crate) fn commutator(a: MatRef<'_, c64>, b: MatRef<'_, c64>) -> Mat<c64> {
    a * b - b * a
}

pub(crate) fn power(a: MatRef<'_, c64>, p: u32) -> Mat<c64> {
    let mut out = identity(a.nrows());
    for _ in 0..p {
        out = &out * a;
    }
    out
}

fn one_norm(a: MatRef<'_, c64>) -> f64 {
    (0..a.ncols())
        .map(|j| (0..a.nrows()).map(|i| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
pub fn expm(a: MatRef<'_, c64>) -> Mat<c64> {
    let n = a.nrows();
    let norm = one_norm(a);
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let scaled = scale(a, c64::new(0.5f64.powi(squarings as i32), 0.0));
    let mut result = identity(n);
    let mut term = identity(n);
    for k in 1..=24 {
        term = scale((&term * &scaled).as_ref(), c64::new(1.0 / k as f64, 0.0));
        result += &term;
        if max_abs(term.as_ref()) < 1e-18 * max_abs(result.as_ref()) {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Eigenvalues and vectors of a Hermitian matrix, ascending.
pub(crate) fn hermitian_eigen(
    a: MatRef<'_, c64>,
    context: &'static str,
) -> Result<(Vec<f64>, Mat<c64>)> {
    let eig = a
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| OracleError::EigenFailed(context))?;
    let values = eig.S().column_vector().iter().map(|z| z.re).collect();
    Ok((values, eig.U().to_owned()))
}

pub(crate) fn eigenvalues(a: MatRef<'_, c64>, context: &'static str) -> Result<Vec<c64>> {
    a.eigenvalues()
        .map_err(|_| OracleError::EigenFailed(context))
}

pub(crate) fn check_square(a: MatRef<'_, c64>, expected: usize) -> Result<()> {
    if a.nrows() != expected || a.ncols() != expected {
        return Err(OracleError::Shape {
            expected,
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    Ok(())
}
