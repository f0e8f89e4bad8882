use faer::{c64, Mat};

use crate::linalg;
use crate::peschel::{OperatorLabel, OperatorMatrix};
use crate::{EngineError, Result};

/// `N = N_R + i N_I` split, with `N_diag = N_R - K` and `N_offdiag = i N_I`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub real: OperatorMatrix,
    pub imag: OperatorMatrix,
    pub diag: OperatorMatrix,
    pub offdiag: OperatorMatrix,
}

impl Decomposition {
    /// `||[N_R, N_I]||_F / ||N_R||_F`.
    pub fn commutator_ratio(&self) -> f64 {
        let (r, i) = (self.real.entries.as_ref(), self.imag.entries.as_ref());
        let comm = &(r * i) - &(i * r);
        linalg::frobenius(comm.as_ref()) / linalg::frobenius(r).max(1e-300)
    }
}

/// A number-conserving `N x N` coefficient matrix in the doubled basis:
/// particle block `K`, hole block `-K^T`.
pub fn embed_particle_operator(k: &OperatorMatrix) -> OperatorMatrix {
    let n = k.dim();
    let e = &k.entries;
    let entries = Mat::from_fn(2 * n, 2 * n, |a, b| {
        let (p, q) = (a / 2, b / 2);
        match (a % 2, b % 2) {
            (0, 0) => e[(p, q)],
            (1, 1) => -e[(q, p)],
            _ => c64::new(0.0, 0.0),
        }
    });
    OperatorMatrix::new(entries, k.label)
}

/// Splits the full negativity Hamiltonian. `k` may be given per mode (`N x N`)
/// or already doubled (`2N x 2N`).
pub fn decompose(n_full: &OperatorMatrix, k: &OperatorMatrix) -> Result<Decomposition> {
    let dim = linalg::check_square(n_full.entries.as_ref(), "square negativity Hamiltonian")?;
    let k = match k.dim() {
        d if d == dim => k.clone(),
        d if 2 * d == dim => embed_particle_operator(k),
        d => {
            return Err(EngineError::ShapeMismatch {
                expected: format!("{dim}x{dim} or {0}x{0} entanglement Hamiltonian", dim / 2),
                rows: d,
                cols: d,
            })
        }
    };
    let n = n_full.entries.as_ref();
    let real = linalg::hermitian_part(n);
    let imag = linalg::skew_part(n);
    let diag = &real - &k.entries;
    let offdiag = Mat::from_fn(dim, dim, |a, b| c64::new(0.0, 1.0) * imag[(a, b)]);
    Ok(Decomposition {
        real: OperatorMatrix::new(real, OperatorLabel::NReal),
        imag: OperatorMatrix::new(imag, OperatorLabel::NImag),
        diag: OperatorMatrix::new(diag, OperatorLabel::NDiag),
        offdiag: OperatorMatrix::new(offdiag, OperatorLabel::NOffdiag),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitian_input_has_no_imaginary_part() {
        let h = Mat::from_fn(4, 4, |i, j| c64::new((i + j) as f64, i as f64 - j as f64));
        let n = OperatorMatrix::new(h.clone(), OperatorLabel::NFull);
        let k = OperatorMatrix::new(linalg::zeros(4, 4), OperatorLabel::K);
        let d = decompose(&n, &k).unwrap();
        assert!(linalg::max_abs(d.imag.entries.as_ref()) < 1e-15);
        assert!(linalg::max_abs_diff(d.diag.entries.as_ref(), h.as_ref()) < 1e-15);
    }

    #[test]
    fn parts_are_hermitian_and_reassemble() {
        let a = Mat::from_fn(4, 4, |i, j| c64::new((i * 4 + j) as f64 * 0.1, (j as f64).sin()));
        let n = OperatorMatrix::new(a.clone(), OperatorLabel::NFull);
        let k = OperatorMatrix::new(linalg::zeros(2, 2), OperatorLabel::K);
        let d = decompose(&n, &k).unwrap();
        assert!(d.real.hermiticity_defect() < 1e-15);
        assert!(d.imag.hermiticity_defect() < 1e-15);
        let back = &d.real.entries + &d.offdiag.entries;
        assert!(linalg::max_abs_diff(back.as_ref(), a.as_ref()) < 1e-15);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let n = OperatorMatrix::new(linalg::zeros(4, 4), OperatorLabel::NFull);
        let k = OperatorMatrix::new(linalg::zeros(3, 3), OperatorLabel::K);
        assert!(matches!(decompose(&n, &k), Err(EngineError::ShapeMismatch { .. })));
    }
}
