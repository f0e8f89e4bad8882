use faer::{c64, Mat, MatRef};

use crate::bdg::{imbalance_block, sector_index, BdgMatrix};
use crate::correlation::CorrelationMatrix;
use crate::linalg;
use crate::spectrum::ModeSpectrum;
use crate::{EngineError, Result};

/// Default spectral cutoff on `min(|nu|, |1 - nu|)`.
pub const DEFAULT_CUTOFF: f64 = 1e-8;

const RESIDUAL_TOL: f64 = 1e-8;
const CONDITION_LIMIT: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorLabel {
    K,
    NFull,
    NReal,
    NImag,
    NDiag,
    NOffdiag,
}

/// Coefficient matrix of a quadratic operator.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    pub entries: Mat<c64>,
    pub label: OperatorLabel,
}

impl OperatorMatrix {
    pub fn new(entries: Mat<c64>, label: OperatorLabel) -> Self {
        Self { entries, label }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn frobenius(&self) -> f64 {
        linalg::frobenius(self.entries.as_ref())
    }

    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(self.entries.as_ref())
    }
}

fn peschel_map(nu: f64) -> f64 {
    ((1.0 - nu) / nu).ln()
}

/// `K = log[(1 - C)/C]` with the occupation spectrum clipped into
/// `[cutoff, 1 - cutoff]`.
pub fn entanglement_hamiltonian(c: &CorrelationMatrix, cutoff: f64) -> Result<OperatorMatrix> {
    let a = c.entries().as_ref();
    let (nu, u) = linalg::hermitian_eigen(a, "correlation matrix")?;
    let values: Vec<c64> = nu.iter().map(|&v| c64::new(v, 0.0)).collect();
    let residual = linalg::eigen_residual(a, &values, u.as_ref()) * linalg::norm_inf(a);
    if residual > RESIDUAL_TOL {
        return Err(EngineError::Residual {
            context: "correlation matrix",
            residual,
            tolerance: RESIDUAL_TOL,
        });
    }
    let h: Vec<c64> = nu
        .iter()
        .map(|&v| c64::new(peschel_map(v.clamp(cutoff, 1.0 - cutoff)), 0.0))
        .collect();
    let uh = linalg::adjoint(u.as_ref());
    Ok(OperatorMatrix::new(
        linalg::reassemble(u.as_ref(), &h, uh.as_ref()),
        OperatorLabel::K,
    ))
}

/// Moves eigenvalues closer than `cutoff` to 0 or 1 onto the real axis at
/// distance `cutoff`, so that noise-level eigenvalues map to real, bounded `h`.
fn clip_eigenvalue(nu: c64, cutoff: f64) -> c64 {
    if nu.norm() < cutoff {
        c64::new(cutoff, 0.0)
    } else if (c64::new(1.0, 0.0) - nu).norm() < cutoff {
        c64::new(1.0 - cutoff, 0.0)
    } else {
        nu
    }
}

/// `log[(1 - G)/G]` of a diagonalizable matrix, with eigenpair residuals and
/// the eigenvector condition verified. Returns the operator and its eigenvalues.
fn general_peschel(
    g: MatRef<'_, c64>,
    cutoff: f64,
    context: &'static str,
) -> Result<(Mat<c64>, Vec<c64>)> {
    linalg::check_square(g, context)?;
    let (nu, v) = linalg::general_eigen(g, context)?;
    let residual = linalg::eigen_residual(g, &nu, v.as_ref());
    if residual > RESIDUAL_TOL {
        return Err(EngineError::Residual {
            context,
            residual,
            tolerance: RESIDUAL_TOL,
        });
    }
    let vinv = linalg::inverse(v.as_ref());
    let condition = linalg::norm_inf(v.as_ref()) * linalg::norm_inf(vinv.as_ref());
    if !(condition <= CONDITION_LIMIT) {
        return Err(EngineError::IllConditioned {
            condition,
            limit: CONDITION_LIMIT,
        });
    }
    let one = c64::new(1.0, 0.0);
    let h: Vec<c64> = nu
        .iter()
        .map(|&x| {
            let x = clip_eigenvalue(x, cutoff);
            ((one - x) / x).ln()
        })
        .collect();
    Ok((linalg::reassemble(v.as_ref(), &h, vinv.as_ref()), h))
}

/// Negativity Hamiltonian `log[(1 - Gamma)/Gamma]` of a time-reversed BdG
/// matrix, together with its full (unreduced) mode spectrum.
pub fn negativity_hamiltonian(
    gamma: &BdgMatrix,
    cutoff: f64,
) -> Result<(OperatorMatrix, ModeSpectrum)> {
    let (n, h) = general_peschel(gamma.entries().as_ref(), cutoff, "time-reversed BdG matrix")?;
    Ok((
        OperatorMatrix::new(n, OperatorLabel::NFull),
        ModeSpectrum::full(h),
    ))
}

/// Negativity Hamiltonian of a number-conserving state computed on the
/// `(A1 particles, A2 holes)` sector only.
///
/// The doubled operator is block diagonal with `block` on this sector and
/// `-block^T` on the complementary one, so a single `N x N` diagonalization
/// replaces the `2N x 2N` one.
#[derive(Debug, Clone)]
pub struct ReducedNegativityHamiltonian {
    pub n1: usize,
    pub block: Mat<c64>,
    /// Eigenvalues of `block`; the doubled spectrum repeats them with flipped sign.
    pub h: Vec<c64>,
}

impl ReducedNegativityHamiltonian {
    pub fn from_correlation(c: &CorrelationMatrix, n1: usize, cutoff: f64) -> Result<Self> {
        let m1 = imbalance_block(c, n1);
        let (block, h) = general_peschel(m1.as_ref(), cutoff, "imbalance sector")?;
        Ok(Self { n1, block, h })
    }

    pub fn modes(&self) -> usize {
        self.block.nrows()
    }

    /// The operator in the doubled basis used by [`BdgMatrix`].
    pub fn to_bdg(&self) -> OperatorMatrix {
        let n = self.modes();
        let mut out = linalg::zeros(2 * n, 2 * n);
        for p in 0..n {
            for q in 0..n {
                let (a, b) = (sector_index(p, self.n1, true), sector_index(q, self.n1, true));
                out[(a, b)] = self.block[(p, q)];
                let (a, b) = (sector_index(p, self.n1, false), sector_index(q, self.n1, false));
                out[(a, b)] = -self.block[(q, p)];
            }
        }
        OperatorMatrix::new(out, OperatorLabel::NFull)
    }

    /// Spectrum of the doubled operator: every `h` together with `-h`.
    pub fn bdg_spectrum(&self) -> ModeSpectrum {
        ModeSpectrum::full(self.h.iter().flat_map(|&h| [h, -h]).collect())
    }

    /// `(N_R, N_I)` of the sector block, `N = N_R + i N_I` with both Hermitian.
    pub fn real_imag(&self) -> (Mat<c64>, Mat<c64>) {
        (
            linalg::hermitian_part(self.block.as_ref()),
            linalg::skew_part(self.block.as_ref()),
        )
    }
}
