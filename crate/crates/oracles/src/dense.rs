//! Gaussian states rebuilt as explicit `2^N x 2^N` density matrices.

use faer::{c64, Mat, MatRef};

use crate::fock::FockSpace;
use crate::mat::{adjoint, check_square, hermitian_eigen, trace, zeros};
use crate::monomial::time_reversal_entrywise;
use crate::{OracleError, Result};

pub const MAX_STATE_MODES: usize = 12;
pub const MAX_REVERSAL_MODES: usize = 10;

const HERMITICITY_TOL: f64 = 1e-10;

/// `rho = exp(-sum_ij h_ij c_i^dagger c_j) / Z` on `N` modes.
#[derive(Debug, Clone)]
pub struct DenseGaussianState {
    space: FockSpace,
    rho: Mat<c64>,
    coefficients: Mat<c64>,
    populations: Vec<f64>,
}

impl DenseGaussianState {
    pub fn modes(&self) -> usize {
        self.space.modes()
    }

    pub fn density(&self) -> MatRef<'_, c64> {
        self.rho.as_ref()
    }

    /// The quadratic coefficient matrix `h` of the exponent.
    pub fn coefficients(&self) -> MatRef<'_, c64> {
        self.coefficients.as_ref()
    }

    pub fn trace(&self) -> c64 {
        trace(self.rho.as_ref())
    }

    /// `<c_i^dagger c_j>` measured on the Fock-space matrix.
    pub fn remeasure(&self) -> Mat<c64> {
        let n = self.modes();
        Mat::from_fn(n, n, |i, j| {
            let mut acc = c64::new(0.0, 0.0);
            for u in 0..self.space.dim() {
                if let Some((v, sign)) = self.space.hop(i, j, u) {
                    acc += self.rho[(u, v)] * sign;
                }
            }
            acc
        })
    }

    pub fn von_neumann_entropy(&self) -> f64 {
        self.populations
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|p| -p * p.ln())
            .sum()
    }
}

/// Builds the Fock-space state whose two-point function `<c_i^dagger c_j>` is `c`.
/// Occupations of the eigenmodes are clipped to `[clip, 1 - clip]`.
pub fn dense_from_covariance(c: MatRef<'_, c64>, clip: f64) -> Result<DenseGaussianState> {
    let n = c.nrows();
    if n > MAX_STATE_MODES {
        return Err(OracleError::TooManyModes {
            operation: "dense state construction",
            modes: n,
            limit: MAX_STATE_MODES,
        });
    }
    check_square(c, n)?;
    let mut defect: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            defect = defect.max((c[(i, j)] - c[(j, i)].conj()).norm());
        }
    }
    if defect > HERMITICITY_TOL {
        return Err(OracleError::NotHermitian(defect));
    }

    // <c_i^dagger c_j> = [(1 + e^h)^{-1}]_{ji}, so h = log[(1 - C^T) / C^T].
    let ct = Mat::from_fn(n, n, |i, j| c[(j, i)]);
    let (nu, w) = hermitian_eigen(ct.as_ref(), "covariance matrix")?;
    let eps: Vec<f64> = nu
        .iter()
        .map(|&v| {
            let v = v.clamp(clip, 1.0 - clip);
            ((1.0 - v) / v).ln()
        })
        .collect();
    let coefficients = Mat::from_fn(n, n, |i, j| {
        (0..n).map(|k| w[(i, k)] * w[(j, k)].conj() * eps[k]).sum::<c64>()
    });

    let space = FockSpace::new(n);
    let dim = space.dim();
    let mut h = zeros(dim);
    for i in 0..n {
        for j in 0..n {
            let hij = coefficients[(i, j)];
            if hij.norm() == 0.0 {
                continue;
            }
            for s in 0..dim {
                if let Some((r, sign)) = space.hop(i, j, s) {
                    h[(r, s)] += hij * sign;
                }
            }
        }
    }
    let (energies, v) = hermitian_eigen(h.as_ref(), "Fock-space generator")?;
    let e0 = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = energies.iter().map(|e| (-(e - e0)).exp()).collect();
    let z: f64 = weights.iter().sum();
    let populations: Vec<f64> = weights.iter().map(|w| w / z).collect();
    let scaled = Mat::from_fn(dim, dim, |r, k| v[(r, k)] * populations[k]);
    let rho = &scaled * adjoint(v.as_ref());
    Ok(DenseGaussianState {
        space,
        rho,
        coefficients,
        populations,
    })
}

/// Partial time reversal of the first `n1` modes of a dense state.
pub fn dense_time_reversal(state: &DenseGaussianState, n1: usize) -> Result<Mat<c64>> {
    if state.modes() > MAX_REVERSAL_MODES {
        return Err(OracleError::TooManyModes {
            operation: "dense time reversal",
            modes: state.modes(),
            limit: MAX_REVERSAL_MODES,
        });
    }
    time_reversal_entrywise(state.density(), state.modes(), n1)
}

/// `rho^R1 = U S V^dagger`; singular values come straight from the SVD so that
/// tiny ones are not lost to a square root of eigenvalues of `rho rho^dagger`.
fn singular_decomposition(rho_r: MatRef<'_, c64>) -> Result<(Vec<f64>, Mat<c64>, Mat<c64>)> {
    let svd = rho_r
        .svd()
        .map_err(|_| OracleError::EigenFailed("singular value decomposition"))?;
    let sigma = svd.S().column_vector().iter().map(|z| z.re).collect();
    Ok((sigma, svd.U().to_owned(), svd.V().to_owned()))
}

fn checked_log(x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x.ln())
    } else {
        Err(OracleError::NonPositiveTrace(x))
    }
}

/// `log Tr |rho^R1|`.
pub fn log_trace_norm(rho_r: MatRef<'_, c64>) -> Result<f64> {
    let (sigma, _, _) = singular_decomposition(rho_r)?;
    checked_log(sigma.iter().sum())
}

/// Fermionic Renyi negativity from a time-reversed density matrix: `log Tr|rho^R1|`
/// at `alpha = 1`, `log Tr[(rho^R1 rho^R1+)^{alpha/2}]` for even `alpha` and
/// `log Re Tr[(rho^R1 rho^R1+)^{(alpha-1)/2} rho^R1]` for odd `alpha`.
pub fn renyi_negativity_dense(rho_r: MatRef<'_, c64>, alpha: u32) -> Result<f64> {
    match alpha {
        0 => Err(OracleError::InvalidAlpha),
        1 => log_trace_norm(rho_r),
        a if a % 2 == 0 => {
            let (sigma, _, _) = singular_decomposition(rho_r)?;
            checked_log(sigma.iter().map(|x| x.powi(a as i32)).sum())
        }
        a => {
            // (rho rho^+)^p rho = U S^{2p+1} V^+, whose trace is sum_k s_k^a (V^+ U)_kk.
            let (sigma, u, v) = singular_decomposition(rho_r)?;
            let dim = u.nrows();
            let traced: c64 = sigma
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    let overlap: c64 = (0..dim).map(|r| v[(r, k)].conj() * u[(r, k)]).sum();
                    overlap * s.powi(a as i32)
                })
                .sum();
            checked_log(traced.re)
        }
    }
}
