use faer::linalg::solvers::Solve;
use faer::{c64, Mat};

use crate::correlation::CorrelationMatrix;
use crate::linalg;
use crate::{EngineError, Result};

/// Exact fermionic Renyi negativities of a number-conserving Gaussian state
/// by composing Gaussian operators at the covariance level.
///
/// With `Gamma = 1 - 2C` and `Gamma_pm` the covariances of `rho^R1` and its
/// adjoint, the product `rho^R1 (rho^R1)^dagger` is Gaussian with correlation
/// matrix `C_x = [1 - (1 + G+ G-)^-1 (G+ + G-)] / 2` and trace
/// `prod (nu^2 + (1-nu)^2)`. Powers of it follow from the spectrum of `C_x`;
/// the odd moments need one further product with `rho^R1`, whose trace is a
/// determinant.
/// Eigenvalues of the composed correlation closer than this to 0 or 1 are
/// below the solver's resolution; the half powers in the even and replica
/// formulas would otherwise turn `1e-16` noise into `1e-8` errors.
pub const XI_RESOLUTION: f64 = 1e-13;

fn snap_unresolved(x: c64) -> c64 {
    let one = c64::new(1.0, 0.0);
    if x.norm() < XI_RESOLUTION {
        c64::new(0.0, 0.0)
    } else if (one - x).norm() < XI_RESOLUTION {
        one
    } else {
        x
    }
}

#[derive(Debug, Clone)]
pub struct GaussianComposition {
    xi: Vec<c64>,
    v: Mat<c64>,
    vinv: Mat<c64>,
    base: f64,
    c_minus: Mat<c64>,
}

impl GaussianComposition {
    pub fn new(c: &CorrelationMatrix, n1: usize) -> Result<Self> {
        let n = c.dim();
        let m = c.entries();
        let i = c64::new(0.0, 1.0);
        let one = |p: usize, q: usize| c64::new(if p == q { 1.0 } else { 0.0 }, 0.0);
        let gamma = |p: usize, q: usize| one(p, q) - m[(p, q)] * 2.0;
        let reversed = |sign: f64| {
            Mat::from_fn(n, n, |p, q| match (p < n1, q < n1) {
                (true, true) => -gamma(p, q),
                (false, false) => gamma(p, q),
                _ => i * sign * gamma(p, q),
            })
        };
        let g_plus = reversed(1.0);
        let g_minus = reversed(-1.0);
        let lhs = Mat::from_fn(n, n, &one) + &g_plus * &g_minus;
        let rhs = &g_plus + &g_minus;
        let solved = lhs.partial_piv_lu().solve(&rhs);
        let c_cross = Mat::from_fn(n, n, |p, q| (one(p, q) - solved[(p, q)]) * 0.5);
        let (mut xi, v) = linalg::general_eigen(c_cross.as_ref(), "composed correlation")?;
        let residual = linalg::eigen_residual(c_cross.as_ref(), &xi, v.as_ref());
        if residual > 1e-8 {
            return Err(EngineError::Residual {
                context: "composed correlation",
                residual,
                tolerance: 1e-8,
            });
        }
        for x in &mut xi {
            *x = snap_unresolved(*x);
        }
        let vinv = linalg::inverse(v.as_ref());
        let base = c
            .spectrum()?
            .iter()
            .map(|&nu| ((1.0 - nu).powi(2) + nu * nu).ln())
            .sum();
        let c_minus = Mat::from_fn(n, n, |p, q| (one(p, q) - g_minus[(p, q)]) * 0.5);
        Ok(Self {
            xi,
            v,
            vinv,
            base,
            c_minus,
        })
    }

    /// `log Tr (rho rho^dagger)^{alpha/2}` for even `alpha` and
    /// `log Tr (rho rho^dagger)^{(alpha-1)/2} rho` for odd `alpha > 1`, with
    /// `rho = rho^R1`. `alpha = 1` gives `log Tr |rho^R1|`.
    pub fn renyi_negativity(&self, alpha: u32) -> Result<f64> {
        if alpha == 0 {
            return Err(negham_core::CoreError::InvalidAlpha(alpha).into());
        }
        let one = c64::new(1.0, 0.0);
        if alpha == 1 || alpha % 2 == 0 {
            let e = alpha as f64 / 2.0;
            let sum: c64 = self
                .xi
                .iter()
                .map(|&x| (x.powf(e) + (one - x).powf(e)).ln())
                .sum();
            return Ok(sum.re + e * self.base);
        }
        let p = ((alpha - 1) / 2) as i32;
        let weights: Vec<c64> = self.xi.iter().map(|&x| x.powi(p) + (one - x).powi(p)).collect();
        let f: Vec<c64> = self.xi.iter().zip(&weights).map(|(&x, &w)| x.powi(p) / w).collect();
        let c_w = linalg::reassemble(self.v.as_ref(), &f, self.vinv.as_ref());
        let n = c_w.nrows();
        let id = linalg::identity(n);
        let product = &c_w * &self.c_minus + (&id - &c_w) * (&id - &self.c_minus);
        let log_weights: f64 = weights.iter().map(|w| w.norm().ln()).sum();
        Ok(log_weights + p as f64 * self.base + linalg::log_abs_det(product.as_ref()))
    }

    pub fn log_trace_norm(&self) -> Result<f64> {
        self.renyi_negativity(1)
    }
}
