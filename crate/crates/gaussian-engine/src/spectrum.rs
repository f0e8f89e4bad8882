use faer::{c64, Mat};

use crate::linalg;
use crate::peschel::ReducedNegativityHamiltonian;
use crate::{EngineError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    /// Every eigenvalue of the doubled operator.
    Full,
    /// One representative of each `(h, -h)` pair.
    Reduced,
}

/// Single-particle eigenvalues `h = h_R + i h_I` of a quadratic operator.
#[derive(Debug, Clone)]
pub struct ModeSpectrum {
    pub values: Vec<c64>,
    pub reduction: Reduction,
}

/// Tolerance below which a real or imaginary part counts as zero when reducing.
const ZERO_TOL: f64 = 1e-12;

impl ModeSpectrum {
    pub fn full(values: Vec<c64>) -> Self {
        Self {
            values,
            reduction: Reduction::Full,
        }
    }

    pub fn reduced(values: Vec<c64>) -> Self {
        Self {
            values,
            reduction: Reduction::Reduced,
        }
    }

    /// Keeps `h_R > 0`; among `h_R = 0` keeps `h_I > 0`; exact zeros are kept
    /// with half multiplicity. The result is sorted by real then imaginary part.
    pub fn reduce(&self) -> ModeSpectrum {
        if self.reduction == Reduction::Reduced {
            return self.clone();
        }
        let mut kept = Vec::with_capacity(self.values.len() / 2);
        let mut zeros = 0usize;
        for &h in &self.values {
            if h.re > ZERO_TOL {
                kept.push(h);
            } else if h.re.abs() <= ZERO_TOL {
                if h.im > ZERO_TOL {
                    kept.push(h);
                } else if h.im.abs() <= ZERO_TOL {
                    zeros += 1;
                }
            }
        }
        kept.extend(std::iter::repeat(c64::new(0.0, 0.0)).take(zeros / 2));
        kept.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        ModeSpectrum::reduced(kept)
    }

    fn pairing_defect(&self, partner: impl Fn(c64) -> c64) -> f64 {
        let mut used = vec![false; self.values.len()];
        let mut worst: f64 = 0.0;
        for (i, &h) in self.values.iter().enumerate() {
            if used[i] {
                continue;
            }
            let target = partner(h);
            let best = self
                .values
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i && !used[j])
                .min_by(|a, b| (*a.1 - target).norm().total_cmp(&(*b.1 - target).norm()));
            match best {
                Some((j, &g)) if (h - target).norm() > ZERO_TOL => {
                    used[i] = true;
                    used[j] = true;
                    worst = worst.max((g - target).norm());
                }
                _ => used[i] = true,
            }
        }
        worst
    }

    /// Largest distance between an eigenvalue and the nearest available
    /// partner `conj(h)`; self-conjugate values need no partner.
    pub fn conjugate_pairing_defect(&self) -> f64 {
        self.pairing_defect(|h| h.conj())
    }

    /// Same for `-h`.
    pub fn particle_hole_defect(&self) -> f64 {
        self.pairing_defect(|h| -h)
    }
}

/// Renyi negativity from a reduced mode spectrum, assuming the real and
/// imaginary parts of the negativity Hamiltonian can be diagonalized together.
/// `alpha = 1` gives the logarithmic negativity.
pub fn renyi_negativity_exact(spectrum: &ModeSpectrum, alpha: u32) -> Result<f64> {
    if spectrum.reduction != Reduction::Reduced {
        return Err(EngineError::NotReduced);
    }
    if alpha == 0 {
        return Err(negham_core::CoreError::InvalidAlpha(alpha).into());
    }
    let a = alpha as f64;
    let one = c64::new(1.0, 0.0);
    if alpha == 1 || alpha % 2 == 0 {
        let total = spectrum
            .values
            .iter()
            .map(|&h| linalg::softplus_neg(a * h.re) - a * (one + (-h).exp()).norm().ln())
            .sum();
        return Ok(total);
    }
    let total: c64 = spectrum
        .values
        .iter()
        .map(|&h| linalg::log1p_exp_neg(c64::new(a * h.re, h.im)) - linalg::log1p_exp_neg(h) * a)
        .sum();
    if total.im.abs() > 1e-8 {
        return Err(EngineError::ImaginaryResidue(total.im));
    }
    Ok(total.re)
}

/// Renyi entropy of a Gaussian state from its occupation spectrum.
pub fn renyi_entropy_exact(occupations: &[f64], alpha: u32, cutoff: f64) -> Result<f64> {
    occupations
        .iter()
        .map(|&nu| negham_core::renyi_density(alpha, nu.clamp(cutoff, 1.0 - cutoff)))
        .sum::<std::result::Result<f64, _>>()
        .map_err(Into::into)
}

impl ReducedNegativityHamiltonian {
    /// Renyi negativity from traces of the operator itself.
    ///
    /// Even `alpha` (and the replica limit `alpha = 1`) needs
    /// `Tr (rho rho^dagger)^{alpha/2}`, whose exponent is `alpha N_R`; odd
    /// `alpha` needs `Tr (rho rho^dagger)^{(alpha-1)/2} rho`, with exponent
    /// `alpha N_R + i N_I`. The normalization comes from the spectrum of `N`.
    pub fn renyi_negativity(&self, alpha: u32) -> Result<f64> {
        if alpha == 0 {
            return Err(negham_core::CoreError::InvalidAlpha(alpha).into());
        }
        let a = alpha as f64;
        let (nr, ni) = self.real_imag();
        let one = c64::new(1.0, 0.0);
        if alpha == 1 || alpha % 2 == 0 {
            let eps = linalg::hermitian_eigenvalues(nr.as_ref(), "real part")?;
            let traced: f64 = eps.iter().map(|&e| linalg::softplus_neg(a * e)).sum();
            let norm: f64 = self.h.iter().map(|&h| (one + (-h).exp()).norm().ln()).sum();
            return Ok(traced - a * norm);
        }
        let exponent = Mat::from_fn(nr.nrows(), nr.ncols(), |i, j| {
            nr[(i, j)] * a + c64::new(0.0, 1.0) * ni[(i, j)]
        });
        let mu = linalg::eigenvalues(exponent.as_ref(), "odd-power exponent")?;
        let traced: c64 = mu.iter().map(|&m| linalg::log1p_exp_neg(m)).sum();
        let norm: c64 = self.h.iter().map(|&h| linalg::log1p_exp_neg(h)).sum();
        Ok((traced - norm * a).re)
    }
}
