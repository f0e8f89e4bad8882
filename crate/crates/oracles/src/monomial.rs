//! Partial time reversal by the Majorana-monomial rule: expand an operator in
//! ordered Majorana monomials, multiply each term by `i^m` where `m` counts its
//! `A1` Majoranas, and conjugate with `U = gamma_0 gamma_2 ... gamma_{2(n1-1)}`.

use faer::{c64, Mat, MatRef};

use crate::fock::FockSpace;
use crate::mat::{adjoint, check_square, trace, zeros};
use crate::{OracleError, Result};

/// Ceiling for the literal expansion, which builds every monomial as a matrix.
pub const MAX_MONOMIAL_MODES: usize = 5;

fn check_modes(op: MatRef<'_, c64>, modes: usize, n1: usize, limit: usize, operation: &'static str) -> Result<FockSpace> {
    if modes > limit {
        return Err(OracleError::TooManyModes { operation, modes, limit });
    }
    if n1 > modes {
        return Err(OracleError::Partition { n1, modes });
    }
    let space = FockSpace::new(modes);
    check_square(op, space.dim())?;
    Ok(space)
}

fn monomial(space: &FockSpace, majoranas: &[Mat<c64>], mask: usize) -> Mat<c64> {
    let mut m = crate::mat::identity(space.dim());
    for (a, g) in majoranas.iter().enumerate() {
        if mask >> a & 1 == 1 {
            m = &m * g;
        }
    }
    m
}

/// Coefficients `w_S = Tr(gamma_S^dagger op) / 2^N` indexed by the bit mask of `S`.
pub fn majorana_expansion(op: MatRef<'_, c64>, modes: usize) -> Result<Vec<c64>> {
    let space = check_modes(op, modes, 0, MAX_MONOMIAL_MODES, "Majorana expansion")?;
    let majoranas: Vec<_> = (0..2 * modes).map(|a| space.majorana(a)).collect();
    let norm = space.dim() as f64;
    Ok((0..1usize << (2 * modes))
        .map(|mask| {
            let g = monomial(&space, &majoranas, mask);
            trace((adjoint(g.as_ref()) * op).as_ref()) / norm
        })
        .collect())
}

/// Highest monomial degree carrying a coefficient above `tol`.
pub fn max_monomial_degree(op: MatRef<'_, c64>, modes: usize, tol: f64) -> Result<usize> {
    Ok(majorana_expansion(op, modes)?
        .iter()
        .enumerate()
        .filter(|(_, w)| w.norm() > tol)
        .map(|(mask, _)| mask.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

fn conjugate_by_u(space: &FockSpace, n1: usize, a: &Mat<c64>) -> Mat<c64> {
    let action: Vec<(usize, f64)> = (0..space.dim())
        .map(|s| {
            let (mut state, mut sign) = (s, 1.0);
            for j in (0..n1).rev() {
                let (next, sg) = space.even_majorana_action(j, state);
                state = next;
                sign *= sg;
            }
            (state, sign)
        })
        .collect();
    let mut out = zeros(space.dim());
    for s in 0..space.dim() {
        let (us, ss) = action[s];
        for r in 0..space.dim() {
            let (ur, sr) = action[r];
            out[(ur, us)] = a[(r, s)] * (sr * ss);
        }
    }
    out
}

/// Literal monomial-by-monomial partial time reversal of the first `n1` modes.
pub fn time_reversal_monomial(op: MatRef<'_, c64>, modes: usize, n1: usize) -> Result<Mat<c64>> {
    let space = check_modes(op, modes, n1, MAX_MONOMIAL_MODES, "literal time reversal")?;
    let majoranas: Vec<_> = (0..2 * modes).map(|a| space.majorana(a)).collect();
    let weights = majorana_expansion(op, modes)?;
    let a1_mask = (1usize << (2 * n1)) - 1;
    let mut out = zeros(space.dim());
    for (mask, w) in weights.iter().enumerate() {
        if w.norm() == 0.0 {
            continue;
        }
        let phase = c64::new(0.0, 1.0).powu((mask & a1_mask).count_ones());
        out += crate::mat::scale(monomial(&space, &majoranas, mask).as_ref(), phase * *w);
    }
    Ok(conjugate_by_u(&space, n1, &out))
}

/// The same map evaluated entry by entry in `O(4^N)`.
///
/// A Majorana monomial is a Pauli string `X^x Z^z` up to a phase. Site `j`
/// carries one Majorana when `x_j = 1`, otherwise zero or two depending on
/// `z_j` and the parity of the strings arriving from higher sites. The `i^m`
/// weights therefore act on the `x`-th off-diagonal of the operator as a
/// phase times a bit flip of the `A1` sites with `x_j = 0`.
pub fn time_reversal_entrywise(op: MatRef<'_, c64>, modes: usize, n1: usize) -> Result<Mat<c64>> {
    let space = check_modes(op, modes, n1, usize::BITS as usize - 1, "time reversal")?;
    let dim = space.dim();
    let a1 = (1usize << n1) - 1;
    let mut pre = zeros(dim);
    for x in 0..dim {
        let flips = a1 & !x;
        let mut sign_flips = 0u32;
        for j in 0..n1 {
            if flips >> j & 1 == 1 && (x >> (j + 1)).count_ones() % 2 == 1 {
                sign_flips += 1;
            }
        }
        let mut phase = c64::new(0.0, 1.0).powu((x & a1).count_ones());
        if sign_flips % 2 == 1 {
            phase = -phase;
        }
        for s in 0..dim {
            let r = s ^ x;
            pre[(r, s)] = phase * op[(r ^ flips, s ^ flips)];
        }
    }
    Ok(conjugate_by_u(&space, n1, &pre))
}
