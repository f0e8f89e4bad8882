//! Two-mode algebra of a single quasiparticle pair. Mode 1 (bit 0) is the
//! member in `A1`, mode 2 (bit 1) the member in `A2`; the basis is ordered
//! `|00>, |10>, |01>, |11>` with the first digit giving mode 1.

use std::f64::consts::PI;

use faer::{c64, Mat, MatRef};
use negham_core::StateKind;

use crate::fock::FockSpace;
use crate::mat::{
    adjoint, commutator, eigenvalues, expm, hermitian_eigen, identity, max_abs, max_abs_diff,
    power, scale, trace,
};
use crate::monomial::{max_monomial_degree, time_reversal_monomial};
use crate::{OracleError, Result};

/// Which partial operation has been applied to a pair matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairTransform {
    Original,
    Transposed,
    TimeReversed,
}

/// Which partial operation a trace is evaluated with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceVariant {
    /// `Tr[e^{i lambda Q} (rho^T1)^alpha]`.
    Transpose,
    /// Even/odd split moments of `rho^R1` with the same charge insertion.
    TimeReversal,
}

#[derive(Debug, Clone)]
pub struct PairDensityMatrix {
    entries: Mat<c64>,
    kind: StateKind,
    n: f64,
    phi: f64,
    transform: PairTransform,
}

impl PairDensityMatrix {
    pub fn entries(&self) -> MatRef<'_, c64> {
        self.entries.as_ref()
    }

    pub fn kind(&self) -> StateKind {
        self.kind
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn transform(&self) -> PairTransform {
        self.transform
    }
}

struct Ops {
    c1: Mat<c64>,
    c2: Mat<c64>,
    d1: Mat<c64>,
    d2: Mat<c64>,
    n1: Mat<c64>,
    n2: Mat<c64>,
    one: Mat<c64>,
}

fn ops() -> Ops {
    let f = FockSpace::new(2);
    Ops {
        c1: f.annihilation(0),
        c2: f.annihilation(1),
        d1: f.creation(0),
        d2: f.creation(1),
        n1: f.number(0),
        n2: f.number(1),
        one: identity(4),
    }
}

fn re(x: f64) -> c64 {
    c64::new(x, 0.0)
}

fn check_filling(n: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&n) || n.is_nan() {
        return Err(OracleError::FillingOutOfRange(n));
    }
    Ok(())
}

/// The pair density matrix of either state family at filling `n` and phase `phi`.
pub fn pair_state(kind: StateKind, n: f64, phi: f64) -> Result<PairDensityMatrix> {
    check_filling(n)?;
    let o = ops();
    let s = (n * (1.0 - n)).sqrt();
    let e = c64::from_polar(s, phi);
    let h1 = &o.one - &o.n1;
    let h2 = &o.one - &o.n2;
    let entries = match kind {
        StateKind::Squeezed => {
            scale((&o.n1 * &o.n2).as_ref(), re(n))
                + scale((&h1 * &h2).as_ref(), re(1.0 - n))
                + scale((&o.d2 * &o.d1).as_ref(), e)
                + scale((&o.c1 * &o.c2).as_ref(), e.conj())
        }
        StateKind::Symmetric => {
            scale((&o.n2 * &h1).as_ref(), re(n))
                + scale((&h2 * &o.n1).as_ref(), re(1.0 - n))
                + scale((&o.d2 * &o.c1).as_ref(), e)
                + scale((&o.d1 * &o.c2).as_ref(), e.conj())
        }
    };
    Ok(PairDensityMatrix {
        entries,
        kind,
        n,
        phi,
        transform: PairTransform::Original,
    })
}

/// Partial transpose over the mode-1 tensor factor of the occupation basis.
pub fn transpose_mode1(rho: &PairDensityMatrix) -> PairDensityMatrix {
    let m = &rho.entries;
    let entries = Mat::from_fn(4, 4, |r, s| {
        let (a1, a2) = (r & 1, r >> 1);
        let (b1, b2) = (s & 1, s >> 1);
        m[(b1 | a2 << 1, a1 | b2 << 1)]
    });
    let transform = match rho.transform {
        PairTransform::Original => PairTransform::Transposed,
        PairTransform::Transposed => PairTransform::Original,
        PairTransform::TimeReversed => PairTransform::TimeReversed,
    };
    PairDensityMatrix {
        entries,
        transform,
        ..rho.clone()
    }
}

/// Partial time reversal of mode 1 by the Majorana-monomial rule.
pub fn time_reversal_mode1(rho: &PairDensityMatrix) -> PairDensityMatrix {
    let entries = time_reversal_monomial(rho.entries.as_ref(), 2, 1)
        .expect("two modes are within the literal expansion ceiling");
    PairDensityMatrix {
        entries,
        transform: PairTransform::TimeReversed,
        ..rho.clone()
    }
}

/// Number operator in the exponent of the transposed pair: `n1 + n2` for
/// squeezed pairs and the particle-hole replaced `n2 + 1 - n1` for symmetric ones.
pub fn exponent_number(kind: StateKind) -> Mat<c64> {
    let o = ops();
    match kind {
        StateKind::Squeezed => &o.n1 + &o.n2,
        StateKind::Symmetric => &o.n2 + &o.one - &o.n1,
    }
}

/// The generator `O` of the exponential form of a transposed pair
/// (`fermionic = false`, quartic) or of a time-reversed pair
/// (`fermionic = true`, quadratic).
///
/// Operators are written with `b_k` = mode 2 and its partner = mode 1. Placing
/// mode 1 first in the Jordan-Wigner order flips the sign of every bilinear
/// linking the two modes, which is absorbed as the phase `phi + pi`.
pub fn generator(kind: StateKind, fermionic: bool, phi: f64) -> Mat<c64> {
    let o = ops();
    let e = c64::from_polar(1.0, phi + PI);
    let h1 = &o.one - &o.n1;
    let h2 = &o.one - &o.n2;
    let (diag, bilinear) = match kind {
        StateKind::Squeezed => (
            &o.n2 * &h1 + &o.n1 * &h2,
            scale((&o.d2 * &o.c1).as_ref(), e) + scale((&o.d1 * &o.c2).as_ref(), e.conj()),
        ),
        StateKind::Symmetric => (
            &o.n2 * &o.n1 + &h2 * &h1,
            scale((&o.d2 * &o.d1).as_ref(), e) + scale((&o.c1 * &o.c2).as_ref(), e.conj()),
        ),
    };
    if fermionic {
        bilinear
    } else {
        diag - bilinear
    }
}

/// `gamma_0 = c_1 + c_1^dagger`, exchanging particles and holes on mode 1.
pub fn particle_hole_mode1() -> Mat<c64> {
    FockSpace::new(2).majorana(0)
}

/// Deviations of a transformed pair from its exponential form and the
/// algebraic properties of the generator.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialFormReport {
    pub transform: PairTransform,
    /// `|rho - (1 + e^{-eta})^{-1} exp(-eta/2 N + i pi/2 O)|_max`.
    pub reconstruction: f64,
    /// `|rho rho^dagger - (1 + e^{-eta})^{-2} exp(-eta N)|_max`.
    pub doubled: f64,
    pub generator_spectrum: Vec<f64>,
    /// Distance of the generator spectrum from `{0, +-2}` (transpose) or `{0, +-1}`.
    pub spectrum_defect: f64,
    /// `|O^2 - 2 O|` for the transpose, `|O^3 - O|` for time reversal.
    pub polynomial_identity: f64,
    pub number_commutator: f64,
    /// Highest Majorana degree present in the generator.
    pub degree: usize,
    /// `|V O_squeezed(phi) V - O_symmetric(phi + pi)|` with `V` the mode-1
    /// particle-hole exchange.
    pub particle_hole: f64,
}

impl ExponentialFormReport {
    pub fn max_deviation(&self) -> f64 {
        [
            self.reconstruction,
            self.doubled,
            self.spectrum_defect,
            self.polynomial_identity,
            self.number_commutator,
            self.particle_hole,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn expected_degree(&self) -> usize {
        if self.transform == PairTransform::TimeReversed {
            2
        } else {
            4
        }
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.max_deviation() <= tol && self.degree == self.expected_degree()
    }
}

/// Rebuilds a transposed or time-reversed pair from its exponential ansatz.
pub fn verify_exponential_forms(rho: &PairDensityMatrix) -> Result<ExponentialFormReport> {
    let fermionic = match rho.transform {
        PairTransform::Transposed => false,
        PairTransform::TimeReversed => true,
        PairTransform::Original => return Err(OracleError::Untransformed),
    };
    let n = rho.n;
    if n <= 0.0 || n >= 1.0 {
        return Err(OracleError::FillingOutOfRange(n));
    }
    let eta = ((1.0 - n) / n).ln();
    let norm = 1.0 / (1.0 + (-eta).exp());
    let number = exponent_number(rho.kind);
    let gen = generator(rho.kind, fermionic, rho.phi);

    let exponent = scale(number.as_ref(), re(-eta / 2.0)) + scale(gen.as_ref(), c64::new(0.0, PI / 2.0));
    let form = scale(expm(exponent.as_ref()).as_ref(), re(norm));
    let reconstruction = max_abs_diff(rho.entries.as_ref(), form.as_ref());

    let product = &rho.entries * adjoint(rho.entries.as_ref());
    let doubled_form = scale(
        expm(scale(number.as_ref(), re(-eta)).as_ref()).as_ref(),
        re(norm * norm),
    );
    let doubled = max_abs_diff(product.as_ref(), doubled_form.as_ref());

    let (generator_spectrum, _) = hermitian_eigen(gen.as_ref(), "pair generator")?;
    let allowed: &[f64] = if fermionic { &[0.0, 1.0, -1.0] } else { &[0.0, 2.0, -2.0] };
    let spectrum_defect = generator_spectrum
        .iter()
        .map(|x| allowed.iter().map(|a| (x - a).abs()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);

    let polynomial_identity = if fermionic {
        max_abs_diff(power(gen.as_ref(), 3).as_ref(), gen.as_ref())
    } else {
        max_abs_diff((&gen * &gen).as_ref(), scale(gen.as_ref(), re(2.0)).as_ref())
    };
    let number_commutator = max_abs(commutator(gen.as_ref(), number.as_ref()).as_ref());
    let degree = max_monomial_degree(gen.as_ref(), 2, 1e-13)?;

    let v = particle_hole_mode1();
    let mapped = &v * generator(StateKind::Squeezed, fermionic, rho.phi) * &v;
    let particle_hole = max_abs_diff(
        mapped.as_ref(),
        generator(StateKind::Symmetric, fermionic, rho.phi + PI).as_ref(),
    );

    Ok(ExponentialFormReport {
        transform: rho.transform,
        reconstruction,
        doubled,
        generator_spectrum,
        spectrum_defect,
        polynomial_identity,
        number_commutator,
        degree,
        particle_hole,
    })
}

/// Imbalance `Q = n2 - n1` of the pair.
fn imbalance() -> Mat<c64> {
    let o = ops();
    &o.n2 - &o.n1
}

fn charge_insertion(lambda: f64) -> Mat<c64> {
    let q = imbalance();
    Mat::from_fn(4, 4, |r, s| {
        if r == s {
            c64::from_polar(1.0, lambda * q[(r, r)].re)
        } else {
            re(0.0)
        }
    })
}

/// Brute-force moments of an untransformed pair with an optional imbalance
/// insertion `e^{i lambda (n2 - n1)}`.
///
/// For time reversal, even `alpha` gives `Tr[(rho^R rho^R+)^{alpha/2}]` and odd
/// `alpha` gives `Tr[(rho^R rho^R+)^{(alpha-1)/2} rho^R]`.
pub fn pair_traces(
    rho: &PairDensityMatrix,
    variant: TraceVariant,
    alpha: u32,
    lambda: Option<f64>,
) -> Result<c64> {
    if alpha == 0 {
        return Err(OracleError::InvalidAlpha);
    }
    if rho.transform != PairTransform::Original {
        return Err(OracleError::Untransformed);
    }
    let charge = charge_insertion(lambda.unwrap_or(0.0));
    let body = match variant {
        TraceVariant::Transpose => power(transpose_mode1(rho).entries.as_ref(), alpha),
        TraceVariant::TimeReversal => {
            let r = time_reversal_mode1(rho).entries;
            let rr = &r * adjoint(r.as_ref());
            let half = power(rr.as_ref(), alpha / 2);
            if alpha % 2 == 0 {
                half
            } else {
                half * &r
            }
        }
    };
    Ok(trace((charge * body).as_ref()))
}

/// Closed form of the charged pair moments:
/// `e^{i lambda} n^a + e^{-i lambda} (1-n)^a + (1 + (-1)^a) (n(1-n))^{a/2}` for
/// symmetric pairs and `n^a + (1-n)^a + (1 + (-1)^a) (n(1-n))^{a/2} cos lambda`
/// for squeezed pairs. At `lambda = 0` both reduce to `n^a + (1-n)^a` (odd) and
/// `(n^{a/2} + (1-n)^{a/2})^2` (even).
pub fn closed_form_trace(kind: StateKind, n: f64, alpha: u32, lambda: f64) -> c64 {
    let a = alpha as f64;
    let coherent = if alpha % 2 == 0 {
        2.0 * (n * (1.0 - n)).powf(a / 2.0)
    } else {
        0.0
    };
    match kind {
        StateKind::Symmetric => {
            c64::from_polar(n.powf(a), lambda)
                + c64::from_polar((1.0 - n).powf(a), -lambda)
                + re(coherent)
        }
        StateKind::Squeezed => re(n.powf(a) + (1.0 - n).powf(a) + coherent * lambda.cos()),
    }
}

/// Checks of the diagonal/off-diagonal split `rho^T1 = A + B`: mutual
/// annihilation, additivity of traces of powers up to `max_power`, and the
/// closed forms of `A^p` and `B^p`. Returns the largest deviation.
pub fn ab_split_defect(rho: &PairDensityMatrix, max_power: u32) -> f64 {
    let t = transpose_mode1(rho).entries;
    let a = Mat::from_fn(4, 4, |r, s| if r == s { t[(r, s)] } else { re(0.0) });
    let b = &t - &a;
    let o = ops();
    let h1 = &o.one - &o.n1;
    let h2 = &o.one - &o.n2;
    let (p_n, p_rest, b_sector) = match rho.kind {
        StateKind::Squeezed => (&o.n1 * &o.n2, &h1 * &h2, &o.n1 * &h2 + &o.n2 * &h1),
        StateKind::Symmetric => (&o.n2 * &h1, &o.n1 * &h2, &o.n1 * &o.n2 + &h1 * &h2),
    };
    let n = rho.n;
    let s = (n * (1.0 - n)).sqrt();
    let mut worst = max_abs((&a * &b).as_ref()).max(max_abs((&b * &a).as_ref()));
    for p in 1..=max_power {
        let ap = power(a.as_ref(), p);
        let bp = power(b.as_ref(), p);
        let sum = trace(power(t.as_ref(), p).as_ref());
        worst = worst.max((sum - trace(ap.as_ref()) - trace(bp.as_ref())).norm());
        let want_a = scale(p_n.as_ref(), re(n.powi(p as i32)))
            + scale(p_rest.as_ref(), re((1.0 - n).powi(p as i32)));
        worst = worst.max(max_abs_diff(ap.as_ref(), want_a.as_ref()));
        let want_b = if p % 2 == 1 {
            scale(b.as_ref(), re(s.powi(p as i32 - 1)))
        } else {
            scale(b_sector.as_ref(), re(s.powi(p as i32)))
        };
        worst = worst.max(max_abs_diff(bp.as_ref(), want_b.as_ref()));
    }
    worst
}

/// `|rho^T1 - (1-i)/2 rho^R1 - (1+i)/2 (rho^R1)^dagger|_max` for an untransformed pair.
pub fn combination_defect(rho: &PairDensityMatrix) -> f64 {
    let t = transpose_mode1(rho).entries;
    let r = time_reversal_mode1(rho).entries;
    let comb = scale(r.as_ref(), c64::new(0.5, -0.5))
        + scale(adjoint(r.as_ref()).as_ref(), c64::new(0.5, 0.5));
    max_abs_diff(t.as_ref(), comb.as_ref())
}

/// `|rho^R1 - (A + i B)|_max` with `A`, `B` the diagonal and off-diagonal parts of `rho^T1`.
pub fn reversal_closed_form_defect(rho: &PairDensityMatrix) -> f64 {
    let t = transpose_mode1(rho).entries;
    let r = time_reversal_mode1(rho).entries;
    let want = Mat::from_fn(4, 4, |i, j| if i == j { t[(i, j)] } else { t[(i, j)] * c64::new(0.0, 1.0) });
    max_abs_diff(r.as_ref(), want.as_ref())
}

/// Distance of the spectrum of `rho^R1` from `{n, 1 - n, +- i sqrt(n(1-n))}`.
pub fn reversed_spectrum_defect(rho: &PairDensityMatrix) -> Result<f64> {
    let r = time_reversal_mode1(rho).entries;
    let n = rho.n;
    let s = (n * (1.0 - n)).sqrt();
    let mut want = vec![re(n), re(1.0 - n), c64::new(0.0, s), c64::new(0.0, -s)];
    let mut worst: f64 = 0.0;
    for z in eigenvalues(r.as_ref(), "time-reversed pair")? {
        let (idx, dist) = want
            .iter()
            .enumerate()
            .map(|(i, w)| (i, (z - w).norm()))
            .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
        want.swap_remove(idx);
        worst = worst.max(dist);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_pair_is_a_pure_product_state() {
        for kind in [StateKind::Squeezed, StateKind::Symmetric] {
            let rho = pair_state(kind, 0.0, 0.4).unwrap();
            let (vals, _) = hermitian_eigen(rho.entries(), "test").unwrap();
            let rank = vals.iter().filter(|v| v.abs() > 1e-14).count();
            assert_eq!(rank, 1);
        }
    }

    #[test]
    fn half_filled_squeezed_pair_is_pure() {
        let rho = pair_state(StateKind::Squeezed, 0.5, 1.1).unwrap();
        let (vals, _) = hermitian_eigen(rho.entries(), "test").unwrap();
        let want = [0.0, 0.0, 0.0, 1.0];
        for (v, w) in vals.iter().zip(want) {
            assert!((v - w).abs() < 1e-14);
        }
    }

    #[test]
    fn transposed_squeezed_pair_has_negative_eigenvalue() {
        let n: f64 = 0.3;
        let rho = pair_state(StateKind::Squeezed, n, 0.7).unwrap();
        let (vals, _) = hermitian_eigen(transpose_mode1(&rho).entries(), "test").unwrap();
        let s = (n * (1.0 - n)).sqrt();
        let mut want = vec![-s, n, s, 1.0 - n];
        want.sort_by(f64::total_cmp);
        for (v, w) in vals.iter().zip(want) {
            assert!((v - w).abs() < 1e-14);
        }
    }

    #[test]
    fn transpose_is_an_involution() {
        let rho = pair_state(StateKind::Symmetric, 0.2, 2.0).unwrap();
        let back = transpose_mode1(&transpose_mode1(&rho));
        assert!(max_abs_diff(back.entries(), rho.entries()) < 1e-16);
        assert_eq!(back.transform(), PairTransform::Original);
    }

    #[test]
    fn transposed_symmetric_pair_conserves_imbalance() {
        let rho = pair_state(StateKind::Symmetric, 0.35, 0.9).unwrap();
        let t = transpose_mode1(&rho);
        let c = commutator(t.entries(), imbalance().as_ref());
        assert!(max_abs(c.as_ref()) < 1e-15);
    }

    #[test]
    fn generator_spectrum_is_zero_and_two() {
        let rho = transpose_mode1(&pair_state(StateKind::Squeezed, 0.3, 0.7).unwrap());
        let report = verify_exponential_forms(&rho).unwrap();
        let want = [0.0, 0.0, 0.0, 2.0];
        for (v, w) in report.generator_spectrum.iter().zip(want) {
            assert!((v - w).abs() < 1e-14);
        }
    }

    #[test]
    fn untransformed_input_rejected() {
        let rho = pair_state(StateKind::Squeezed, 0.3, 0.7).unwrap();
        assert_eq!(verify_exponential_forms(&rho), Err(OracleError::Untransformed));
    }

    #[test]
    fn filling_checked() {
        assert!(pair_state(StateKind::Squeezed, 1.2, 0.0).is_err());
    }
}
