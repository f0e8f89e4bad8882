use negham_core::StateKind;

use crate::counting::{mixed_weight_from_speed, pure_weight_bracket};
use crate::{check_time, Complex64, QpError, QpSetup, Result};

/// Logarithm of the imbalance-resolved moment `Tr[e^{i lambda Q} (rho^T1)^alpha]`
/// with `Q = N_A2 - N_A1`, for symmetric states.
///
/// A mixed pair contributes the dressed entropy factor of its single member in
/// `A1` or `A2`. A shared pair contributes the trace of its transposed 4x4
/// block: the two singly-occupied states carry charge `-1` and `+1`, while the
/// empty/doubly-occupied coherence is neutral and only survives for even powers.
pub fn charged_moment_qp(alpha: u32, lambda: f64, t: f64, setup: &QpSetup) -> Result<Complex64> {
    check_time(t)?;
    if setup.occupation.kind() != StateKind::Symmetric {
        return Err(QpError::UnsupportedState(setup.occupation.kind()));
    }
    negham_core::s_tilde(alpha, 0.5)?;
    let (l, d) = (setup.l(), setup.d());
    let a = alpha as i32;
    let up = Complex64::from_polar(1.0, lambda);
    let down = up.conj();
    let neutral = if alpha % 2 == 0 { 2.0 } else { 0.0 };
    let total = setup.integrate(t, |k| {
        let vt = setup.speed_time(k, t);
        let w_m = mixed_weight_from_speed(vt, l, d);
        let half_p = 0.5 * pure_weight_bracket(vt, l, d);
        let mut acc = Complex64::new(0.0, 0.0);
        if w_m == 0.0 && half_p == 0.0 {
            return acc;
        }
        let n = setup.filling(k);
        let (na, ma) = (n.powi(a), (1.0 - n).powi(a));
        if w_m != 0.0 {
            acc += 0.5 * w_m * ((down * na + ma).ln() + (up * na + ma).ln());
        }
        if half_p != 0.0 {
            let coherence = neutral * (n * (1.0 - n)).powf(alpha as f64 / 2.0);
            acc += half_p * (down * na + up * ma + coherence).ln();
        }
        acc
    });
    if !(total.re.is_finite() && total.im.is_finite()) {
        return Err(QpError::NonFinite {
            quantity: "charged moment",
            t,
            points: setup.grid.points(),
        });
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::renyi_negativity_qp;
    use negham_core::{OccupationFunction, TripartiteGeometry};
    use std::f64::consts::PI;

    fn dimer() -> QpSetup {
        QpSetup::dimer(TripartiteGeometry::symmetric(30, 20).unwrap()).unwrap()
    }

    #[test]
    fn zero_lambda_matches_renyi_negativity() {
        let s = dimer();
        for a in 2..6u32 {
            for t in [0.0, 5.0, 15.0, 25.0, 60.0] {
                let c = charged_moment_qp(a, 0.0, t, &s).unwrap();
                let e = renyi_negativity_qp(a, t, &s).unwrap();
                assert!(c.im.abs() < 1e-12);
                assert!((c.re - e).abs() < 1e-10, "a={a} t={t}: {c} vs {e}");
            }
        }
    }

    #[test]
    fn conjugation_and_periodicity() {
        let s = dimer();
        for lam in [0.3, 1.1, 2.9] {
            let p = charged_moment_qp(3, lam, 20.0, &s).unwrap();
            let m = charged_moment_qp(3, -lam, 20.0, &s).unwrap();
            let w = charged_moment_qp(3, lam + 2.0 * PI, 20.0, &s).unwrap();
            assert!((p - m.conj()).norm() < 1e-12);
            assert!((p.exp() - w.exp()).norm() < 1e-12 * p.exp().norm());
        }
    }

    #[test]
    fn squeezed_is_unsupported() {
        let occ = OccupationFunction::constant(StateKind::Squeezed, 0.3).unwrap();
        let s = QpSetup::new(occ, TripartiteGeometry::symmetric(3, 3).unwrap()).unwrap();
        assert_eq!(
            charged_moment_qp(2, 0.1, 1.0, &s),
            Err(QpError::UnsupportedState(StateKind::Squeezed))
        );
    }
}
