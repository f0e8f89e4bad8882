use negham_core::{renyi_density, s_tilde};

use crate::counting::{mixed_weight_from_speed, pure_weight_bracket};
use crate::{check_time, finite, QpSetup, Result};

/// Renyi entropy of `A1 u A2`; `alpha = 1` is the von Neumann entropy.
pub fn renyi_entropy_qp(alpha: u32, t: f64, setup: &QpSetup) -> Result<f64> {
    check_time(t)?;
    renyi_density(alpha, 0.5)?;
    let (l, d) = (setup.l(), setup.d());
    let value = setup.integrate(t, |k| {
        let w_m = mixed_weight_from_speed(setup.speed_time(k, t), l, d);
        if w_m == 0.0 {
            return 0.0;
        }
        w_m * renyi_density(alpha, setup.filling(k)).unwrap_or(f64::NAN)
    });
    finite(value, "renyi entropy", t, setup)
}

/// Pure-pair contribution alone, i.e. the logarithm of the Renyi ratio.
pub fn log_ratio_qp(alpha: u32, t: f64, setup: &QpSetup) -> Result<f64> {
    check_time(t)?;
    s_tilde(alpha, 0.5)?;
    let (l, d) = (setup.l(), setup.d());
    let value = setup.integrate(t, |k| {
        let half = 0.5 * pure_weight_bracket(setup.speed_time(k, t), l, d);
        if half == 0.0 {
            return 0.0;
        }
        half * s_tilde(alpha, setup.filling(k)).unwrap_or(f64::NAN)
    });
    finite(value, "log ratio", t, setup)
}

/// Fermionic Renyi negativity; `alpha = 1` gives the logarithmic negativity.
pub fn renyi_negativity_qp(alpha: u32, t: f64, setup: &QpSetup) -> Result<f64> {
    let ratio = log_ratio_qp(alpha, t, setup)?;
    if alpha == 1 {
        return Ok(ratio);
    }
    let entropy = renyi_entropy_qp(alpha, t, setup)?;
    Ok(ratio + (1.0 - alpha as f64) * entropy)
}

pub fn log_negativity_qp(t: f64, setup: &QpSetup) -> Result<f64> {
    renyi_negativity_qp(1, t, setup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use negham_core::{OccupationFunction, StateKind, TripartiteGeometry};

    fn dimer(l: usize, d: usize) -> QpSetup {
        QpSetup::dimer(TripartiteGeometry::symmetric(l, d).unwrap()).unwrap()
    }

    #[test]
    fn everything_vanishes_at_t0() {
        let s = dimer(20, 10);
        for a in 1..5 {
            assert_eq!(renyi_entropy_qp(a, 0.0, &s).unwrap(), 0.0);
            assert_eq!(renyi_negativity_qp(a, 0.0, &s).unwrap(), 0.0);
        }
    }

    #[test]
    fn second_ratio_is_zero() {
        let s = dimer(50, 40);
        for t in [0.0, 10.0, 30.0, 45.0, 80.0, 500.0] {
            assert!(log_ratio_qp(2, t, &s).unwrap().abs() < 1e-14);
            let e2 = renyi_negativity_qp(2, t, &s).unwrap();
            let s2 = renyi_entropy_qp(2, t, &s).unwrap();
            assert!((e2 + s2).abs() < 1e-12);
        }
    }

    #[test]
    fn half_filling_saturates_to_maximal_entropy() {
        let occ = OccupationFunction::constant(StateKind::Squeezed, 0.5).unwrap();
        let s = QpSetup::new(occ, TripartiteGeometry::symmetric(30, 10).unwrap()).unwrap();
        let got = renyi_entropy_qp(1, 1e13, &s).unwrap();
        let want = 60.0 * 2f64.ln();
        assert!((got - want).abs() < 1e-9 * want, "{got} vs {want}");
    }

    #[test]
    fn ratio_zero_before_light_cone() {
        let s = dimer(40, 30);
        for t in [1.0, 7.0, 14.9] {
            assert_eq!(log_ratio_qp(3, t, &s).unwrap(), 0.0);
        }
        assert!(log_ratio_qp(3, 30.0, &s).unwrap() < 0.0);
    }

    #[test]
    fn long_time_negativity_is_entropy_term() {
        let s = dimer(20, 20);
        let t = 1e6;
        for a in [2u32, 3, 4] {
            let e = renyi_negativity_qp(a, t, &s).unwrap();
            let sa = renyi_entropy_qp(a, t, &s).unwrap();
            assert!((e - (1.0 - a as f64) * sa).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_zero_alpha_and_negative_time() {
        let s = dimer(5, 5);
        assert!(renyi_entropy_qp(0, 1.0, &s).is_err());
        assert!(log_ratio_qp(0, 1.0, &s).is_err());
        assert!(renyi_entropy_qp(2, -1.0, &s).is_err());
    }
}
