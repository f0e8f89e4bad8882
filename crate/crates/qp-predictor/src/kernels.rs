use negham_core::StateKind;

use crate::counting::{chi_m, chi_p};
use crate::{check_time, Complex64, QpError, QpSetup, Result};

/// One kernel value at continuum position `x` and hopping distance `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSample {
    pub x: f64,
    pub z: i64,
    pub value: Complex64,
}

fn eta(setup: &QpSetup, k: f64) -> f64 {
    negham_core::eta_clipped(setup.occupation.n(k), setup.clip)
}

fn check_inside(x: f64, setup: &QpSetup) -> Result<()> {
    if setup.geometry.in_a(x) {
        Ok(())
    } else {
        Err(QpError::OutsideSubsystem { x })
    }
}

/// Kernel of the entanglement Hamiltonian, `integral dk/2pi chi_m eta e^{ikz}`.
pub fn kernel_mixed(x: f64, z: i64, t: f64, setup: &QpSetup) -> Result<Complex64> {
    check_time(t)?;
    check_inside(x, setup)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in setup.grid.nodes() {
        if chi_m(x, k, t, &setup.geometry, &setup.dispersion) {
            acc += eta(setup, k) * Complex64::from_polar(1.0, k * z as f64);
        }
    }
    Ok(acc * setup.grid.weight())
}

/// `K+` on `A2`: right-movers whose partner sits in `A1`.
pub fn kernel_plus(x: f64, z: i64, t: f64, setup: &QpSetup) -> Result<Complex64> {
    check_time(t)?;
    if !setup.geometry.in_a2(x) {
        return Err(QpError::OutsideSubsystem { x });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for k in setup.grid.nodes().filter(|&k| k > 0.0) {
        if chi_p(x, k, t, &setup.geometry, &setup.dispersion) {
            acc += eta(setup, k) * Complex64::from_polar(1.0, k * z as f64);
        }
    }
    Ok(acc * (0.5 * setup.grid.weight()))
}

/// `K-` on `A1`: left-movers whose partner sits in `A2`. Symmetric states carry
/// the extra `(-1)^z` of the particle-hole flipped momentum.
pub fn kernel_minus(x: f64, z: i64, t: f64, setup: &QpSetup) -> Result<Complex64> {
    check_time(t)?;
    if !setup.geometry.in_a1(x) {
        return Err(QpError::OutsideSubsystem { x });
    }
    let (sign, parity) = match setup.occupation.kind() {
        StateKind::Squeezed => (-1.0, 1.0),
        StateKind::Symmetric => (1.0, if z % 2 == 0 { 1.0 } else { -1.0 }),
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for k in setup.grid.nodes().filter(|&k| k > 0.0) {
        let partner = x + 2.0 * setup.speed_time(k, t);
        if chi_p(partner, k, t, &setup.geometry, &setup.dispersion) {
            acc += eta(setup, k) * Complex64::from_polar(1.0, sign * k * z as f64);
        }
    }
    Ok(acc * (0.5 * parity * setup.grid.weight()))
}

/// `(K+, K-)` at `x`; the kernel whose interval does not contain `x` is zero.
pub fn kernel_plus_minus(x: f64, z: i64, t: f64, setup: &QpSetup) -> Result<(Complex64, Complex64)> {
    check_inside(x, setup)?;
    let zero = Complex64::new(0.0, 0.0);
    if setup.geometry.in_a2(x) {
        Ok((kernel_plus(x, z, t, setup)?, zero))
    } else {
        Ok((zero, kernel_minus(x, z, t, setup)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use negham_core::TripartiteGeometry;

    fn dimer(l: usize, d: usize) -> QpSetup {
        QpSetup::dimer(TripartiteGeometry::symmetric(l, d).unwrap()).unwrap()
    }

    #[test]
    fn mixed_kernel_vanishes_at_t0() {
        let s = dimer(20, 10);
        for x in [-24.5, -5.5, 5.5, 24.5] {
            for z in -3..4 {
                assert_eq!(kernel_mixed(x, z, 0.0, &s).unwrap(), Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn mixed_kernel_reaches_gge() {
        let s = dimer(20, 10);
        let gge = s.grid.integrate(|k| eta(&s, k));
        let got = kernel_mixed(-10.5, 0, 1e6, &s).unwrap();
        assert!((got.re - gge).abs() < 1e-12 && got.im.abs() < 1e-12);
    }

    #[test]
    fn pure_kernels_respect_light_cone() {
        let s = dimer(30, 20);
        for t in [0.0, 4.0, 9.9] {
            assert_eq!(kernel_plus(12.5, 1, t, &s).unwrap(), Complex64::new(0.0, 0.0));
            assert_eq!(kernel_minus(-12.5, 1, t, &s).unwrap(), Complex64::new(0.0, 0.0));
        }
        assert_eq!(kernel_plus(12.5, 1, 1e6, &s).unwrap(), Complex64::new(0.0, 0.0));
        assert!(kernel_plus(12.5, 1, 20.0, &s).unwrap().norm() > 0.0);
    }

    #[test]
    fn outside_positions_rejected() {
        let s = dimer(10, 10);
        assert!(kernel_mixed(0.0, 0, 1.0, &s).is_err());
        assert!(kernel_plus(-7.5, 0, 1.0, &s).is_err());
        assert!(kernel_minus(7.5, 0, 1.0, &s).is_err());
        let (p, m) = kernel_plus_minus(-7.5, 1, 12.0, &s).unwrap();
        assert_eq!(p, Complex64::new(0.0, 0.0));
        assert_eq!(m, kernel_minus(-7.5, 1, 12.0, &s).unwrap());
    }
}
