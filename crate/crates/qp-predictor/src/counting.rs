use negham_core::{Dispersion, TripartiteGeometry};

use crate::{QpError, QpSetup, Result};

/// Pure-pair weight as the overlap of `A2` with `A1` shifted by `2|v|t`.
pub fn pure_weight_intersection(vt: f64, l: f64, d: f64) -> f64 {
    let hi = (d / 2.0 + l).min(-d / 2.0 + 2.0 * vt);
    let lo = (d / 2.0).max(-l - d / 2.0 + 2.0 * vt);
    (hi - lo).max(0.0)
}

/// Same weight written through the min/max bracket.
pub fn pure_weight_bracket(vt: f64, l: f64, d: f64) -> f64 {
    2.0 * (vt.max(d / 2.0) - 2.0 * vt.max((l + d) / 2.0) + vt.max(l + d / 2.0))
}

/// Mixed-pair weight: pairs with exactly one member inside `A1 u A2`.
pub fn mixed_weight_from_speed(vt: f64, l: f64, d: f64) -> f64 {
    let s = 2.0 * vt;
    2.0 * (s + l - s.max(l)) - pure_weight_bracket(vt, l, d)
}

fn equal_lengths(geometry: &TripartiteGeometry) -> Result<(f64, f64)> {
    if !geometry.is_symmetric() {
        return Err(QpError::UnequalIntervals {
            l1: geometry.l1(),
            l2: geometry.l2(),
        });
    }
    Ok((geometry.l1() as f64, geometry.d() as f64))
}

pub fn pure_weight(
    k: f64,
    t: f64,
    geometry: &TripartiteGeometry,
    dispersion: &Dispersion,
) -> Result<f64> {
    crate::check_time(t)?;
    let (l, d) = equal_lengths(geometry)?;
    Ok(pure_weight_intersection(dispersion.velocity(k).abs() * t, l, d))
}

pub fn mixed_weight(
    k: f64,
    t: f64,
    geometry: &TripartiteGeometry,
    dispersion: &Dispersion,
) -> Result<f64> {
    crate::check_time(t)?;
    let (l, d) = equal_lengths(geometry)?;
    Ok(mixed_weight_from_speed(dispersion.velocity(k).abs() * t, l, d))
}

/// Pure-pair indicator: `x` is a right-mover in `A2` whose partner, `2|v|t` to
/// the left, lies in `A1`.
pub fn chi_p(x: f64, k: f64, t: f64, geometry: &TripartiteGeometry, dispersion: &Dispersion) -> bool {
    let s = 2.0 * dispersion.velocity(k).abs() * t;
    geometry.in_a2(x) && geometry.in_a1(x - s)
}

/// Mixed-pair indicator: the mode at `(x, k)` sits in `A` and its partner,
/// displaced by `-2 v_k t`, lies outside `A`.
pub fn chi_m(x: f64, k: f64, t: f64, geometry: &TripartiteGeometry, dispersion: &Dispersion) -> bool {
    let s = 2.0 * dispersion.velocity(k) * t;
    geometry.in_a(x) && !geometry.in_a(x - s)
}

/// Counting weights of one momentum mode at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountingWeights {
    pub w_p: f64,
    pub w_m: f64,
    pub w_m1: f64,
    pub w_m2: f64,
}

impl CountingWeights {
    pub fn at(k: f64, t: f64, setup: &QpSetup) -> Result<Self> {
        let w_p = pure_weight(k, t, &setup.geometry, &setup.dispersion)?;
        let w_m = mixed_weight(k, t, &setup.geometry, &setup.dispersion)?;
        Ok(Self {
            w_p,
            w_m,
            w_m1: w_m / 2.0,
            w_m2: w_m / 2.0,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pure_weight_examples() {
        assert_eq!(pure_weight_intersection(0.0, 10.0, 4.0), 0.0);
        assert_eq!(pure_weight_intersection(7.0, 10.0, 4.0), 10.0);
        assert_eq!(pure_weight_intersection(12.0, 10.0, 4.0), 0.0);
        assert_eq!(pure_weight_intersection(50.0, 10.0, 4.0), 0.0);
    }

    #[test]
    fn mixed_weight_examples() {
        assert_eq!(mixed_weight_from_speed(1.0, 10.0, 4.0), 4.0);
        assert_eq!(mixed_weight_from_speed(0.0, 10.0, 4.0), 0.0);
        assert_eq!(mixed_weight_from_speed(1e6, 10.0, 4.0), 20.0);
    }

    #[test]
    fn unequal_intervals_rejected() {
        let g = TripartiteGeometry::new(3, 4, 2).unwrap();
        let err = pure_weight(1.0, 1.0, &g, &Dispersion::hopping());
        assert_eq!(err, Err(QpError::UnequalIntervals { l1: 3, l2: 4 }));
    }

    proptest! {
        #[test]
        fn weights_nonnegative(vt in 0.0f64..500.0, l in 1u32..200, d in 1u32..200) {
            let (l, d) = (l as f64, d as f64);
            prop_assert!(pure_weight_intersection(vt, l, d) >= 0.0);
            prop_assert!(mixed_weight_from_speed(vt, l, d) >= -1e-12);
        }

        #[test]
        fn pure_weight_window(vt in 0.0f64..500.0, l in 1u32..200, d in 1u32..200) {
            let (l, d) = (l as f64, d as f64);
            if vt <= d / 2.0 || vt >= l + d / 2.0 {
                prop_assert_eq!(pure_weight_intersection(vt, l, d), 0.0);
            }
        }
    }
}
