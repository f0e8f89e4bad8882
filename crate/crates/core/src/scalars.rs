use crate::{CoreError, Result};

/// Default distance from 0 and 1 at which fillings are clipped before taking logs.
pub const DEFAULT_FILLING_CLIP: f64 = 1e-12;

/// Occupation of the dimer product state after the quench, `(1 + cos k) / 2`.
pub fn dimer_occupation(k: f64) -> f64 {
    0.5 * (1.0 + k.cos())
}

pub fn clip_filling(n: f64, eps: f64) -> f64 {
    n.clamp(eps, 1.0 - eps)
}

/// `log((1 - n) / n)`; errors outside the open unit interval.
pub fn eta(n: f64) -> Result<f64> {
    if !(n > 0.0 && n < 1.0) {
        return Err(CoreError::FillingOutOfDomain(n));
    }
    Ok(((1.0 - n) / n).ln())
}

pub fn eta_clipped(n: f64, eps: f64) -> f64 {
    let n = clip_filling(n, eps);
    ((1.0 - n) / n).ln()
}

/// Per-mode weight of a shared pair in the Renyi negativity.
///
/// Odd `alpha` gives `log(n^a + (1-n)^a)`, even `alpha` gives
/// `2 log(n^(a/2) + (1-n)^(a/2))`, and `alpha = 1` is the replica limit of the
/// even branch, `2 log(sqrt(n) + sqrt(1-n))`.
pub fn s_tilde(alpha: u32, n: f64) -> Result<f64> {
    match alpha {
        0 => Err(CoreError::InvalidAlpha(alpha)),
        1 => Ok(2.0 * (n.sqrt() + (1.0 - n).sqrt()).ln()),
        a if a % 2 == 0 => {
            let h = (a / 2) as i32;
            Ok(2.0 * (n.powi(h) + (1.0 - n).powi(h)).ln())
        }
        a => Ok((n.powi(a as i32) + (1.0 - n).powi(a as i32)).ln()),
    }
}

/// Binary entropy `-n log n - (1-n) log(1-n)` with `0 log 0 = 0`.
pub fn binary_entropy(n: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.ln() } else { 0.0 };
    term(n) + term(1.0 - n)
}

/// Renyi entropy density of a single mode with filling `n`; `alpha = 1` is the
/// von Neumann limit.
pub fn renyi_density(alpha: u32, n: f64) -> Result<f64> {
    match alpha {
        0 => Err(CoreError::InvalidAlpha(alpha)),
        1 => Ok(binary_entropy(n)),
        a => {
            let a_i = a as i32;
            Ok((n.powi(a_i) + (1.0 - n).powi(a_i)).ln() / (1.0 - a as f64))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn eta_rejects_boundary() {
        assert!(eta(0.0).is_err());
        assert!(eta(1.0).is_err());
        assert!(eta(f64::NAN).is_err());
        assert_eq!(eta(0.5).unwrap(), 0.0);
    }

    #[test]
    fn s_tilde_rejects_zero_alpha() {
        assert_eq!(s_tilde(0, 0.3), Err(CoreError::InvalidAlpha(0)));
    }

    #[test]
    fn s_tilde_known_values() {
        // Half filling: n^a + (1-n)^a = 2^(1-a).
        for a in [3u32, 5, 7] {
            let want = (1.0 - a as f64) * 2f64.ln();
            assert!((s_tilde(a, 0.5).unwrap() - want).abs() < 1e-14);
        }
        for a in [2u32, 4, 6] {
            let want = 2.0 * (1.0 - a as f64 / 2.0) * 2f64.ln();
            assert!((s_tilde(a, 0.5).unwrap() - want).abs() < 1e-14);
        }
        assert!((s_tilde(1, 0.5).unwrap() - 2f64.ln()).abs() < 1e-14);
        assert!(s_tilde(1, 0.0).unwrap().abs() < 1e-15);
        assert!(s_tilde(2, 1.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn renyi_density_converges_to_von_neumann() {
        let n: f64 = 0.3;
        let a = 1.0 + 1e-6;
        let near = (n.powf(a) + (1.0 - n).powf(a)).ln() / (1.0 - a);
        assert!((near - renyi_density(1, n).unwrap()).abs() < 1e-5);
    }

    #[test]
    fn dimer_occupation_endpoints() {
        assert_eq!(dimer_occupation(0.0), 1.0);
        assert!(dimer_occupation(std::f64::consts::PI).abs() < 1e-16);
    }

    proptest! {
        #[test]
        fn eta_is_odd_about_half(n in 1e-9f64..(1.0 - 1e-9)) {
            let a = eta(n).unwrap();
            let b = eta(1.0 - n).unwrap();
            prop_assert!((a + b).abs() < 1e-9 * (1.0 + a.abs()));
        }

        #[test]
        fn s_tilde_symmetric_and_nonpositive(n in 0.0f64..=1.0, alpha in 2u32..9) {
            let s = s_tilde(alpha, n).unwrap();
            prop_assert!((s - s_tilde(alpha, 1.0 - n).unwrap()).abs() < 1e-12);
            prop_assert!(s <= 1e-15);
        }

        #[test]
        fn s_tilde_one_nonnegative(n in 0.0f64..=1.0) {
            prop_assert!(s_tilde(1, n).unwrap() >= -1e-15);
        }

        #[test]
        fn clip_stays_inside(n in -1.0f64..2.0) {
            let c = clip_filling(n, DEFAULT_FILLING_CLIP);
            prop_assert!((DEFAULT_FILLING_CLIP..=1.0 - DEFAULT_FILLING_CLIP).contains(&c));
            prop_assert!(eta(c).is_ok());
        }
    }
}
