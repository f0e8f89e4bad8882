use std::f64::consts::PI;

use gaussian_engine::bessel_j_table;

/// `J_n(x) = (1/2pi) int_0^{2pi} cos(n tau - x sin tau) dtau`; the trapezoid
/// rule on a periodic analytic integrand converges geometrically.
fn bessel_integral(n: usize, x: f64) -> f64 {
    let points = 4096;
    let h = 2.0 * PI / points as f64;
    (0..points)
        .map(|k| {
            let tau = k as f64 * h;
            (n as f64 * tau - x * tau.sin()).cos()
        })
        .sum::<f64>()
        / points as f64
}

#[test]
fn miller_recurrence_matches_integral_representation() {
    for &x in &[0.1, 1.0, 7.3, 20.0, 64.0, 100.0] {
        let table = bessel_j_table(160, x);
        for n in 0..=160 {
            let want = bessel_integral(n, x);
            assert!(
                (table[n] - want).abs() < 1e-12,
                "J_{n}({x}): {} vs {want}",
                table[n]
            );
        }
    }
}

#[test]
fn table_satisfies_three_term_recurrence() {
    let x = 13.7;
    let j = bessel_j_table(80, x);
    for n in 1..79 {
        let lhs = j[n - 1] + j[n + 1];
        assert!((lhs - 2.0 * n as f64 / x * j[n]).abs() < 1e-13);
    }
}
