use std::f64::consts::PI;

use negham_core::{binary_entropy, dimer_occupation, Dispersion, TripartiteGeometry};
use qp_predictor::{
    log_ratio_qp, renyi_entropy_qp, renyi_negativity_qp, QpSetup,
};

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for j in 2..=n {
                    let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

fn integrate_pieces(cuts: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    let rule = gauss_legendre(64);
    cuts.windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
            rule.iter().map(|&(x, wt)| wt * f(mid + half * x)).sum::<f64>() * half
        })
        .sum()
}

/// Single-interval entropy `integral dk/2pi min(2|v|t, l) h(n(k))`, integrated
/// piecewise between the kinks of `min`. The integrand is even in `k`.
fn single_interval_entropy(l: f64, t: f64) -> f64 {
    let mut cuts = vec![0.0, PI / 2.0, PI];
    if 2.0 * t > l {
        let k1 = (l / (2.0 * t)).asin();
        cuts.extend([k1, PI - k1]);
    }
    cuts.sort_by(f64::total_cmp);
    let f = |k: f64| (2.0 * k.sin() * t).min(l) * binary_entropy(dimer_occupation(k));
    integrate_pieces(&cuts, f) / PI
}

#[test]
fn far_intervals_reduce_to_single_interval_formula() {
    let l = 40usize;
    let d = 100_000usize;
    let setup = QpSetup::dimer(TripartiteGeometry::symmetric(l, d).unwrap())
        .unwrap();
    for t in [0.5, 5.0, 15.0, 19.9, 20.1, 35.0, 100.0, 1000.0] {
        let got = renyi_entropy_qp(1, t, &setup).unwrap();
        let want = 2.0 * single_interval_entropy(l as f64, t);
        assert!((got - want).abs() < 1e-8, "t={t}: {got} vs {want}");
        assert_eq!(log_ratio_qp(1, t, &setup).unwrap(), 0.0);
    }
}

#[test]
fn doubling_grid_is_converged() {
    let g = TripartiteGeometry::symmetric(200, 200).unwrap();
    let coarse = QpSetup::dimer(g).unwrap().with_grid(4096);
    let fine = QpSetup::dimer(g).unwrap().with_grid(8192);
    for t in [50.0, 150.0, 250.0, 400.0] {
        for a in [1u32, 2, 3, 4] {
            let c = renyi_negativity_qp(a, t, &coarse).unwrap();
            let f = renyi_negativity_qp(a, t, &fine).unwrap();
            assert!((c - f).abs() < 1e-8, "a={a} t={t}: {c} vs {f}");
        }
    }
}

fn linear(_: f64) -> f64 {
    1.0
}

fn ramp(k: f64) -> f64 {
    k
}

/// With a flat band every weight is piecewise linear in `t`, so second
/// differences vanish inside each segment between the light-cone breakpoints.
#[test]
fn flat_band_is_piecewise_linear() {
    let (l, d) = (30usize, 20usize);
    let mut setup = QpSetup::dimer(TripartiteGeometry::symmetric(l, d).unwrap()).unwrap();
    setup.dispersion = Dispersion::new(ramp, linear);
    let (lf, df) = (l as f64, d as f64);
    let breaks = [0.0, df / 2.0, lf / 2.0, (lf + df) / 2.0, lf + df / 2.0, 60.0];
    for a in [1u32, 2, 3] {
        let e = |t: f64| renyi_negativity_qp(a, t, &setup).unwrap();
        for w in breaks.windows(2) {
            let (lo, hi) = (w[0] + 0.5, w[1] - 0.5);
            let mid = 0.5 * (lo + hi);
            assert!((e(lo) - 2.0 * e(mid) + e(hi)).abs() < 1e-10);
        }
        for &b in &breaks[1..5] {
            assert!((e(b - 1e-9) - e(b + 1e-9)).abs() < 1e-6, "jump at {b}");
        }
    }
}
