use gaussian_engine::{c64, correlation_dimer, Mat};

/// `C(t) = conj(G) C0 G^T` with `G_{xy} = int dk/2pi e^{ik(x-y)} e^{it cos k}`
/// evaluated by a uniform momentum sum, and `C0` the dimer product state.
fn momentum_oracle(t: f64, sites: &[i64], margin: i64, nk: usize) -> Mat<c64> {
    let lo = sites.iter().min().unwrap() - margin;
    let hi = sites.iter().max().unwrap() + margin;
    let lo = lo - lo.rem_euclid(2);
    let hi = hi + 1 - hi.rem_euclid(2);
    let span = (hi - lo) as usize + 1;
    let max_sep = hi - lo;
    let ks: Vec<f64> = (0..nk)
        .map(|j| 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / nk as f64 - std::f64::consts::PI)
        .collect();
    let g: Vec<c64> = (-max_sep..=max_sep)
        .map(|m| {
            ks.iter()
                .map(|&k| c64::from_polar(1.0, k * m as f64 + t * k.cos()))
                .sum::<c64>()
                / nk as f64
        })
        .collect();
    let gm = |d: i64| g[(d + max_sep) as usize];
    let ys: Vec<i64> = (lo..=hi).collect();
    let gmat = Mat::from_fn(sites.len(), span, |i, a| gm(sites[i] - ys[a]));
    // Dimer blocks (2j, 2j+1) carry 1/2 on all four entries.
    let mut out = Mat::from_fn(sites.len(), sites.len(), |_, _| c64::new(0.0, 0.0));
    for i in 0..sites.len() {
        for j in 0..sites.len() {
            let mut acc = c64::new(0.0, 0.0);
            for pair in (0..span).step_by(2) {
                let (ga, gb) = (gmat[(i, pair)].conj(), gmat[(i, pair + 1)].conj());
                let (ha, hb) = (gmat[(j, pair)], gmat[(j, pair + 1)]);
                acc += (ga + gb) * (ha + hb) * 0.5;
            }
            out[(i, j)] = acc;
        }
    }
    out
}

#[test]
fn bessel_form_matches_momentum_quadrature_on_sixty_sites() {
    let sites: Vec<i64> = (0..60).collect();
    for &t in &[0.25, 1.0, 3.5, 10.0, 27.0, 50.0] {
        let exact = correlation_dimer(t, &sites);
        let oracle = momentum_oracle(t, &sites, 160, 2048);
        let mut worst: f64 = 0.0;
        for i in 0..60 {
            for j in 0..60 {
                worst = worst.max((exact.entries()[(i, j)] - oracle[(i, j)]).norm());
            }
        }
        assert!(worst <= 1e-6, "t = {t}: deviation {worst:.3e}");
    }
}

#[test]
fn gapped_subsystem_matches_quadrature() {
    let sites: Vec<i64> = (-7..5).chain(11..20).collect();
    let t = 6.0;
    let exact = correlation_dimer(t, &sites);
    let oracle = momentum_oracle(t, &sites, 80, 1024);
    for i in 0..sites.len() {
        for j in 0..sites.len() {
            assert!((exact.entries()[(i, j)] - oracle[(i, j)]).norm() < 1e-10);
        }
    }
}

#[test]
fn tiny_time_is_continuous_with_initial_state() {
    let sites: Vec<i64> = (0..12).collect();
    let a = correlation_dimer(1e-7, &sites);
    let b = correlation_dimer(0.0, &sites);
    for i in 0..12 {
        for j in 0..12 {
            assert!((a.entries()[(i, j)] - b.entries()[(i, j)]).norm() < 1e-6);
        }
    }
}
