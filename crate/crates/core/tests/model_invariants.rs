use std::f64::consts::LN_2;

use negham_core::{
    binary_entropy, dimer_occupation, eta, renyi_density, s_tilde, Dispersion, MidpointGrid,
    OccupationFunction, StateKind, TripartiteGeometry,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn lattice_and_continuum_views_agree(l1 in 1usize..60, l2 in 1usize..60, d in 1usize..40, s in -20i64..180) {
        let g = TripartiteGeometry::new(l1, l2, d).unwrap();
        let x = g.to_continuum(s);
        prop_assert_eq!(g.to_lattice(x), s);
        prop_assert_eq!(g.site_in_a1(s), g.in_a1(x));
        prop_assert_eq!(g.site_in_a2(s), g.in_a2(x));
        prop_assert!(!(g.in_a1(x) && g.in_a2(x)));
    }

    #[test]
    fn site_lists_cover_both_intervals(l1 in 1usize..50, l2 in 1usize..50, d in 1usize..30) {
        let g = TripartiteGeometry::new(l1, l2, d).unwrap();
        let sites = g.sites();
        prop_assert_eq!(sites.len(), g.n_sites());
        prop_assert!(sites.windows(2).all(|w| w[0] < w[1]));
        let counted = (-5..g.span() as i64 + 5)
            .filter(|&s| g.site_in_a1(s) || g.site_in_a2(s))
            .count();
        prop_assert_eq!(counted, l1 + l2);
        let (a, b) = g.a1_interval();
        let (c, e) = g.a2_interval();
        prop_assert!((b - a - l1 as f64).abs() < 1e-12 && (e - c - l2 as f64).abs() < 1e-12);
        prop_assert!((c - b - d as f64).abs() < 1e-12);
    }

    #[test]
    fn eta_inverts_the_fermi_function(n in 1e-6f64..1.0 - 1e-6) {
        let e = eta(n).unwrap();
        prop_assert!((1.0 / (1.0 + e.exp()) - n).abs() < 1e-12);
        prop_assert!((eta(1.0 - n).unwrap() + e).abs() < 1e-9);
    }

    #[test]
    fn pair_weights_match_mode_entropies(n in 0.0f64..=1.0, m in 2u32..7) {
        let even = s_tilde(2 * m, n).unwrap();
        let via_entropy = 2.0 * (1.0 - m as f64) * renyi_density(m, n).unwrap();
        prop_assert!((even - via_entropy).abs() < 1e-12);
        let odd = 2 * m + 1;
        let via_entropy = (1.0 - odd as f64) * renyi_density(odd, n).unwrap();
        prop_assert!((s_tilde(odd, n).unwrap() - via_entropy).abs() < 1e-12);
        let replica = (1.0 + 2.0 * (n * (1.0 - n)).sqrt()).ln();
        prop_assert!((s_tilde(1, n).unwrap() - replica).abs() < 1e-12);
    }

    #[test]
    fn renyi_densities_are_ordered_and_bounded(n in 0.0f64..=1.0) {
        let mut prev = binary_entropy(n);
        prop_assert!((renyi_density(1, n).unwrap() - prev).abs() < 1e-15);
        prop_assert!((-1e-15..=LN_2 + 1e-15).contains(&prev));
        for a in 2..8 {
            let s = renyi_density(a, n).unwrap();
            prop_assert!(s <= prev + 1e-12 && s >= -1e-15);
            prev = s;
        }
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(TripartiteGeometry::new(0, 3, 2).is_err());
    assert!(TripartiteGeometry::symmetric(3, 0).is_err());
    assert!(eta(0.0).is_err() && eta(1.0).is_err());
    assert!(s_tilde(0, 0.3).is_err() && renyi_density(0, 0.3).is_err());
    assert!(OccupationFunction::constant(StateKind::Symmetric, 1.5).is_err());
}

#[test]
fn hopping_dispersion_is_consistent() {
    let disp = Dispersion::hopping();
    assert!(disp.derivative_mismatch(257, 1e-5) < 1e-8);
    assert!((disp.max_speed() - 1.0).abs() < 1e-6);
}

#[test]
fn dimer_filling_is_half_on_average() {
    let grid = MidpointGrid::new(2048);
    let mean = grid.integrate(dimer_occupation);
    assert!((mean - 0.5).abs() < 1e-12);
    let dimer = OccupationFunction::dimer();
    assert!(dimer.constraint_violation(&grid) < 1e-12);
}
