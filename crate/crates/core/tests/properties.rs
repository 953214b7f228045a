//! Randomized invariants over the public API.

use core::f64::consts::PI;

use fdcran_core::analytic::{cdf_best_gain, cdf_product_zi, theta};
use fdcran_core::association::{instantaneous_rates, Design, Scheme, Trial};
use fdcran_core::beamforming::{mmse_receive, mrc, mrt, pair_sum_rate, solve_optimal_pair, ul_sinr, zf_receive, BeamformerPair};
use fdcran_core::channel::{complex_gaussian_matrix, complex_gaussian_vector};
use fdcran_core::geometry::{angular_separation, selection_region, Point};
use fdcran_core::linalg::norm_sqr;
use fdcran_core::montecarlo::{draw_trial, estimate, Combo, RATE_REGION_COMBOS};
use fdcran_core::rng::TrialStreams;
use fdcran_core::SystemConfig;
use proptest::prelude::*;

fn config(m: usize, p_d: f64, phi: f64) -> fdcran_core::NormalizedConfig {
    SystemConfig { antennas: m, p_d, phi, p_b_dbm: 10.0, p_u_dbm: 10.0, sigma_li_dbm: -30.0, ..SystemConfig::default() }
        .normalize()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn angular_separation_is_a_symmetric_angle(a in -20.0f64..20.0, b in -20.0f64..20.0) {
        let d = angular_separation(a, b);
        prop_assert!((0.0..=PI).contains(&d));
        prop_assert!((d - angular_separation(b, a)).abs() < 1e-12);
        prop_assert!(angular_separation(a, a + 2.0 * PI) < 1e-9);
    }

    #[test]
    fn wider_region_never_adds_candidates(seed in any::<u64>(), phi in 0.0f64..PI, extra in 0.0f64..1.0) {
        let cfg = config(2, 0.5, phi);
        let (real, _) = draw_trial(&cfg, seed, 0);
        let anchor = Point::from_polar(1.0, 0.3);
        let narrow = selection_region(&real.dl_points, anchor, phi).unwrap();
        let wide = selection_region(&real.dl_points, anchor, (phi + extra).min(PI)).unwrap();
        prop_assert!(wide.iter().all(|i| narrow.contains(i)));
    }

    #[test]
    fn beamformers_are_unit_and_zf_nulls(seed in any::<u64>(), m in 2usize..5) {
        let mut rng = TrialStreams::new(seed, 1).stream(0);
        let h = complex_gaussian_vector(m, &mut rng);
        let g = complex_gaussian_vector(m, &mut rng);
        let h_ud = complex_gaussian_matrix(m, &mut rng);
        for w in [mrt(&h).unwrap(), mrc(&g).unwrap(), zf_receive(&g, &h_ud, &h).unwrap()] {
            prop_assert!((norm_sqr(&w) - 1.0).abs() < 1e-12);
        }
        let w_r = zf_receive(&g, &h_ud, &h).unwrap();
        prop_assert!(w_r.dotc(&(&h_ud * &h)).norm_sqr() < 1e-20);
    }

    #[test]
    fn mmse_receiver_beats_zf_and_mrc(seed in any::<u64>(), m in 2usize..5, a3 in 0.01f64..100.0) {
        let mut rng = TrialStreams::new(seed, 2).stream(0);
        let h = complex_gaussian_vector(m, &mut rng);
        let g = complex_gaussian_vector(m, &mut rng);
        let h_ud = complex_gaussian_matrix(m, &mut rng);
        let w_t = mrt(&h).unwrap();
        let best = ul_sinr(&mmse_receive(&g, &h_ud, &w_t, a3).unwrap(), &g, &h_ud, &w_t, 1.0, a3);
        for w_r in [mrc(&g).unwrap(), zf_receive(&g, &h_ud, &h).unwrap()] {
            prop_assert!(best >= ul_sinr(&w_r, &g, &h_ud, &w_t, 1.0, a3) * (1.0 - 1e-10));
        }
    }

    #[test]
    fn optimal_pair_dominates(seed in any::<u64>(), m in 2usize..5, a1 in 0.1f64..30.0, a2 in 0.1f64..30.0, a3 in 0.0f64..30.0) {
        let mut rng = TrialStreams::new(seed, 3).stream(0);
        let h = complex_gaussian_vector(m, &mut rng);
        let g = complex_gaussian_vector(m, &mut rng);
        let h_ud = complex_gaussian_matrix(m, &mut rng);
        let opt = solve_optimal_pair(&h, &g, &h_ud, a1, a2, a3).unwrap().sum_rate;
        let w_t = mrt(&h).unwrap();
        for w_r in [mrc(&g).unwrap(), zf_receive(&g, &h_ud, &h).unwrap()] {
            let pair = BeamformerPair { w_t: w_t.clone(), w_r };
            prop_assert!(opt >= pair_sum_rate(&pair, &h, &g, &h_ud, a1, a2, a3) - 1e-9);
        }
        // the two single-link optima bound the sum from above
        prop_assert!(opt <= (a1 * norm_sqr(&h)).ln_1p() + (a2 * norm_sqr(&g)).ln_1p() + 1e-9);
    }

    #[test]
    fn cdfs_are_monotone_probabilities(t1 in 1e-6f64..1e3, t2 in 1e-6f64..1e3, th in 0.0f64..1.0, m in 1usize..6) {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        for f in [|t: f64, th: f64, _m: usize| cdf_best_gain(t, th, 2.0 / 3.0), |t: f64, _th: f64, m: usize| cdf_product_zi(t, m)] {
            let (a, b) = (f(lo, th, m), f(hi, th, m));
            prop_assert!((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b));
            prop_assert!(a <= b + 1e-12);
        }
    }

    #[test]
    fn theta_vanishes_with_full_sector_or_no_points(p in 0.0f64..1.0, lambda in 0.0f64..0.01, m in 1usize..6) {
        prop_assert_eq!(theta(p, lambda, PI, m as f64, 0.5), 0.0);
        prop_assert_eq!(theta(0.0, lambda, 0.3, m as f64, 0.5), 0.0);
        prop_assert!(theta(p, lambda, 0.3, m as f64, 0.5) >= 0.0);
    }

    #[test]
    fn rates_are_finite_and_nonnegative(seed in any::<u64>(), p_d in 0.0f64..=1.0, phi in 0.0f64..=PI, m in 2usize..4) {
        let cfg = config(m, p_d, phi);
        let (real, ch) = draw_trial(&cfg, seed, 0);
        let trial = Trial::new(&real, &ch, &cfg);
        for combo in RATE_REGION_COMBOS {
            let r = fdcran_core::montecarlo::combo_rates(&trial, combo).unwrap();
            prop_assert!(r.ul.is_finite() && r.dl.is_finite() && r.ul >= 0.0 && r.dl >= 0.0);
        }
    }
}

#[test]
fn estimates_are_reproducible() {
    let cfg = config(2, 0.5, PI / 3.0);
    let combos = [Combo::full(Scheme::Sra, Design::ZfMrt), Combo::half(Scheme::Ara)];
    let a = estimate(&cfg, &combos, 200, 5).unwrap();
    let b = estimate(&cfg, &combos, 200, 5).unwrap();
    assert_eq!(a, b);
    let c = estimate(&cfg, &combos, 200, 6).unwrap();
    assert_ne!(a, c);
}

#[test]
fn single_antenna_rules_out_zero_forcing_only() {
    let cfg = config(1, 0.5, 0.0);
    for t in 0..50 {
        let (real, ch) = draw_trial(&cfg, 8, t);
        let trial = Trial::new(&real, &ch, &cfg);
        assert!(instantaneous_rates(&trial, Scheme::Sra, Design::MrcMrt).is_ok());
        let zf = instantaneous_rates(&trial, Scheme::Sra, Design::ZfMrt);
        if !real.dl_points.is_empty() && !real.ul_points.is_empty() {
            assert!(matches!(zf, Err(fdcran_core::Error::Infeasible(_))), "{zf:?}");
        }
    }
}
