use gmlab::gallery::{self, GmStatus};
use gmlab::gm::{
    abel_olivier_profile, default_grid, dyadic_stats, en_measure, geometric_grid, gm_fit_constant, gm_verify,
    pointwise_bound_check, GmCertificate,
};
use gmlab::profile::Piecewise;
use gmlab::{Error, RadialProfile};
use proptest::prelude::*;

fn profile(name: &str) -> RadialProfile {
    gallery::get(name).unwrap().profile().unwrap().clone()
}

#[test]
fn catalog_statuses_hold() {
    for name in gallery::profile_names() {
        let e = gallery::get(name).unwrap();
        let p = e.profile().unwrap();
        match e.gm_status {
            GmStatus::Gm { nu } => {
                let cert = GmCertificate::fitted(p, nu, &default_grid(p)).unwrap();
                assert!(cert.passed(), "{name}");
                assert!(cert.c < 50.0, "{name}: C = {}", cert.c);
            }
            GmStatus::NotGm { witness, c, nu, .. } => {
                let cert = gm_verify(p, GmCertificate::new(c, nu).unwrap(), &[witness]).unwrap();
                assert!(!cert.passed(), "{name} passes at its witness");
                assert_eq!(cert.first_failure().unwrap().x, witness);
            }
            GmStatus::Unknown => {}
        }
    }
}

#[test]
fn fitted_constant_exceeds_one() {
    assert!(GmCertificate::new(-1.0, 1).is_err());
    assert!(GmCertificate::new(2.0, 0).is_err());
    let p = profile("power_law(3)");
    let cert = GmCertificate::fitted(&p, 1, &geometric_grid(1e-2, 1e2, 8)).unwrap();
    assert!(cert.c > 1.0 && cert.lambda == 2.0);
}

#[test]
fn level_set_measure_on_a_window() {
    // A single bump on [4, 16] of height 1: the threshold is tiny, so the
    // whole window counts.
    let p = Piecewise::parse("0..4: const(0); 4..16: const(1); 16..inf: const(0)")
        .unwrap()
        .into_profile("bump")
        .unwrap();
    let r = en_measure(&p, 3, 2.0, 1).unwrap();
    assert!((r.stats.e_measure - 12.0).abs() <= r.tolerance);
    assert!(r.satisfied);
    assert!(matches!(en_measure(&p, 0, 2.0, 1), Err(Error::InvalidArgument(_))));
    assert!(matches!(en_measure(&p, 5, 2.0, 1), Err(Error::BadNumber { .. } | Error::Vacuous { .. })));
}

#[test]
fn pointwise_bound_for_monotone_profile() {
    let p = profile("power_tail(2)");
    let cert = GmCertificate::fitted(&p, 1, &default_grid(&p)).unwrap();
    let r = pointwise_bound_check(&p, &cert, &geometric_grid(1e-2, 1e4, 8)).unwrap();
    assert!(r.max_ratio.unwrap() <= 1.0);
}

#[test]
fn abel_olivier_reports_growth() {
    assert!(matches!(abel_olivier_profile(&profile("cos_over_sqrt"), &[1.0]), Err(Error::Unbounded(_))));
    let t = abel_olivier_profile(&profile("power_tail(3/2)"), &[1e2, 1e4]).unwrap();
    assert!((t[0].1 - 0.1).abs() < 1e-12 && (t[1].1 - 0.01).abs() < 1e-12);
}

#[test]
fn good_blocks_of_inverse_square() {
    for s in dyadic_stats(&profile("power_law(2)"), 1, -3..=10) {
        assert!(s.good);
        assert!((s.b_n / s.a_n - 16.0).abs() < 1e-9);
    }
}

fn scaled_tail(k: f64, p: f64) -> RadialProfile {
    Piecewise::parse(&format!("0..1: const({k}); 1..inf: pow({k},{})", -p)).unwrap().into_profile("scaled").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn variation_is_additive(a in 0.05f64..5.0, d1 in 0.01f64..5.0, d2 in 0.01f64..5.0) {
        let p = profile("alternating_dyadic");
        let (b, c) = (a + d1, a + d1 + d2);
        let whole = p.variation(a, c).unwrap();
        let parts = p.variation(a, b).unwrap() + p.variation(b, c).unwrap();
        prop_assert!((whole - parts).abs() <= 1e-10 * whole.max(1.0));
    }

    #[test]
    fn abel_olivier_profile_is_nonincreasing(p in 1.05f64..4.0) {
        let prof = abel_olivier_profile(&scaled_tail(1.0, p), &geometric_grid(1.0, 1e5, 4)).unwrap();
        prop_assert!(prof.windows(2).all(|w| w[1].1 <= w[0].1));
    }

    #[test]
    fn fitted_constant_is_scale_invariant(k in 0.01f64..100.0, p in 1.1f64..3.0) {
        let grid = geometric_grid(1e-2, 1e3, 8);
        let c1 = gm_fit_constant(&scaled_tail(1.0, p), 1, &grid).unwrap();
        let ck = gm_fit_constant(&scaled_tail(k, p), 1, &grid).unwrap();
        prop_assert!((c1 - ck).abs() <= 1e-9 * c1);
    }

    #[test]
    fn weighting_commutes_with_sup(w in -1.0f64..3.0, a in 0.1f64..10.0) {
        let p = profile("trunc_exp");
        let direct = p.sup_weighted(w, a, 2.0 * a, 512).0;
        let via = p.weighted(w).sup_weighted(0.0, a, 2.0 * a, 512).0;
        prop_assert!((direct - via).abs() <= 1e-14 * direct.max(1.0));
    }
}
