use gmlab::gallery;
use gmlab::gm::{default_grid, GmCertificate};
use gmlab::transforms::{
    cossup_bound, hankel_between, hankel_limit, m_weight, partial_hankel, partial_hankel_ladder, sup_ibp_default,
    uniform_tail, SVariant,
};
use gmlab::{BesselOrder, Error, RadialProfile};
use proptest::prelude::*;

fn order(a: f64) -> BesselOrder {
    BesselOrder::new(a).unwrap()
}

fn profile(name: &str) -> RadialProfile {
    gallery::get(name).unwrap().profile().unwrap().clone()
}

#[test]
fn order_zero_transform_of_truncated_exponential() {
    // ∫₀¹ t e^{-t} J₀(2t) dt at 30 digits.
    let r = hankel_limit(&profile("trunc_exp"), order(0.0), 2.0, 1e-13).unwrap();
    assert!((r.value - 0.16677077956363499).abs() < 1e-12);
}

#[test]
fn partial_integrals_add_up() {
    let p = profile("power_tail(3/2)");
    let whole = partial_hankel(&p, order(0.5), 1.3, 40.0, 1e-11).unwrap();
    let head = hankel_between(&p, order(0.5), 1.3, 0.0, 7.0, 1e-11).unwrap();
    let tail = hankel_between(&p, order(0.5), 1.3, 7.0, 40.0, 1e-11).unwrap();
    assert!((whole.value - head.value - tail.value).abs() < 1e-10);
}

#[test]
fn ladder_matches_single_evaluations() {
    let p = profile("alternating_dyadic");
    let ns = [0.5, 3.0, 10.0, 30.0];
    let ladder = partial_hankel_ladder(&p, order(-0.5), 2.0, &ns, 1e-11).unwrap();
    for (r, &n) in ladder.iter().zip(&ns) {
        let single = partial_hankel(&p, order(-0.5), 2.0, n, 1e-11).unwrap();
        assert!((r.value - single.value).abs() < 1e-10);
    }
}

#[test]
fn resonant_frequency_diverges() {
    assert!(matches!(hankel_limit(&profile("cos_over_sqrt"), order(-0.5), 1.0, 1e-8), Err(Error::Divergent(_))));
}

#[test]
fn below_resonance_the_closed_form_still_holds() {
    let e = gallery::get("cos_over_sqrt").unwrap();
    let r = hankel_limit(e.profile().unwrap(), order(-0.5), 0.5, 1e-8).unwrap();
    assert!((r.value - (e.closed_form.unwrap().eval)(0.5)).abs() < 1e-6);
    assert!((r.value - 1.397890279426002).abs() < 1e-6);
}

#[test]
fn origin_singularity_beyond_kernel_weight_is_rejected() {
    let p = gmlab::profile::Piecewise::parse("0..1: pow(1,-2.5); 1..inf: const(0)").unwrap().into_profile("sing").unwrap();
    assert!(matches!(partial_hankel(&p, order(0.0), 1.0, 1.0, 1e-8), Err(Error::NonIntegrableOrigin { .. })));
}

#[test]
fn bound_ingredients() {
    let p = profile("power_tail(3/2)");
    assert!((m_weight(&p, order(-0.5)).unwrap() - 1.0).abs() < 1e-12);
    assert!(m_weight(&p, order(0.0)).is_err());
    assert!((sup_ibp_default(&p, order(-0.5)).unwrap() - 3.0).abs() < 1e-8);
    let e = (-1f64).exp();
    assert!((m_weight(&profile("trunc_exp"), order(-0.5)).unwrap() - e).abs() < 1e-12);
}

#[test]
fn cosine_bound_coefficient_closed_form() {
    let p = profile("power_tail(3/2)");
    let cert = GmCertificate::fitted(&p, 1, &default_grid(&p)).unwrap();
    let pair = cossup_bound(&p, order(-0.5), 10.0, &cert, &[0.5, 1.0, 2.0], 1e-9).unwrap();
    let (c, l) = (cert.c, cert.lambda);
    let k = 2.0 * c * l * l * (l.powi(4) / 3.0 + 1.0);
    assert_eq!(pair.statement.variant, SVariant::Statement);
    assert!(((pair.statement.constant_coefficient - k) / k).abs() < 1e-15);
    assert!(pair.statement.passes() && pair.proof.passes());
    assert!(!pair.statement.vacuous());
    assert!((pair.statement.term_boundary - 2.0 * 10.0 * 10f64.powf(-1.5)).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cosine_transform_matches_closed_form(u in 0.0f64..20.0) {
        let e = gallery::get("trunc_exp").unwrap();
        let r = hankel_limit(e.profile().unwrap(), order(-0.5), u, 1e-12).unwrap();
        prop_assert!((r.value - (e.closed_form.unwrap().eval)(u)).abs() < 1e-10);
    }

    #[test]
    fn tails_of_compact_profiles_vanish(m in 1.0f64..5.0, extra in 0.1f64..10.0) {
        let p = profile("trunc_exp");
        let t = uniform_tail(&p, order(0.5), &[0.0, 1.0, 3.0], m, m + extra, 1e-11).unwrap();
        prop_assert!(t < 1e-10);
    }
}
