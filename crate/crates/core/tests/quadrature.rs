use gmlab::quad::{adaptive, exp_sinh, gk21, golden_max, tanh_sinh, KahanSum};

#[test]
fn kronrod_rule_is_exact_for_polynomials() {
    let e = gk21(&|x: f64| x.powi(20) - 3.0 * x.powi(7) + 1.0, -1.0, 2.0);
    let exact = (2f64.powi(21) + 1.0) / 21.0 - 3.0 * (2f64.powi(8) - 1.0) / 8.0 + 3.0;
    assert!((e.value - exact).abs() < 1e-9 * exact.abs());
}

#[test]
fn endpoint_singularities() {
    // ∫₀¹ t^{-1/2} e^{-t} dt and ∫₀¹ ln t e^{-t} dt.
    let a = tanh_sinh(&|t: f64| t.powf(-0.5) * (-t).exp(), 0.0, 1.0, 1e-13);
    assert!((a.value - 1.493648265624854).abs() < 1e-12);
    let b = tanh_sinh(&|t: f64| t.ln() * (-t).exp(), 0.0, 1.0, 1e-13);
    assert!((b.value + 0.796_599_599_297_053_2).abs() < 1e-12);
}

#[test]
fn half_line() {
    let e = exp_sinh(&|t: f64| (-t).exp() * t * t, 0.0, 1e-13);
    assert!((e.value - 2.0).abs() < 1e-12);
    let g = exp_sinh(&|t: f64| 1.0 / (1.0 + t * t), 0.0, 1e-12);
    assert!((g.value - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
}

#[test]
fn adaptive_reports_its_error() {
    let e = adaptive(&|t: f64| (50.0 * t).sin() * t, 0.0, 3.0, 1e-12, 1e-12, 200);
    let exact = ((150f64).sin() - 150.0 * (150f64).cos()) / 2500.0;
    assert!((e.value - exact).abs() < 1e-11);
    assert!(e.error < 1e-10);
}

#[test]
fn golden_section_finds_peak() {
    let (x, m) = golden_max(&|t: f64| -(t - 0.3).powi(2) + 2.0, 0.0, 1.0, 1e-12);
    assert!((x - 0.3).abs() < 1e-6);
    assert!((m - 2.0).abs() < 1e-12);
}

#[test]
fn compensated_sum() {
    let s: KahanSum = std::iter::once(1.0).chain(std::iter::repeat_n(1e-16, 10_000)).collect();
    assert!((s.value() - (1.0 + 1e-12)).abs() < 1e-15);
}
