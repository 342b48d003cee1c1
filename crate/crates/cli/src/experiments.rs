//! End-to-end experiments over the gallery.

use std::f64::consts::PI;

use clap::ValueEnum;
use gmlab::gallery;
use gmlab::gm::{abel_olivier_profile, dyadic_stats};
use gmlab::series::{
    cos_square_sum_identity, cosine_partial_sums, gms_abel_olivier, log_growth_fit, max_partial_sum,
    straddling_grid, uniform_tail_series,
};
use gmlab::transforms::hankel_limit;
use gmlab::{par, BesselOrder, Error};
use serde_json::json;

use crate::commands::status;
use crate::params::Params;
use crate::report::{num, Cell, Report};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    AbelOlivier,
    SharpnessCosine,
    SeriesDivergence,
    SquareWave,
    GoodBadDichotomy,
}

pub fn run(e: Experiment, p: &Params) -> Result<Report, CliError> {
    match e {
        Experiment::AbelOlivier => abel_olivier(),
        Experiment::SharpnessCosine => sharpness_cosine(p),
        Experiment::SeriesDivergence => series_divergence(p),
        Experiment::SquareWave => square_wave(p),
        Experiment::GoodBadDichotomy => good_bad(p),
    }
}

fn entry_profile(name: &str) -> gmlab::RadialProfile {
    gallery::get(name).expect("catalog entry").profile().expect("profile entry").clone()
}

fn abel_olivier() -> Result<Report, CliError> {
    let ts = [1.0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6];
    let mut r = Report::new("experiment abel-olivier", &["entry", "kind", "t", "sup_t_abs_f", "status"]);
    let convergent = ["trunc_exp", "power_tail(3/2)", "power_tail(2)", "power_tail(3)", "alternating_dyadic"];
    for name in convergent {
        let prof = abel_olivier_profile(&entry_profile(name), &ts)?;
        for &(t, v) in &prof {
            r.row(vec![name.into(), "gm".into(), t.into(), v.into(), "ok".into()]);
        }
        let at = |t: f64| prof.iter().find(|q| q.0 == t).map(|q| q.1).unwrap_or(f64::INFINITY);
        r.check(at(1e4) <= 1e-2 * (1.0 + 1e-12), || format!("{name}: {} at T = 1e4", at(1e4)));
    }
    match abel_olivier_profile(&entry_profile("cos_over_sqrt"), &ts) {
        Err(e @ Error::Unbounded(_)) => {
            r.row(vec!["cos_over_sqrt".into(), "control".into(), Cell::Empty, Cell::Empty, status(&e).into()])
        }
        other => r.failures.push(format!("cos_over_sqrt not reported unbounded: {other:?}")),
    }
    let seq_t: Vec<u64> = ts.iter().map(|&t| t as u64).collect();
    for (name, kind) in [("inv_square", "gm"), ("alt_harmonic", "control")] {
        let e = gallery::get(name)?;
        let prof = gms_abel_olivier(e.sequence().expect("sequence entry"), &seq_t)?;
        for &(m, v) in &prof {
            r.row(vec![name.into(), kind.into(), (m as f64).into(), v.into(), "ok".into()]);
        }
        let last = prof.iter().find(|q| q.0 == 10_000).map(|q| q.1).unwrap_or(f64::NAN);
        if kind == "gm" {
            r.check(last <= 1e-2 * (1.0 + 1e-12), || format!("{name}: {last} at m = 1e4"));
        } else {
            r.check(last >= 0.5, || format!("{name}: n|a_n| decays to {last}"));
        }
    }
    Ok(r)
}

/// The cosine transform of `t^{-1/2} cos t` blows up as `u → 1+` and
/// diverges at `u = 1`. Below resonance the integral converges and is
/// reported with its value.
fn sharpness_cosine(p: &Params) -> Result<Report, CliError> {
    let tol = p.tol()?;
    let entry = gallery::get("cos_over_sqrt")?;
    let prof = entry.profile().expect("profile entry").clone();
    let form = entry.closed_form.expect("closed form");
    let order = BesselOrder::new(-0.5)?;
    let above: Vec<f64> = (0..=6).map(|k| 1.0 + 2f64.powi(-k)).collect();
    let below = [0.25, 0.5, 0.75, 1.0];
    let us: Vec<f64> = below.iter().cloned().chain(above.iter().rev().cloned()).collect();
    let vals = par::map(&us, |&u| hankel_limit(&prof, order, u, tol));
    let mut r = Report::new("experiment sharpness-cosine", &["u", "status", "value", "error_estimate", "closed_form"]);
    let mut prev: Option<f64> = None;
    for (&u, v) in us.iter().zip(vals) {
        let cf = if u == 1.0 { None } else { Some((form.eval)(u)) };
        match v {
            Ok(res) => {
                if u > 1.0 {
                    if let Some(c) = cf {
                        r.check((res.value - c).abs() <= 1e-4, || format!("u = {u}: {} vs closed form {c}", res.value));
                    }
                    if let Some(q) = prev {
                        // Rows run upward in u, so the values must fall.
                        r.check(res.value < q, || format!("no growth toward u = 1 at u = {u}"));
                    }
                    prev = Some(res.value);
                }
                r.row(vec![u.into(), "converged".into(), res.value.into(), res.error_estimate.into(), cf.into()]);
            }
            Err(e) => {
                r.check(u == 1.0 || !matches!(e, Error::Divergent(_)), || format!("u = {u}: unexpected divergence"));
                r.row(vec![u.into(), status(&e).into(), Cell::Empty, Cell::Empty, cf.into()]);
            }
        }
    }
    let flagged = r.rows.iter().any(|row| row[0] == Cell::Num(1.0) && row[1] == Cell::Text("divergent".into()));
    r.check(flagged, || "u = 1 not flagged divergent".into());
    Ok(r)
}

fn series_divergence(p: &Params) -> Result<Report, CliError> {
    let n_max = p.n_max_int(1_000_000)?;
    let s = gallery::get("cosn_over_n")?.sequence().expect("sequence entry").clone();
    let mut ns = Vec::new();
    let mut n = 10u64;
    while n <= n_max {
        ns.push(n);
        n = (n as f64 * 10f64.sqrt()).round() as u64;
    }
    let sums = cosine_partial_sums(&s, &ns, 1.0);
    let identity = par::map(&ns, |&n| cos_square_sum_identity(n));
    let mut r = Report::new(
        "experiment series-divergence",
        &["n", "partial_sum_at_1", "half_ln_n", "cos_square_identity_residual"],
    );
    for ((&n, v), res) in ns.iter().zip(sums).zip(identity) {
        let res = res?;
        r.check(res <= 1e-9, || format!("N = {n}: identity residual {res}"));
        r.row(vec![(n as i64).into(), v.into(), (0.5 * (n as f64).ln()).into(), res.into()]);
    }
    if n_max >= 8_000 {
        let fit = log_growth_fit(&s, 1.0, 1_000, n_max)?;
        r.check((fit.slope - 0.5).abs() <= 0.05, || format!("slope {} outside 0.5 ± 0.05", fit.slope));
        r.note("slope_vs_ln_n", num(fit.slope));
        r.note("slope_stderr", num(fit.slope_stderr));
    }
    Ok(r)
}

fn square_wave(p: &Params) -> Result<Report, CliError> {
    let m_max = p.n_max_int(10_000)?;
    let s = gallery::get("square_wave")?.sequence().expect("sequence entry").clone();
    let grid = straddling_grid(PI / 2.0);
    let period: Vec<f64> = (0..=4_000).map(|i| 2.0 * PI * i as f64 / 4_000.0).collect();
    let mut r = Report::new("experiment square-wave", &["m", "n", "uniform_tail", "max_abs_partial_sum"]);
    let mut m = 10u64;
    while m <= m_max {
        let n = 10 * m;
        let tail = uniform_tail_series(&s, &grid, m, n)?;
        let max = max_partial_sum(&s, &grid, n).max(max_partial_sum(&s, &period, n));
        r.check(tail >= 0.05, || format!("M = {m}: tail {tail} < 0.05"));
        r.check(max <= 2.0, || format!("N = {n}: max |S_N| = {max} > 2"));
        r.row(vec![(m as i64).into(), (n as i64).into(), tail.into(), max.into()]);
        m *= 10;
    }
    r.note("grid", json!("x = π/2 ± δ, δ geometric over [1e-6, 1]"));
    Ok(r)
}

fn good_bad(p: &Params) -> Result<Report, CliError> {
    let n_max = p.n_max_int(20)? as i32;
    let mut r = Report::new("experiment good-bad-dichotomy", &["function", "nu", "n", "a_n", "b_n", "b_over_a", "good"]);
    let mut verdicts = serde_json::Map::new();
    for nu in [1u32, 2] {
        for (name, expect_good) in
            [("power_tail(2)", true), ("power_tail(3)", false), ("power_law(2)", true), ("power_law(3)", false)]
        {
            // The flat head of power_tail(p) on (0, 1] reaches blocks n < 2ν.
            let first = if name.starts_with("power_tail") { 2 * nu as i32 } else if expect_good { 0 } else { 1 };
            let stats = dyadic_stats(&entry_profile(name), nu, 0..=n_max);
            let mut all = true;
            for s in &stats {
                if s.n >= first {
                    all &= s.good == expect_good;
                    r.check(s.good == expect_good, || format!("{name} ν = {nu} n = {}: good = {}", s.n, s.good));
                }
                let ratio = if s.a_n > 0.0 { Some(s.b_n / s.a_n) } else { None };
                r.row(vec![name.into(), (nu as i64).into(), (s.n as i64).into(), s.a_n.into(), s.b_n.into(), ratio.into(), s.good.into()]);
            }
            let key = format!("{name} nu={nu}");
            let label = if expect_good { "all_good" } else { "all_bad" };
            verdicts.insert(key, json!({ "claim": label, "from_n": first, "holds": all }));
        }
    }
    r.note("verdicts", serde_json::Value::Object(verdicts));
    Ok(r)
}
