//! The single-purpose subcommands.

use gmlab::bessel::{default_s_cutoff, envelope_bounds, s_constant, s_growth_ratio, NormalizedBessel};
use gmlab::gallery;
use gmlab::gm::{default_grid, dyadic_stats, en_measure, gm_verify, sign_interval_search, GmCertificate};
use gmlab::series::{cosine_partial_sums, gms_fit_constant, gms_verify, integer_grid, log_growth_fit};
use gmlab::transforms::{cossup_bounds, default_n_grid, hankel_limit, partial_hankel, BoundInputs, SVariant};
use gmlab::{par, Error, RadialProfile};
use serde_json::json;

use crate::params::Params;
use crate::report::{num, Cell, Report};
use crate::CliError;

/// Short status tag for a numerical outcome.
pub fn status(e: &Error) -> &'static str {
    match e {
        Error::Divergent(_) => "divergent",
        Error::Unbounded(_) => "unbounded",
        Error::ToleranceNotReached { .. } => "tolerance_not_reached",
        Error::NonIntegrableOrigin { .. } | Error::NonIntegrable { .. } => "non_integrable",
        _ => "error",
    }
}

pub fn bessel(p: &Params) -> Result<Report, CliError> {
    let orders = p.orders(&[-0.5])?;
    match p.table.as_deref().unwrap_or("eval") {
        "eval" => {
            let m = p.m.unwrap_or(2);
            let xs = if p.x.is_empty() { (0..=200).map(|i| i as f64 * 0.1).collect() } else { p.x.clone() };
            if let Some(x) = xs.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
                return Err(CliError::Config(format!("--x must be finite and nonnegative, got {x}")));
            }
            let mut r = Report::new(
                "bessel",
                &["alpha", "x", "j", "envelope_m", "envelope_lower", "envelope_upper", "envelope_valid"],
            );
            for order in orders {
                let b = NormalizedBessel::new(order);
                let vals = par::map(&xs, |&x| (b.eval(x), envelope_bounds(order, x, m)));
                for (&x, (j, e)) in xs.iter().zip(vals) {
                    let a = order.alpha();
                    r.check(j.abs() <= 1.0 + 1e-13, || format!("|j_{a}({x})| = {} > 1", j.abs()));
                    r.check(!e.valid || (e.lower <= j + 1e-15 && j <= e.upper + 1e-15), || {
                        format!("j_{a}({x}) = {j} outside [{}, {}]", e.lower, e.upper)
                    });
                    r.row(vec![a.into(), x.into(), j.into(), (m as i64).into(), e.lower.into(), e.upper.into(), e.valid.into()]);
                }
            }
            Ok(r)
        }
        "s" => {
            let mut r = Report::new("bessel", &["alpha", "s", "argmax", "x_max", "growth_ratio"]);
            for order in orders {
                let s = s_constant(order, default_s_cutoff(order))?;
                r.row(vec![
                    order.alpha().into(),
                    s.sup().into(),
                    s.argmax.into(),
                    s.x_max.into(),
                    (order.alpha() > 0.0).then(|| s_growth_ratio(order, s.sup())).into(),
                ]);
            }
            Ok(r)
        }
        other => Err(CliError::Config(format!("--table must be `eval` or `s`, got `{other}`"))),
    }
}

fn certificate(p: &Params, prof: &RadialProfile, grid: &[f64]) -> Result<(GmCertificate, bool), CliError> {
    let nu = p.nu()?;
    Ok(match p.c()? {
        Some(c) => (gm_verify(prof, GmCertificate::new(c, nu)?, grid)?, false),
        None => (GmCertificate::fitted(prof, nu, grid)?, true),
    })
}

fn x_grid(p: &Params, prof: &RadialProfile) -> Result<Vec<f64>, CliError> {
    if p.x.is_empty() {
        return Ok(default_grid(prof));
    }
    if p.x.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
        return Err(CliError::Config("GM grid points must be positive".into()));
    }
    let mut g = p.x.clone();
    g.sort_by(f64::total_cmp);
    Ok(g)
}

pub fn gm_check(p: &Params) -> Result<Report, CliError> {
    if p.sequence.is_some() {
        return gms_check(p);
    }
    let prof = p.profile()?;
    let grid = x_grid(p, &prof)?;
    let (cert, fitted) = certificate(p, &prof, &grid)?;
    let mut r = Report::new("gm-check", &["x", "variation", "window_integral", "ratio", "pass"]);
    r.note("function", json!(prof.name()));
    r.note("c", num(cert.c));
    r.note("nu", json!(cert.nu));
    r.note("lambda", num(cert.lambda));
    r.note("fitted", json!(fitted));
    for pt in &cert.checked_points {
        let ratio = if pt.rhs > 0.0 { Some(pt.lhs / pt.rhs) } else { None };
        r.check(pt.pass, || format!("x = {}: variation {} > C · {}", pt.x, pt.lhs, pt.rhs));
        r.row(vec![pt.x.into(), pt.lhs.into(), pt.rhs.into(), ratio.into(), pt.pass.into()]);
    }
    Ok(r)
}

fn gms_check(p: &Params) -> Result<Report, CliError> {
    let s = p.sequence()?;
    let nu = p.nu()?;
    let grid = integer_grid(p.n_max_int(10_000)?, 32);
    let (c, fitted) = match p.c()? {
        Some(c) => (c, false),
        None => (gms_fit_constant(&s, nu, &grid)? * (1.0 + 1e-9), true),
    };
    let report = gms_verify(&s, c, nu, &grid)?;
    let mut r = Report::new("gm-check", &["n", "variation", "window_sum", "ratio", "pass"]);
    r.note("sequence", json!(s.name()));
    r.note("c", num(c));
    r.note("nu", json!(nu));
    r.note("fitted", json!(fitted));
    for pt in &report.points {
        let ratio = if pt.rhs > 0.0 { Some(pt.lhs / pt.rhs) } else { None };
        r.check(pt.pass, || format!("n = {}: variation {} > C · {}", pt.n, pt.lhs, pt.rhs));
        r.row(vec![(pt.n as i64).into(), pt.lhs.into(), pt.rhs.into(), ratio.into(), pt.pass.into()]);
    }
    Ok(r)
}

pub fn dyadic(p: &Params) -> Result<Report, CliError> {
    let prof = p.profile()?;
    let grid = default_grid(&prof);
    let (cert, _) = certificate(p, &prof, &grid)?;
    let n_max = p.n_max_int(20)? as i32;
    let n_min = p.n_min.unwrap_or(0);
    if n_min > n_max {
        return Err(CliError::Config(format!("--n-min {n_min} exceeds --n-max {n_max}")));
    }
    let mut r = Report::new(
        "dyadic-stats",
        &[
            "n", "a_n", "b_n", "good", "e_threshold", "e_measure", "e_lower_bound", "e_satisfied", "sign_ell", "sign_em",
            "sign", "captured_measure", "sign_lower_bound",
        ],
    );
    r.note("function", json!(prof.name()));
    r.note("c", num(cert.c));
    r.note("nu", json!(cert.nu));
    for s in dyadic_stats(&prof, cert.nu, n_min..=n_max) {
        let mut row: Vec<Cell> = vec![(s.n as i64).into(), s.a_n.into(), s.b_n.into(), s.good.into()];
        if s.good && s.n >= 1 {
            match en_measure(&prof, s.n, cert.c, cert.nu) {
                Ok(e) => {
                    r.check(e.satisfied, || format!("n = {}: |E_n| = {} < {}", s.n, e.stats.e_measure, e.lower_bound));
                    row.extend([e.stats.e_threshold.into(), e.stats.e_measure.into(), e.lower_bound.into(), e.satisfied.into()]);
                    match sign_interval_search(&prof, s.n, cert.c, cert.nu) {
                        Ok(w) => row.extend([
                            w.ell.into(),
                            w.em.into(),
                            (w.sign as i64).into(),
                            w.captured_measure.into(),
                            w.lower_bound.into(),
                        ]),
                        Err(e) => {
                            r.failures.push(format!("n = {}: {e}", s.n));
                            row.extend(std::iter::repeat_n(Cell::Empty, 5));
                        }
                    }
                }
                Err(Error::Vacuous { .. }) => row.extend(std::iter::repeat_n(Cell::Empty, 9)),
                Err(e) => return Err(e.into()),
            }
        } else {
            row.extend(std::iter::repeat_n(Cell::Empty, 9));
        }
        r.row(row);
    }
    Ok(r)
}

pub fn transform(p: &Params) -> Result<Report, CliError> {
    let prof = p.profile()?;
    let order = p.orders(&[-0.5])?[0];
    let tol = p.tol()?;
    let us = p.u_grid()?;
    let closed = p
        .function
        .as_deref()
        .and_then(|n| gallery::get(n).ok())
        .and_then(|e| e.closed_form)
        .filter(|c| c.alpha == order.alpha());
    let cutoff = match p.n_max {
        Some(n) if n > 0.0 && n.is_finite() => Some(n),
        Some(n) => return Err(CliError::Config(format!("--n-max must be positive, got {n}"))),
        None => None,
    };
    let vals = par::map(&us, |&u| match cutoff {
        Some(n) => partial_hankel(&prof, order, u, n, tol).map(|r| (r.value, r.error_estimate)),
        None => hankel_limit(&prof, order, u, tol).map(|r| (r.value, r.error_estimate)),
    });
    let mut r = Report::new("transform", &["u", "value", "error_estimate", "status", "closed_form", "abs_diff"]);
    r.note("function", json!(prof.name()));
    r.note("alpha", num(order.alpha()));
    r.note("cutoff", cutoff.map_or(json!(null), num));
    for (&u, v) in us.iter().zip(vals) {
        let cf = closed.filter(|c| cutoff.is_none() && c.contains(u)).map(|c| (c.eval)(u));
        match v {
            Ok((value, err)) => {
                let diff = cf.map(|c| (value - c).abs());
                if let Some(d) = diff {
                    r.check(d <= 1e-6, || format!("u = {u}: |{value} - {}| = {d} > 1e-6", cf.unwrap()));
                }
                r.row(vec![u.into(), value.into(), err.into(), "ok".into(), cf.into(), diff.into()]);
            }
            Err(e) => r.row(vec![u.into(), Cell::Empty, Cell::Empty, status(&e).into(), cf.into(), Cell::Empty]),
        }
    }
    Ok(r)
}

pub fn bound_report(p: &Params) -> Result<Report, CliError> {
    let prof = p.profile()?;
    let tol = p.tol()?;
    let us = p.u_grid()?;
    let mut ns = default_n_grid();
    if let Some(n) = p.n_max {
        if !(n >= 0.0 && n.is_finite()) {
            return Err(CliError::Config(format!("--n-max must be nonnegative, got {n}")));
        }
        ns.retain(|&v| v <= n);
        if ns.last() != Some(&n) {
            ns.push(n);
        }
    }
    let (cert, fitted) = certificate(p, &prof, &default_grid(&prof))?;
    let mut r = Report::new(
        "bound-report",
        &[
            "alpha", "n", "variant", "lhs", "argmax_u", "term_partial", "term_boundary", "term_constant",
            "term_sup_ibp", "rhs", "s_used", "constant_coefficient", "m_weight", "vacuous", "pass",
        ],
    );
    r.note("function", json!(prof.name()));
    r.note("c", num(cert.c));
    r.note("lambda", num(cert.lambda));
    r.note("fitted", json!(fitted));
    let mut inputs = Vec::new();
    for order in p.orders(&[-0.5, 0.0, 1.0])? {
        let i = BoundInputs::new(&prof, order, &cert)?;
        inputs.push(json!({
            "alpha": num(i.alpha),
            "s_statement": num(i.s_statement),
            "s_proof": num(i.s_proof),
            "m_weight": num(i.m_weight),
            "sup_ibp": num(i.sup_ibp),
            "coefficient_statement": num(i.constant_coefficient(SVariant::Statement)),
            "coefficient_proof": num(i.constant_coefficient(SVariant::Proof)),
        }));
        for pair in cossup_bounds(&prof, order, &cert, &ns, &us, tol)? {
            for b in [pair.statement, pair.proof] {
                r.check(b.passes(), || {
                    format!("α = {}, N = {}, {}: lhs {} > rhs {} at u = {}", b.alpha, b.n, b.variant.name(), b.lhs, b.rhs(), b.argmax_u)
                });
                r.row(vec![
                    b.alpha.into(),
                    b.n.into(),
                    b.variant.name().into(),
                    b.lhs.into(),
                    b.argmax_u.into(),
                    b.term_partial.into(),
                    b.term_boundary.into(),
                    b.term_constant.into(),
                    b.term_sup_ibp.into(),
                    b.rhs().into(),
                    b.s_used.into(),
                    b.constant_coefficient.into(),
                    b.m_weight.into(),
                    b.vacuous().into(),
                    b.passes().into(),
                ]);
            }
        }
    }
    r.note("inputs", json!(inputs));
    Ok(r)
}

pub fn series(p: &Params) -> Result<Report, CliError> {
    let s = p.sequence()?;
    let n_max = p.n_max_int(1_000_000)?;
    let xs = if p.x.is_empty() { vec![1.0] } else { p.x.clone() };
    let ns = integer_grid(n_max, 16);
    let mut r = Report::new("series", &["x", "n", "partial_sum"]);
    r.note("sequence", json!(s.name()));
    let mut fits = Vec::new();
    for &x in &xs {
        for (&n, v) in ns.iter().zip(cosine_partial_sums(&s, &ns, x)) {
            r.row(vec![x.into(), (n as i64).into(), v.into()]);
        }
        if n_max >= 64 {
            let fit = log_growth_fit(&s, x, (n_max / 32).max(1), n_max)?;
            fits.push(json!({"x": num(x), "slope_vs_ln_n": num(fit.slope), "slope_stderr": num(fit.slope_stderr)}));
        }
    }
    r.note("log_fits", json!(fits));
    Ok(r)
}
